#include "spinprobe/witness.hpp"

#include <random>

namespace spinprobe {

double collective_variance(const CorrelationSet& c, const Vector& coefficients) {
  if (!c.has_transverse()) throw PreconditionError("collective variance needs transverse correlators");
  if (coefficients.size() != c.length) throw DimensionError("coefficient / correlator size mismatch");
  const Vector& sx = *c.sx_mean;
  const Vector& sy = *c.sy_mean;
  const Matrix gx = *c.xx - sx * sx.transpose();
  const Matrix gy = *c.yy - sy * sy.transpose();
  return coefficients.dot((gx + gy + c.zz_connected) * coefficients);
}

WitnessReport witness_value(const CorrelationSet& c, const ProbeConfig& p, double spin) {
  if (!(spin > 0.0)) throw DomainError("spin must be positive");
  p.validate(false);
  const Vector coeff = probe_coefficients(p, c.length);
  const double v = collective_variance(c, coeff);
  const double bound = spin * coeff.squaredNorm();
  const double w = v - bound;
  return WitnessReport{p.kpd, p.alpha, v, bound, w, w < kDetectionThreshold};
}

std::vector<WitnessReport> witness_scan(const CorrelationSet& c, std::span<const double> kpd_grid, double alpha,
                                        double spin, double wannier_width) {
  std::vector<WitnessReport> out;
  out.reserve(kpd_grid.size());
  for (double k : kpd_grid) {
    ProbeConfig p;
    p.kpd = k;
    p.alpha = alpha;
    p.wannier_width = wannier_width;
    out.push_back(witness_value(c, p, spin));
  }
  return out;
}

std::vector<Eigen::Vector3d> random_site_states(int length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::Vector3d> sites;
  sites.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-8);
    sites.push_back(v.normalized());
  }
  return sites;
}

StateVector random_product_state(int length, std::uint64_t seed) {
  if (length > 10) throw SizeGuardError("full-space product states limited to L <= 10");
  const auto sites = random_site_states(length, seed);
  const BasisHandle basis = make_full_basis(length);
  Vector amp(basis->dimension());
  std::array<int, SectorBasis::kMaxLength> d{};
  const std::span<int> digits(d.data(), static_cast<std::size_t>(length));
  for (Index k = 0; k < basis->dimension(); ++k) {
    basis->digits(basis->code(k), digits);
    double a = 1.0;
    for (int i = 0; i < length; ++i) a *= sites[static_cast<std::size_t>(i)](d[static_cast<std::size_t>(i)]);
    amp(k) = a;
  }
  StateVector state(basis, std::move(amp));
  state.normalize();
  return state;
}

}  // namespace spinprobe
