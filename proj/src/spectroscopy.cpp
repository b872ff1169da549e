#include "spinprobe/spectroscopy.hpp"

#include <numbers>
#include <sstream>

namespace spinprobe {

namespace {

constexpr double kMagnetizationTolerance = 1e-8;

void require_zero_magnetization(const CorrelationSet& c, const char* what) {
  const double mz = max_abs_magnetization(c);
  if (mz > kMagnetizationTolerance) {
    std::ostringstream os;
    os << what << " requires zero net magnetization; max |<S_zm>| = " << mz;
    throw PreconditionError(os.str());
  }
  const double row = max_abs_row_sum(c);
  if (row > kMagnetizationTolerance) {
    std::ostringstream os;
    os << what << " requires a total-S_z = 0 state; max |sum_n <S_zm S_zn>| = " << row;
    throw PreconditionError(os.str());
  }
}

void require_shape(const CorrelationSet& c) {
  if (c.zz_connected.rows() != c.length || c.zz_connected.cols() != c.length || c.sz_mean.size() != c.length) {
    throw DimensionError("correlation set is incomplete");
  }
}

}  // namespace

void ProbeConfig::validate(bool modulated) const {
  if (modulated ? !(kpd > 0.0) : !(kpd >= 0.0)) {
    throw DomainError(modulated ? "modulated signals need kpd > 0" : "kpd must be >= 0");
  }
  if (!(wannier_width >= 0.0)) throw DomainError("Wannier width must be >= 0");
  if (!(input_variance > 0.0)) throw DomainError("input variance must be positive");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
}

Vector probe_coefficients(const ProbeConfig& p, int length) {
  p.validate(false);
  Vector c(length);
  const double damping = std::exp(-(p.kpd * p.wannier_width) * (p.kpd * p.wannier_width));
  for (int n = 0; n < length; ++n) {
    const double phase = p.kpd * (n - p.alpha);
    if (p.wannier_width == 0.0) {
      const double cs = std::cos(phase);
      c(n) = 2.0 * cs * cs;
    } else {
      c(n) = 1.0 + damping * std::cos(2.0 * phase);
    }
  }
  return c;
}

double mean_effective_jz(const Vector& sz_mean, const Vector& coefficients) {
  if (sz_mean.size() != coefficients.size()) throw DimensionError("magnetization / coefficient length mismatch");
  return coefficients.dot(sz_mean) / std::sqrt(static_cast<double>(sz_mean.size()));
}

SignalPoint epsilon(const CorrelationSet& c, const ProbeConfig& p) {
  p.validate(true);
  require_shape(c);
  const Vector coeff = probe_coefficients(p, c.length);
  const double eps = epsilon_quadratic(c.zz_connected, coeff);
  const double jz = mean_effective_jz(c.sz_mean, coeff);
  return SignalPoint{p.kpd, p.alpha, eps, jz, 0.0 - p.kappa * jz, p.input_variance + p.kappa * p.kappa * eps};
}

double epsilon_alpha_averaged(const CorrelationSet& c, double kpd) {
  if (!(kpd > 0.0)) throw DomainError("modulated signals need kpd > 0");
  require_shape(c);
  const double mz = max_abs_magnetization(c);
  if (mz > kMagnetizationTolerance) {
    std::ostringstream os;
    os << "alpha-averaged signal requires zero net magnetization; max |<S_zm>| = " << mz;
    throw PreconditionError(os.str());
  }
  return 0.5 * structure_factor(c.zz, 2.0 * kpd);
}

double epsilon_alpha_grid_average(const CorrelationSet& c, double kpd, int points) {
  if (!(kpd > 0.0)) throw DomainError("modulated signals need kpd > 0");
  if (points < 1) throw DomainError("alpha grid needs at least one point");
  require_shape(c);
  const double period = std::numbers::pi / kpd;
  double acc = 0.0;
  for (int j = 0; j < points; ++j) acc += epsilon_direct(c.zz_connected, kpd, period * j / points);
  return acc / points;
}

double delta_epsilon(const CorrelationSet& c, double kpd, double alpha1, double alpha2) {
  require_shape(c);
  return epsilon_direct(c.zz_connected, kpd, alpha1) - epsilon_direct(c.zz_connected, kpd, alpha2);
}

double c_epsilon(const CorrelationSet& c) {
  require_shape(c);
  require_zero_magnetization(c, "C_epsilon");
  constexpr double pi = std::numbers::pi;
  double acc = 0.0;
  for (int m = 0; m < c.length; ++m)
    for (int n = 0; n < c.length; ++n) acc += std::cos(2.0 * pi / 3.0 * (m + n) + pi / 3.0) * c.zz_connected(m, n);
  return acc / c.length;
}

double d_epsilon(const CorrelationSet& c) {
  require_shape(c);
  require_zero_magnetization(c, "D_epsilon");
  double acc = 0.0;
  for (int m = 0; m < c.length; ++m) {
    for (int n = 0; n < c.length; ++n) {
      // sin[(pi/2) s] for integer s: 0, 1, 0, -1
      const int s = (m + n) % 4;
      const double kernel = s == 1 ? 1.0 : (s == 3 ? -1.0 : 0.0);
      acc += kernel * c.zz_connected(m, n);
    }
  }
  return -acc / c.length;
}

double ferromagnetic_signal(int sz_total, int length) {
  return 2.0 * sz_total / std::sqrt(static_cast<double>(length));
}

double max_abs_magnetization(const CorrelationSet& c) {
  return c.sz_mean.size() == 0 ? 0.0 : c.sz_mean.cwiseAbs().maxCoeff();
}

double max_abs_row_sum(const CorrelationSet& c) {
  return c.zz.size() == 0 ? 0.0 : c.zz.rowwise().sum().cwiseAbs().maxCoeff();
}

}  // namespace spinprobe
