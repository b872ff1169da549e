#include "spinprobe/hilbert.hpp"

#include <cmath>
#include <string>

#include "spinprobe/errors.hpp"

namespace spinprobe {

std::uint64_t pow3(int exponent) {
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= 3;
  return r;
}

namespace {

int digit_sum(ConfigCode code, int sites) {
  int s = 0;
  for (int i = 0; i < sites; ++i) {
    s += static_cast<int>(code % 3) - 1;
    code /= 3;
  }
  return s;
}

}  // namespace

SectorBasis::SectorBasis(int length, std::optional<int> sz_total) : length_(length), sz_total_(sz_total) {
  if (length < 1) throw DomainError("basis length must be positive");
  if (length > kMaxLength) throw SizeGuardError("basis length above the hard cap of 16 sites");
  if (sz_total && std::abs(*sz_total) > length) {
    throw EmptySectorError("sector sz_total = " + std::to_string(*sz_total) + " is empty for L = " +
                           std::to_string(length));
  }

  weights_.resize(static_cast<std::size_t>(length));
  for (int site = 0; site < length; ++site) weights_[static_cast<std::size_t>(site)] = pow3(length - 1 - site);

  low_sites_ = length / 2 + length % 2;
  const int high_sites = length - low_sites_;
  low_span_ = pow3(low_sites_);
  const std::uint64_t high_span = pow3(high_sites);

  low_sum_.resize(low_span_);
  for (std::uint64_t c = 0; c < low_span_; ++c) low_sum_[c] = static_cast<std::int8_t>(digit_sum(c, low_sites_));
  high_sum_.resize(high_span);
  for (std::uint64_t c = 0; c < high_span; ++c) high_sum_[c] = static_cast<std::int8_t>(digit_sum(c, high_sites));

  // Rank of each low code among low codes with the same digit sum.
  low_rank_.resize(low_span_);
  std::vector<Index> seen(static_cast<std::size_t>(2 * low_sites_ + 1), 0);
  for (std::uint64_t c = 0; c < low_span_; ++c) {
    low_rank_[c] = seen[static_cast<std::size_t>(low_sum_[c] + low_sites_)]++;
  }

  high_offset_.assign(high_span, -1);
  for (std::uint64_t h = 0; h < high_span; ++h) {
    const Index begin = static_cast<Index>(states_.size());
    for (std::uint64_t l = 0; l < low_span_; ++l) {
      if (sz_total && high_sum_[h] + low_sum_[l] != *sz_total) continue;
      states_.push_back(h * low_span_ + l);
    }
    if (static_cast<Index>(states_.size()) > begin || !sz_total) high_offset_[h] = begin;
  }
  if (states_.empty()) throw EmptySectorError("empty basis");
}

SectorBasis SectorBasis::sector(int length, int sz_total) { return SectorBasis(length, sz_total); }

SectorBasis SectorBasis::full(int length) { return SectorBasis(length, std::nullopt); }

Index SectorBasis::find(ConfigCode code) const {
  const std::uint64_t high = code / low_span_;
  const std::uint64_t low = code % low_span_;
  if (high >= high_sum_.size()) return -1;
  if (!sz_total_) return static_cast<Index>(code);
  if (high_sum_[high] + low_sum_[low] != *sz_total_) return -1;
  return high_offset_[high] + low_rank_[low];
}

void SectorBasis::digits(ConfigCode code, std::span<int> out) const {
  for (int site = length_ - 1; site >= 0; --site) {
    out[static_cast<std::size_t>(site)] = static_cast<int>(code % 3);
    code /= 3;
  }
}

int SectorBasis::local_sz(ConfigCode code, int site) const {
  return static_cast<int>((code / site_weight(site)) % 3) - 1;
}

StateVector::StateVector(BasisHandle basis, Vector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw DimensionError("state vector needs a basis");
  if (amplitudes_.size() != basis_->dimension()) {
    throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) + " does not match basis dimension " +
                         std::to_string(basis_->dimension()));
  }
}

StateVector::StateVector(BasisHandle basis) : basis_(std::move(basis)) {
  if (!basis_) throw DimensionError("state vector needs a basis");
  amplitudes_ = Vector::Zero(basis_->dimension());
}

StateVector& StateVector::normalize() {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw NormalizationError("cannot normalize the zero vector");
  amplitudes_ /= n;
  return *this;
}

BasisHandle make_sector_basis(int length, int sz_total) {
  return std::make_shared<const SectorBasis>(SectorBasis::sector(length, sz_total));
}

BasisHandle make_full_basis(int length) { return std::make_shared<const SectorBasis>(SectorBasis::full(length)); }

StateVector product_configuration(const BasisHandle& basis, std::span<const int> local_sz) {
  if (static_cast<int>(local_sz.size()) != basis->length()) throw DimensionError("configuration length mismatch");
  ConfigCode code = 0;
  for (int m : local_sz) {
    if (m < -1 || m > 1) throw DomainError("spin-1 local magnetization must be -1, 0 or 1");
    code = 3 * code + static_cast<ConfigCode>(m + 1);
  }
  const Index i = basis->find(code);
  if (i < 0) throw EmptySectorError("configuration lies outside the basis sector");
  StateVector v(basis);
  v.amplitudes()(i) = 1.0;
  return v;
}

const SpinOneOperators& spin_one() {
  static const SpinOneOperators ops = [] {
    SpinOneOperators o;
    o.sz = Eigen::Vector3d(-1.0, 0.0, 1.0).asDiagonal();
    // S+ |m> = sqrt(2 - m(m+1)) |m+1>
    o.splus.setZero();
    o.splus(1, 0) = std::sqrt(2.0);
    o.splus(2, 1) = std::sqrt(2.0);
    o.sminus = o.splus.transpose();
    return o;
  }();
  return ops;
}

BondMatrix bond_matrix(double theta, double j_scale) {
  const auto& s = spin_one();
  const auto kron = [](const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
    BondMatrix k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return k;
  };
  const BondMatrix dot = kron(s.sz, s.sz) + 0.5 * (kron(s.splus, s.sminus) + kron(s.sminus, s.splus));
  return j_scale * (std::cos(theta) * dot + std::sin(theta) * dot * dot);
}

std::vector<std::array<int, 2>> chain_bonds(int length, Boundary boundary) {
  std::vector<std::array<int, 2>> bonds;
  for (int i = 0; i + 1 < length; ++i) bonds.push_back({i, i + 1});
  if (boundary == Boundary::Periodic && length >= 3) bonds.push_back({length - 1, 0});
  return bonds;
}

HamiltonianOperator::HamiltonianOperator(const ModelParams& params, BasisHandle basis)
    : basis_(std::move(basis)), bonds_(chain_bonds(params.length(), params.boundary())) {
  if (!basis_) throw DimensionError("Hamiltonian needs a basis");
  if (basis_->length() != params.length()) throw DimensionError("basis length differs from model length");
  const BondMatrix h = bond_matrix(params.theta(), params.j_scale());
  for (int row = 0; row < 9; ++row)
    for (int col = 0; col < 9; ++col)
      if (h(row, col) != 0.0) transitions_[static_cast<std::size_t>(row)].push_back({col, h(row, col)});
}

void HamiltonianOperator::apply(const Eigen::Ref<const Vector>& in, Eigen::Ref<Vector> out) const {
  const SectorBasis& b = *basis_;
  if (in.size() != b.dimension() || out.size() != b.dimension()) {
    throw DimensionError("Hamiltonian applied to a vector of the wrong dimension");
  }
  std::array<int, SectorBasis::kMaxLength> d{};
  const std::span<int> digits(d.data(), static_cast<std::size_t>(b.length()));

  for (Index k = 0; k < b.dimension(); ++k) {
    const ConfigCode code = b.code(k);
    b.digits(code, digits);
    double acc = 0.0;
    for (const auto& [i, j] : bonds_) {
      const int di = d[static_cast<std::size_t>(i)];
      const int dj = d[static_cast<std::size_t>(j)];
      const auto base = static_cast<std::int64_t>(code) - static_cast<std::int64_t>(di * b.site_weight(i)) -
                        static_cast<std::int64_t>(dj * b.site_weight(j));
      for (const auto& t : transitions_[static_cast<std::size_t>(3 * di + dj)]) {
        const ConfigCode source = static_cast<ConfigCode>(base) + static_cast<ConfigCode>(t.target_pair / 3) * b.site_weight(i) +
                                  static_cast<ConfigCode>(t.target_pair % 3) * b.site_weight(j);
        acc += t.value * in(b.find(source));
      }
    }
    out(k) = acc;
  }
}

StateVector apply_hamiltonian(const ModelParams& params, const SectorBasis& basis, const StateVector& v) {
  if (&v.basis() != &basis && (v.basis().length() != basis.length() || v.basis().sz_total() != basis.sz_total())) {
    throw DimensionError("state does not live on the given basis");
  }
  const HamiltonianOperator h(params, v.basis_handle());
  StateVector out(v.basis_handle());
  h.apply(v.amplitudes(), out.amplitudes());
  return out;
}

StateVector total_sz_apply(const SectorBasis& basis, const StateVector& v) {
  if (v.amplitudes().size() != basis.dimension()) throw DimensionError("state does not live on the given basis");
  StateVector out(v.basis_handle(), v.amplitudes());
  if (basis.sz_total()) {
    out.amplitudes() *= static_cast<double>(*basis.sz_total());
    return out;
  }
  for (Index k = 0; k < basis.dimension(); ++k) {
    int total = 0;
    for (int site = 0; site < basis.length(); ++site) total += basis.local_sz(basis.code(k), site);
    out.amplitudes()(k) *= total;
  }
  return out;
}

}  // namespace spinprobe
