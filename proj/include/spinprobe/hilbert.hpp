#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spinprobe/model.hpp"

namespace spinprobe {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Configuration code: one base-3 digit per site, site 0 most significant.
/// Digit d encodes the local magnetization m = d - 1.
using ConfigCode = std::uint64_t;

std::uint64_t pow3(int exponent);

/// Spin-1 many-body basis, either a fixed total-S_z sector or the full
/// 3^L product space. Configurations are stored in increasing code order.
class SectorBasis {
 public:
  static constexpr int kMaxLength = ModelParams::kMaxLength;

  static SectorBasis sector(int length, int sz_total);
  static SectorBasis full(int length);

  int length() const { return length_; }
  /// Empty for the full product space.
  std::optional<int> sz_total() const { return sz_total_; }
  bool is_full() const { return !sz_total_.has_value(); }
  Index dimension() const { return static_cast<Index>(states_.size()); }

  std::span<const ConfigCode> states() const { return states_; }
  ConfigCode code(Index i) const { return states_[static_cast<std::size_t>(i)]; }

  /// Position of `code` in the basis, or -1 when it lies outside.
  Index find(ConfigCode code) const;

  /// Weight 3^(L-1-site) of the site's digit inside a code.
  std::uint64_t site_weight(int site) const { return weights_[static_cast<std::size_t>(site)]; }

  /// Local digits (0, 1, 2) of a configuration, site 0 first.
  void digits(ConfigCode code, std::span<int> out) const;
  int local_sz(ConfigCode code, int site) const;

 private:
  SectorBasis(int length, std::optional<int> sz_total);

  int length_;
  std::optional<int> sz_total_;
  std::vector<ConfigCode> states_;
  std::vector<std::uint64_t> weights_;

  // Split lookup: code = high * 3^low_sites + low. Within a sector the states
  // sharing a high part are contiguous, so position = high_offset + low_rank.
  int low_sites_ = 0;
  std::uint64_t low_span_ = 1;
  std::vector<Index> high_offset_;
  std::vector<std::int8_t> high_sum_;
  std::vector<Index> low_rank_;
  std::vector<std::int8_t> low_sum_;
};

using BasisHandle = std::shared_ptr<const SectorBasis>;

/// Real amplitudes over a shared basis.
class StateVector {
 public:
  StateVector(BasisHandle basis, Vector amplitudes);
  explicit StateVector(BasisHandle basis);  // zero vector

  const SectorBasis& basis() const { return *basis_; }
  const BasisHandle& basis_handle() const { return basis_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  StateVector& normalize();

 private:
  BasisHandle basis_;
  Vector amplitudes_;
};

BasisHandle make_sector_basis(int length, int sz_total);
BasisHandle make_full_basis(int length);

/// Product configuration |m_0, m_1, ...> with local magnetizations in {-1, 0, 1}.
StateVector product_configuration(const BasisHandle& basis, std::span<const int> local_sz);

/// 3x3 spin-1 operators in the local basis ordered m = -1, 0, +1.
struct SpinOneOperators {
  Eigen::Matrix3d sz;
  Eigen::Matrix3d splus;
  Eigen::Matrix3d sminus;
};
const SpinOneOperators& spin_one();

using BondMatrix = Eigen::Matrix<double, 9, 9>;

/// J [cos(theta) S.S + sin(theta) (S.S)^2] on two sites, pair index 3 d_i + d_j.
BondMatrix bond_matrix(double theta, double j_scale = 1.0);

/// Nearest-neighbour bonds of the chain, (i, i+1) plus (L-1, 0) when periodic and L >= 3.
std::vector<std::array<int, 2>> chain_bonds(int length, Boundary boundary);

/// Matrix-free bond-by-bond Hamiltonian in one basis. The bond matrix is built
/// once per theta and applied as a gather over output configurations, so the
/// result does not depend on evaluation order.
class HamiltonianOperator {
 public:
  HamiltonianOperator(const ModelParams& params, BasisHandle basis);

  const SectorBasis& basis() const { return *basis_; }
  const BasisHandle& basis_handle() const { return basis_; }
  Index dimension() const { return basis_->dimension(); }

  void apply(const Eigen::Ref<const Vector>& in, Eigen::Ref<Vector> out) const;

 private:
  struct Transition {
    int target_pair;
    double value;
  };

  BasisHandle basis_;
  std::vector<std::array<int, 2>> bonds_;
  std::array<std::vector<Transition>, 9> transitions_;
};

StateVector apply_hamiltonian(const ModelParams& params, const SectorBasis& basis, const StateVector& v);

/// (sum_n S_zn) v; diagonal in the configuration basis.
StateVector total_sz_apply(const SectorBasis& basis, const StateVector& v);

}  // namespace spinprobe
