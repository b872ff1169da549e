#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>

#include "spinprobe/errors.hpp"
#include "spinprobe/hilbert.hpp"

namespace spinprobe {

/// Site-resolved magnetizations and equal-time two-point correlators.
/// Transverse blocks are present only when requested.
struct CorrelationSet {
  int length = 0;
  Vector sz_mean;
  Matrix zz;            // <S_zm S_zn>
  Matrix zz_connected;  // G_z(m, n)
  std::optional<Vector> sx_mean;
  std::optional<Vector> sy_mean;
  std::optional<Matrix> xx;  // <S_xm S_xn>
  std::optional<Matrix> yy;  // <S_ym S_yn>

  bool has_transverse() const { return xx.has_value() && yy.has_value() && sx_mean && sy_mean; }
};

enum class Transverse { Skip, Compute };

/// Requires a normalized state (|norm - 1| <= 1e-10).
CorrelationSet correlations(const StateVector& state, Transverse transverse = Transverse::Skip);

/// Affine combination of first and second moments, p a + (1 - p) b, i.e. the
/// correlation data of the classical mixture p rho_a + (1 - p) rho_b.
CorrelationSet mix(const CorrelationSet& a, const CorrelationSet& b, double p);

/// S(q) = (1/L) sum_mn exp(i q (m - n)) C(m, n) for a real symmetric C.
template <typename Derived>
double structure_factor(const Eigen::MatrixBase<Derived>& c, double q) {
  using Scalar = typename Derived::Scalar;
  const Index l = c.rows();
  if (c.cols() != l) throw DimensionError("structure factor needs a square correlation matrix");
  Scalar re = 0;
  Scalar im = 0;
  for (Index m = 0; m < l; ++m) {
    for (Index n = 0; n < l; ++n) {
      const Scalar phase = static_cast<Scalar>(q) * static_cast<Scalar>(m - n);
      re += std::cos(phase) * c(m, n);
      im += std::sin(phase) * c(m, n);
    }
  }
  if (std::abs(im) > 1e-10 * std::max<Scalar>(1, std::abs(re))) {
    throw PreconditionError("structure factor has a non-vanishing imaginary part; correlator not symmetric");
  }
  return static_cast<double>(re / static_cast<Scalar>(l));
}

/// Magnetic structure factor on the zz correlator of a correlation set.
double structure_factor(const CorrelationSet& c, double q);

enum class StringConvention {
  Interior,      // phases on sites m+1 .. n-1
  ShiftedRange,  // phases on sites m-1 .. n-1
};

/// <S_zm prod_l exp(i pi S_zl) S_zn>; the phase is diag(-1, +1, -1) per site.
double string_order(const StateVector& state, int m, int n, StringConvention convention = StringConvention::Interior);

/// <H_i> with H_i = cos(theta) S_i.S_{i+1} + sin(theta) (S_i.S_{i+1})^2.
double bond_energy(const StateVector& state, double theta, int bond);

/// |<H_i> - <H_{i+1}>|, 0 <= i <= L - 3.
double dimer_order(const StateVector& state, double theta, int bond);

}  // namespace spinprobe
