#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <vector>

#include "spinprobe/observables.hpp"

namespace spinprobe {

/// Standing-wave probe. Lengths in units of the lattice spacing.
struct ProbeConfig {
  double kpd = std::numbers::pi / 2;  // k_P d
  double alpha = 0.0;                 // shift a / d
  double kappa = 1.0;                 // light-matter coupling
  double wannier_width = 0.0;         // Gaussian Wannier amplitude width sigma / d; 0 = delta limit
  double input_variance = 0.5;        // (Delta X_in)^2, coherent input

  void validate(bool modulated = true) const;
};

/// Homodyne observables of one probe setting.
struct SignalPoint {
  double kpd;
  double alpha;
  double epsilon;         // (Delta J_z^eff)^2
  double mean_jz;         // <J_z^eff>
  double x_out_mean;      // -kappa <J_z^eff>
  double x_out_variance;  // (Delta X_in)^2 + kappa^2 epsilon
};

/// c_n = 2 cos^2[kpd (n - alpha)] in the delta limit, or
/// c_n = 1 + exp(-(kpd sigma)^2) cos[2 kpd (n - alpha)] for Gaussian Wannier functions.
Vector probe_coefficients(const ProbeConfig& p, int length);

/// (1/sqrt(L)) sum_n c_n <S_zn>. kpd = 0 is the ferromagnetic detector.
double mean_effective_jz(const Vector& sz_mean, const Vector& coefficients);

/// Direct sum (4/L) sum_mn cos^2[k(m-a)] cos^2[k(n-a)] G(m, n) in the delta limit.
template <typename Derived>
double epsilon_direct(const Eigen::MatrixBase<Derived>& g, double kpd, double alpha) {
  using Scalar = typename Derived::Scalar;
  const Index l = g.rows();
  Scalar acc = 0;
  for (Index m = 0; m < l; ++m) {
    const Scalar cm = std::cos(static_cast<Scalar>(kpd) * (static_cast<Scalar>(m) - static_cast<Scalar>(alpha)));
    for (Index n = 0; n < l; ++n) {
      const Scalar cn = std::cos(static_cast<Scalar>(kpd) * (static_cast<Scalar>(n) - static_cast<Scalar>(alpha)));
      acc += cm * cm * cn * cn * g(m, n);
    }
  }
  return static_cast<double>(4 * acc / static_cast<Scalar>(l));
}

/// Quadratic-form route (1/L) c^T G c.
template <typename DerivedG, typename DerivedC>
double epsilon_quadratic(const Eigen::MatrixBase<DerivedG>& g, const Eigen::MatrixBase<DerivedC>& c) {
  if (g.rows() != c.size() || g.cols() != c.size()) throw DimensionError("coefficient / correlator size mismatch");
  return static_cast<double>(c.dot(g * c) / static_cast<typename DerivedG::Scalar>(c.size()));
}

/// Variance signal and homodyne statistics for one probe setting.
SignalPoint epsilon(const CorrelationSet& c, const ProbeConfig& p);

/// Alpha-averaged signal S(2 kpd) / 2; requires zero magnetization (|<S_zm>| <= 1e-8).
double epsilon_alpha_averaged(const CorrelationSet& c, double kpd);

/// Numeric route: mean of epsilon over a uniform alpha grid spanning one period pi / kpd.
double epsilon_alpha_grid_average(const CorrelationSet& c, double kpd, int points = 64);

/// epsilon(kpd, alpha1) - epsilon(kpd, alpha2), delta-limit coefficients.
double delta_epsilon(const CorrelationSet& c, double kpd, double alpha1, double alpha2);

/// Zero-magnetization kernel
/// (1/2L) sum_mn {cos[2k(m+n-2 a1)] - cos[2k(m+n-2 a2)]} G(m, n).
template <typename Derived>
double delta_epsilon_kernel(const Eigen::MatrixBase<Derived>& g, double kpd, double alpha1, double alpha2) {
  using Scalar = typename Derived::Scalar;
  const Index l = g.rows();
  Scalar acc = 0;
  for (Index m = 0; m < l; ++m) {
    for (Index n = 0; n < l; ++n) {
      const Scalar s = static_cast<Scalar>(m + n);
      acc += (std::cos(2 * kpd * (s - 2 * alpha1)) - std::cos(2 * kpd * (s - 2 * alpha2))) * g(m, n);
    }
  }
  return static_cast<double>(acc / (2 * static_cast<Scalar>(l)));
}

/// Trimer detector (1/L) sum_mn cos[(2 pi/3)(m+n) + pi/3] G(m, n) = delta_epsilon(pi/3, 5/4, 1/2).
double c_epsilon(const CorrelationSet& c);

/// Dimer detector -(1/L) sum_mn sin[(pi/2)(m+n)] G(m, n) = delta_epsilon(pi/4, 3/2, 1/2).
double d_epsilon(const CorrelationSet& c);

/// Ferromagnetic detector: <J_z^eff> at kpd = 0 for a sector eigenstate of
/// total magnetization sz_total, 2 sz_total / sqrt(L).
double ferromagnetic_signal(int sz_total, int length);

/// Largest |<S_zm>|.
double max_abs_magnetization(const CorrelationSet& c);

/// Largest |sum_n <S_zm S_zn>| over m; zero for total-S_z = 0 eigenstates.
double max_abs_row_sum(const CorrelationSet& c);

}  // namespace spinprobe
