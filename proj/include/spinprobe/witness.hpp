#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spinprobe/observables.hpp"
#include "spinprobe/spectroscopy.hpp"

namespace spinprobe {

/// Below this value W certifies entanglement.
inline constexpr double kDetectionThreshold = -1e-10;

/// Collective-spin witness W = V - s sum_i c_i^2 for one probe setting.
/// Here J_alpha = sum_m c_m S_alpha,m carries no 1/sqrt(L) factor, unlike the
/// effective angular momentum of the homodyne signal.
struct WitnessReport {
  double kpd;
  double alpha;
  double v_value;
  double bound;
  double w_value;
  bool detected;
};

/// V = sum_alpha sum_ij c_i c_j (<S_ai S_aj> - <S_ai><S_aj>); needs transverse data.
double collective_variance(const CorrelationSet& c, const Vector& coefficients);

WitnessReport witness_value(const CorrelationSet& c, const ProbeConfig& p, double spin = 1.0);

/// One report per kpd value, in grid order.
std::vector<WitnessReport> witness_scan(const CorrelationSet& c, std::span<const double> kpd_grid, double alpha,
                                        double spin = 1.0, double wannier_width = 0.0);

/// Tensor product of independent random real single-site spin-1 states over
/// the full 3^L space, deterministic in `seed`. L <= 10.
StateVector random_product_state(int length, std::uint64_t seed);

/// Single-site factors used by random_product_state, one normalized 3-vector
/// per site in the local order m = -1, 0, +1.
std::vector<Eigen::Vector3d> random_site_states(int length, std::uint64_t seed);

}  // namespace spinprobe
