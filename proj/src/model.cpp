#include "spinprobe/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spinprobe/errors.hpp"

namespace spinprobe {

std::string_view to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

Boundary parse_boundary(std::string_view text) {
  if (text == "open") return Boundary::Open;
  if (text == "periodic") return Boundary::Periodic;
  throw DomainError("boundary must be 'open' or 'periodic', got '" + std::string(text) + "'");
}

ModelParams::ModelParams(double theta, int length, Boundary boundary, double j_scale)
    : theta_(theta), j_scale_(j_scale), length_(length), boundary_(boundary) {
  constexpr double pi = std::numbers::pi;
  if (!(theta >= -pi && theta <= pi)) throw DomainError("theta must lie in [-pi, pi]");
  if (!(j_scale > 0.0) || !std::isfinite(j_scale)) throw DomainError("j_scale must be positive and finite");
  if (length < 2) throw DomainError("chain length must be >= 2");
  if (length > kMaxLength) throw SizeGuardError("chain length above the hard cap of 16 sites");
  if (length % 6 != 0) {
    warning_ = "chain length " + std::to_string(length) +
               " is not a multiple of 6; dimer/trimer correlations suffer incommensurability effects";
  }
}

SpinCouplings hubbard_to_spin(const HubbardParams& h) {
  if (!(h.u0 > 0.0)) throw DomainError("U0 must be positive");
  if (!(h.u0 + h.u2 > 0.0)) throw DomainError("U0 + U2 must be positive");
  if (!(h.t_hop > 0.0)) throw DomainError("tunneling t must be positive");

  const double num = h.u0;
  const double den = h.u0 - 2.0 * h.u2;
  const double theta = std::atan2(num, den);
  const double prefactor = 2.0 * h.t_hop * h.t_hop / (h.u0 + h.u2);
  // sqrt(1 + tan^2) = hypot(num, den) / |den|
  const double secant = den == 0.0 ? std::numeric_limits<double>::infinity()
                                   : std::hypot(num, den) / std::abs(den);
  return {theta, prefactor * secant};
}

std::string_view to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::Ferromagnetic: return "ferromagnetic";
    case PhaseLabel::Critical: return "critical";
    case PhaseLabel::Haldane: return "haldane";
    case PhaseLabel::Dimer: return "dimer";
  }
  return "unknown";
}

PhaseClassification classify_phase(double theta) {
  constexpr double pi = std::numbers::pi;
  if (!(theta >= -pi && theta <= pi)) throw DomainError("theta must lie in [-pi, pi]");

  // Boundaries in increasing order; each boundary belongs to the phase above it.
  // -pi and pi are interior points of the ferromagnetic arc (pi/2, 5pi/4).
  if (theta < -0.75 * pi) return {PhaseLabel::Ferromagnetic, false};
  if (theta < -0.25 * pi) return {PhaseLabel::Dimer, theta == -0.75 * pi};
  if (theta < 0.25 * pi) return {PhaseLabel::Haldane, theta == -0.25 * pi};
  if (theta < 0.5 * pi) return {PhaseLabel::Critical, theta == 0.25 * pi};
  return {PhaseLabel::Ferromagnetic, theta == 0.5 * pi};
}

}  // namespace spinprobe
