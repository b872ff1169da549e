#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace spinprobe {

enum class Boundary { Open, Periodic };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

/// Bilinear-biquadratic spin-1 chain
///   H = J sum_i [cos(theta) S_i.S_{i+1} + sin(theta) (S_i.S_{i+1})^2]
/// in units hbar = 1, lattice spacing d = 1.
class ModelParams {
 public:
  static constexpr int kMaxLength = 16;

  ModelParams(double theta, int length, Boundary boundary = Boundary::Open, double j_scale = 1.0);

  double theta() const { return theta_; }
  double j_scale() const { return j_scale_; }
  int length() const { return length_; }
  Boundary boundary() const { return boundary_; }

  /// Set when the chain length is not a multiple of 6 (incommensurate with
  /// both dimer and trimer order); construction still succeeds.
  const std::optional<std::string>& warning() const { return warning_; }

 private:
  double theta_;
  double j_scale_;
  int length_;
  Boundary boundary_;
  std::optional<std::string> warning_;
};

struct HubbardParams {
  double u0;
  double u2;
  double t_hop;
};

struct SpinCouplings {
  double theta;
  double j_scale;
};

/// Second-order strong-coupling map of the spin-1 Bose-Hubbard model at unit
/// filling. theta = atan2(U0, U0 - 2 U2), so U0 > 0 places theta in (0, pi).
/// At U0 = 2 U2 the energy scale diverges and +inf is returned.
SpinCouplings hubbard_to_spin(const HubbardParams& h);

enum class PhaseLabel { Ferromagnetic, Critical, Haldane, Dimer };

std::string_view to_string(PhaseLabel p);

struct PhaseClassification {
  PhaseLabel label;
  bool transition_point;  // theta sits exactly on a phase boundary
};

/// Phase of the ground state as a function of theta in [-pi, pi]. Boundary
/// angles belong to the phase at larger theta and are flagged; -pi and pi are
/// the same point (ferromagnetic).
PhaseClassification classify_phase(double theta);

}  // namespace spinprobe
