#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinprobe/hilbert.hpp"
#include "spinprobe/model.hpp"

namespace spinprobe {

struct SolverOptions {
  int max_iterations = 500;   // matrix-vector products allowed per eigenpair
  double tolerance = 1e-10;   // bound on ||H v - E v||
  int n_eigenvalues = 2;      // lowest eigenpairs requested per sector
  bool reorthogonalize = true;
  std::uint64_t seed = 0;
  int krylov_block = 120;     // Lanczos vectors kept before an explicit restart
  /// Degenerate levels resolved per sector; beyond it the multiplet count is a lower bound.
  int degeneracy_cap = 16;

  void validate() const;
};

/// Eigenvalues within this window of the minimum count as degenerate.
double degeneracy_window(double ground_energy);

struct Eigenpair {
  double energy;
  StateVector state;
  double residual;
};

/// Lowest eigenpairs of one sector, ascending in energy.
struct SectorSpectrum {
  int sz_total;
  std::vector<Eigenpair> pairs;
  /// Lowest Ritz value after every Lanczos step of the ground-state run.
  std::vector<double> ritz_history;
};

/// Lanczos with full reorthogonalization, explicit restarts and locking of
/// converged vectors. Throws ConvergenceError when an eigenpair does not reach
/// `opts.tolerance` within `opts.max_iterations` products.
SectorSpectrum lanczos_lowest(const HamiltonianOperator& h, const SolverOptions& opts, int count);

struct SectorLevel {
  int sz_total;
  double energy;
};

struct GroundStateReport {
  double energy;
  StateVector state;
  int sector;
  int degeneracy;
  double residual;
  /// Sectors (both signs) holding a member of the degenerate ground multiplet.
  std::vector<int> degenerate_sectors;
  /// Every computed level, sector by sector; sz < 0 mirrors sz > 0.
  std::vector<SectorLevel> levels;
  /// Lowest computed level outside the degeneracy window minus the ground energy.
  std::optional<double> gap;
  std::vector<double> ritz_history;
  /// Set when a sector hit SolverOptions::degeneracy_cap; `degeneracy` is then a lower bound
  /// and `gap` is absent.
  bool degeneracy_saturated = false;
};

GroundStateReport ground_state_sector(const ModelParams& p, int sz_total, const SolverOptions& opts = {});

/// Scans sz_total = 0, 1, ... until a sector has no level degenerate with the
/// ground energy; negative sectors follow from spin-flip symmetry. When the
/// ground level is degenerate the sz_total = 0 member is returned if present.
/// The scan also stops at the first sector that saturates the degeneracy cap.
GroundStateReport ground_state_global(const ModelParams& p, const SolverOptions& opts = {});

/// Full 3^L Hamiltonian assembled from Kronecker products of single-site
/// operators. Oracle only: L <= 6.
Matrix dense_hamiltonian(const ModelParams& p);

/// All 3^L eigenvalues, ascending.
std::vector<double> dense_spectrum(const ModelParams& p);

}  // namespace spinprobe
