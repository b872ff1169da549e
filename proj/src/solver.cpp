#include "spinprobe/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "spinprobe/errors.hpp"

namespace spinprobe {

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
  if (n_eigenvalues < 1) throw DomainError("n_eigenvalues must be >= 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (krylov_block < 2) throw DomainError("krylov_block must be >= 2");
  if (degeneracy_cap < 1) throw DomainError("degeneracy_cap must be >= 1");
}

double degeneracy_window(double ground_energy) { return 1e-8 * std::max(1.0, std::abs(ground_energy)); }

namespace {

// Memory bound on the stored Krylov block, in doubles.
constexpr double kKrylovMemory = 1.5e8;

void orthogonalize(Eigen::Ref<Vector> w, const Matrix& basis, Index columns, const std::vector<Eigenpair>& locked) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& l : locked) w -= l.state.amplitudes().dot(w) * l.state.amplitudes();
    if (columns > 0) {
      const Vector overlaps = basis.leftCols(columns).transpose() * w;
      w.noalias() -= basis.leftCols(columns) * overlaps;
    }
  }
}

Vector start_vector(Index dim, std::uint64_t seed, int sector, int level) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sector + 1024), static_cast<std::uint32_t>(level)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  return v;
}

struct RunResult {
  std::optional<Eigenpair> pair;
  std::vector<double> history;
};

// One eigenpair of H restricted to the complement of `locked`.
RunResult lowest_unlocked(const HamiltonianOperator& h, const SolverOptions& opts, const std::vector<Eigenpair>& locked,
                          int level) {
  const Index dim = h.dimension();
  const int sector = h.basis().sz_total().value_or(0);
  RunResult result;
  if (static_cast<Index>(locked.size()) >= dim) return result;

  Vector x = start_vector(dim, opts.seed, sector, level);
  orthogonalize(x, Matrix(), 0, locked);
  if (x.norm() < 1e-12) return result;
  x.normalize();

  const Index memory_cap = std::max<Index>(8, static_cast<Index>(kKrylovMemory / static_cast<double>(dim)));
  const Index block = std::min({static_cast<Index>(opts.krylov_block), dim - static_cast<Index>(locked.size()), memory_cap});

  Matrix basis(dim, block);
  Vector w(dim);
  Vector hx(dim);
  int products = 0;
  double best_residual = std::numeric_limits<double>::infinity();

  while (true) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = x;
    Index steps = 0;
    double ritz = 0.0;
    Vector ritz_coeffs;
    for (Index j = 0; j < block; ++j) {
      h.apply(basis.col(j), w);
      ++products;
      alpha.push_back(basis.col(j).dot(w));
      w -= alpha.back() * basis.col(j);
      if (j > 0) w -= beta.back() * basis.col(j - 1);
      if (opts.reorthogonalize) {
        orthogonalize(w, basis, j + 1, locked);
      } else {
        orthogonalize(w, Matrix(), 0, locked);
      }
      const double b = w.norm();
      steps = j + 1;

      Eigen::SelfAdjointEigenSolver<Matrix> tri;
      const Vector diag = Eigen::Map<const Vector>(alpha.data(), steps);
      const Vector sub = steps > 1 ? Vector(Eigen::Map<const Vector>(beta.data(), steps - 1)) : Vector();
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      ritz = tri.eigenvalues()(0);
      ritz_coeffs = tri.eigenvectors().col(0);
      result.history.push_back(ritz);

      const double estimate = b * std::abs(ritz_coeffs(steps - 1));
      const bool invariant = b < 1e-13 * std::max(1.0, std::abs(ritz));
      if (estimate < 0.25 * opts.tolerance || invariant || products >= opts.max_iterations || j + 1 == block) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }

    x.noalias() = basis.leftCols(steps) * ritz_coeffs;
    orthogonalize(x, Matrix(), 0, locked);
    x.normalize();
    h.apply(x, hx);
    const double energy = x.dot(hx);
    const double residual = (hx - energy * x).norm();
    best_residual = std::min(best_residual, residual);
    if (residual <= opts.tolerance) {
      result.pair = Eigenpair{energy, StateVector(h.basis_handle(), x), residual};
      return result;
    }
    if (products >= opts.max_iterations) {
      throw ConvergenceError("Lanczos did not converge in sector " + std::to_string(sector) + " after " +
                                 std::to_string(products) + " products (best residual " +
                                 std::to_string(best_residual) + ")",
                             best_residual);
    }
  }
}

}  // namespace

namespace {

// Appends eigenpairs above the ones already locked in `spec` until it holds `count`.
void extend_spectrum(const HamiltonianOperator& h, const SolverOptions& opts, SectorSpectrum& spec, int count) {
  for (auto level = static_cast<int>(spec.pairs.size()); level < count; ++level) {
    RunResult run = lowest_unlocked(h, opts, spec.pairs, level);
    if (level == 0) spec.ritz_history = std::move(run.history);
    if (!run.pair) break;
    spec.pairs.push_back(std::move(*run.pair));
  }
  std::stable_sort(spec.pairs.begin(), spec.pairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.energy < b.energy; });
}

}  // namespace

SectorSpectrum lanczos_lowest(const HamiltonianOperator& h, const SolverOptions& opts, int count) {
  opts.validate();
  SectorSpectrum out{h.basis().sz_total().value_or(0), {}, {}};
  extend_spectrum(h, opts, out, count);
  return out;
}

namespace {

struct SectorRun {
  SectorSpectrum spectrum;
  bool saturated = false;
};

// Extends a sector run while every computed level is still degenerate with
// `reference`, so multiplets inside one sector are counted up to the cap.
SectorRun solve_sector(const ModelParams& p, int sz_total, const SolverOptions& opts, std::optional<double> reference) {
  const HamiltonianOperator h(p, make_sector_basis(p.length(), sz_total));
  SectorRun run{{sz_total, {}, {}}, false};
  int count = opts.n_eigenvalues;
  extend_spectrum(h, opts, run.spectrum, count);
  const auto& pairs = run.spectrum.pairs;
  while (static_cast<Index>(pairs.size()) == count && count < h.dimension()) {
    const double ref = reference.value_or(pairs.front().energy);
    if (pairs.back().energy - ref > degeneracy_window(ref)) break;
    if (count >= opts.degeneracy_cap) {
      run.saturated = true;
      break;
    }
    count += 1;
    extend_spectrum(h, opts, run.spectrum, count);
  }
  return run;
}

GroundStateReport assemble(const std::vector<SectorSpectrum>& sectors, bool mirror_negative, bool saturated) {
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& s : sectors) e0 = std::min(e0, s.pairs.front().energy);
  const double window = degeneracy_window(e0);

  std::vector<SectorLevel> levels;
  std::vector<int> degenerate;
  int degeneracy = 0;
  std::optional<double> gap;
  const SectorSpectrum* chosen = nullptr;
  for (const auto& s : sectors) {
    const int copies = (mirror_negative && s.sz_total != 0) ? 2 : 1;
    bool participates = false;
    for (const auto& pr : s.pairs) {
      levels.push_back({s.sz_total, pr.energy});
      if (mirror_negative && s.sz_total != 0) levels.push_back({-s.sz_total, pr.energy});
      if (pr.energy - e0 <= window) {
        degeneracy += copies;
        participates = true;
      } else if (!gap || pr.energy - e0 < *gap) {
        gap = pr.energy - e0;
      }
    }
    if (participates) {
      degenerate.push_back(s.sz_total);
      if (copies == 2) degenerate.push_back(-s.sz_total);
      // Sectors arrive in increasing |sz|, so the first hit is the preferred one.
      if (!chosen) chosen = &s;
    }
  }
  std::sort(degenerate.begin(), degenerate.end());
  const Eigenpair& ground = chosen->pairs.front();
  if (saturated) gap.reset();
  return GroundStateReport{ground.energy, ground.state,      chosen->sz_total,     degeneracy, ground.residual,
                           degenerate,    std::move(levels), gap,                  chosen->ritz_history, saturated};
}

}  // namespace

GroundStateReport ground_state_sector(const ModelParams& p, int sz_total, const SolverOptions& opts) {
  opts.validate();
  SectorRun run = solve_sector(p, sz_total, opts, std::nullopt);
  if (run.spectrum.pairs.empty()) throw EmptySectorError("sector produced no eigenpairs");
  return assemble({std::move(run.spectrum)}, false, run.saturated);
}

GroundStateReport ground_state_global(const ModelParams& p, const SolverOptions& opts) {
  opts.validate();
  // SU(2) symmetry: every multiplet has an sz_total = 0 member and the lowest
  // level of sector s is non-decreasing in |s|. Sector 0 therefore holds the
  // ground energy and the gap; higher sectors only add multiplet members and
  // the scan stops at the first sector without a degenerate level.
  SectorRun first = solve_sector(p, 0, opts, std::nullopt);
  bool saturated = first.saturated;
  std::vector<SectorSpectrum> sectors{std::move(first.spectrum)};
  const double e0 = sectors.front().pairs.front().energy;
  SolverOptions upper = opts;
  upper.n_eigenvalues = 1;
  for (int sz = 1; sz <= p.length() && !saturated; ++sz) {
    SectorRun run = solve_sector(p, sz, upper, e0);
    saturated = run.saturated;
    const bool degenerate = run.spectrum.pairs.front().energy - e0 <= degeneracy_window(e0);
    sectors.push_back(std::move(run.spectrum));
    if (!degenerate) break;
  }
  return assemble(sectors, true, saturated);
}

Matrix dense_hamiltonian(const ModelParams& p) {
  const int length = p.length();
  if (length > 6) throw SizeGuardError("dense oracle limited to L <= 6");
  using Sparse = Eigen::SparseMatrix<double>;

  Sparse sz(3, 3);
  Sparse sp(3, 3);
  sz.insert(0, 0) = -1.0;
  sz.insert(2, 2) = 1.0;
  sp.insert(1, 0) = std::sqrt(2.0);
  sp.insert(2, 1) = std::sqrt(2.0);
  const Sparse sm = sp.transpose();

  const auto embed = [length](const Sparse& op, int site) {
    Sparse result(1, 1);
    result.insert(0, 0) = 1.0;
    for (int s = 0; s < length; ++s) {
      Sparse id(3, 3);
      id.setIdentity();
      result = Sparse(Eigen::kroneckerProduct(result, s == site ? op : id));
    }
    return result;
  };

  const auto dim = static_cast<Index>(pow3(length));
  Sparse h(dim, dim);
  for (const auto& [i, j] : chain_bonds(length, p.boundary())) {
    const Sparse dot = embed(sz, i) * embed(sz, j) + 0.5 * (embed(sp, i) * embed(sm, j) + embed(sm, i) * embed(sp, j));
    const Sparse dot2 = dot * dot;
    h += p.j_scale() * (std::cos(p.theta()) * dot + std::sin(p.theta()) * dot2);
  }
  return Matrix(h);
}

std::vector<double> dense_spectrum(const ModelParams& p) {
  const Matrix h = dense_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace spinprobe
