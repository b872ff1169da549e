#include "spinprobe/observables.hpp"

#include <array>
#include <string>

namespace spinprobe {

namespace {

constexpr double kNormTolerance = 1e-10;
const double kSqrt2 = std::sqrt(2.0);

void require_normalized(const StateVector& state) {
  const double n = state.norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw NormalizationError("state norm " + std::to_string(n) + " differs from 1");
  }
}

// Digit change and matrix element of S+ (raise = true) or S- on one digit;
// zero factor when the ladder operator annihilates the digit.
struct Ladder {
  int new_digit;
  double factor;
};

Ladder ladder(int digit, bool raise) {
  if (raise) return digit < 2 ? Ladder{digit + 1, kSqrt2} : Ladder{digit, 0.0};
  return digit > 0 ? Ladder{digit - 1, kSqrt2} : Ladder{digit, 0.0};
}

}  // namespace

CorrelationSet correlations(const StateVector& state, Transverse transverse) {
  require_normalized(state);
  const SectorBasis& b = state.basis();
  const Vector& amp = state.amplitudes();
  const int l = b.length();

  CorrelationSet c;
  c.length = l;
  c.sz_mean = Vector::Zero(l);
  c.zz = Matrix::Zero(l, l);

  std::array<int, SectorBasis::kMaxLength> d{};
  const std::span<int> digits(d.data(), static_cast<std::size_t>(l));
  Vector s(l);
  for (Index k = 0; k < b.dimension(); ++k) {
    const double weight = amp(k) * amp(k);
    if (weight == 0.0) continue;
    b.digits(b.code(k), digits);
    for (int site = 0; site < l; ++site) s(site) = d[static_cast<std::size_t>(site)] - 1;
    c.sz_mean += weight * s;
    c.zz.noalias() += weight * s * s.transpose();
  }
  c.zz_connected = c.zz - c.sz_mean * c.sz_mean.transpose();

  if (transverse == Transverse::Skip) return c;

  // pair[a][b](m, n) = <S^a_m S^b_n> with a, b in {+, -}; index 0 = raise.
  std::array<std::array<Matrix, 2>, 2> pair;
  for (auto& row : pair)
    for (auto& m : row) m = Matrix::Zero(l, l);
  Vector lower_mean = Vector::Zero(l);  // <S-_n>

  for (Index k = 0; k < b.dimension(); ++k) {
    const double ak = amp(k);
    if (ak == 0.0) continue;
    const ConfigCode code = b.code(k);
    b.digits(code, digits);
    for (int n = 0; n < l; ++n) {
      const int dn = d[static_cast<std::size_t>(n)];
      const auto wn = static_cast<std::int64_t>(b.site_weight(n));
      {
        const Ladder lo = ladder(dn, false);
        if (lo.factor != 0.0) {
          const Index target = b.find(static_cast<ConfigCode>(static_cast<std::int64_t>(code) - wn));
          if (target >= 0) lower_mean(n) += amp(target) * lo.factor * ak;
        }
      }
      for (int bi = 0; bi < 2; ++bi) {
        const Ladder first = ladder(dn, bi == 0);
        if (first.factor == 0.0) continue;
        const std::int64_t mid = static_cast<std::int64_t>(code) + (first.new_digit - dn) * wn;
        for (int m = 0; m <= n; ++m) {
          const int dm = m == n ? first.new_digit : d[static_cast<std::size_t>(m)];
          const auto wm = static_cast<std::int64_t>(b.site_weight(m));
          for (int ai = 0; ai < 2; ++ai) {
            const Ladder second = ladder(dm, ai == 0);
            if (second.factor == 0.0) continue;
            const Index target = b.find(static_cast<ConfigCode>(mid + (second.new_digit - dm) * wm));
            if (target < 0) continue;
            // <psi| S^a_m S^b_n |psi> = sum_k psi_target * element * psi_k
            pair[static_cast<std::size_t>(ai)][static_cast<std::size_t>(bi)](m, n) +=
                amp(target) * second.factor * first.factor * ak;
          }
        }
      }
    }
  }

  // Only m <= n was accumulated; operators on different sites commute.
  std::array<std::array<Matrix, 2>, 2> full = pair;
  for (int ai = 0; ai < 2; ++ai)
    for (int bi = 0; bi < 2; ++bi)
      for (int m = 0; m < l; ++m)
        for (int n = m + 1; n < l; ++n) full[ai][bi](n, m) = pair[bi][ai](m, n);

  const Matrix& pp = full[0][0];
  const Matrix& pm = full[0][1];
  const Matrix& mp = full[1][0];
  const Matrix& mm = full[1][1];
  c.xx = 0.25 * (pp + pm + mp + mm);
  c.yy = -0.25 * (pp - pm - mp + mm);
  // Real amplitudes: <S+> = <S->, hence <S_x> = <S-> and <S_y> = 0.
  c.sx_mean = lower_mean;
  c.sy_mean = Vector::Zero(l);
  return c;
}

CorrelationSet mix(const CorrelationSet& a, const CorrelationSet& b, double p) {
  if (a.length != b.length) throw DimensionError("cannot mix correlation sets of different length");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
  const double q = 1.0 - p;
  CorrelationSet c;
  c.length = a.length;
  c.sz_mean = p * a.sz_mean + q * b.sz_mean;
  c.zz = p * a.zz + q * b.zz;
  c.zz_connected = c.zz - c.sz_mean * c.sz_mean.transpose();
  if (a.has_transverse() && b.has_transverse()) {
    c.sx_mean = p * *a.sx_mean + q * *b.sx_mean;
    c.sy_mean = p * *a.sy_mean + q * *b.sy_mean;
    c.xx = p * *a.xx + q * *b.xx;
    c.yy = p * *a.yy + q * *b.yy;
  }
  return c;
}

double structure_factor(const CorrelationSet& c, double q) { return structure_factor(c.zz, q); }

double string_order(const StateVector& state, int m, int n, StringConvention convention) {
  const SectorBasis& b = state.basis();
  const int l = b.length();
  if (m < 0 || n >= l || m >= n) throw RangeError("string order needs 0 <= m < n <= L-1");
  int first = m + 1;
  if (convention == StringConvention::Interior) {
    if (n - m < 2) throw RangeError("interior string order needs n - m >= 2");
  } else {
    first = m - 1;
    if (first < 0) throw RangeError("shifted-range string order needs m >= 1 (phase range starts at m-1)");
  }
  const int last = n - 1;

  std::array<int, SectorBasis::kMaxLength> d{};
  const std::span<int> digits(d.data(), static_cast<std::size_t>(l));
  double acc = 0.0;
  for (Index k = 0; k < b.dimension(); ++k) {
    const double weight = state.amplitudes()(k) * state.amplitudes()(k);
    if (weight == 0.0) continue;
    b.digits(b.code(k), digits);
    double value = (d[static_cast<std::size_t>(m)] - 1) * (d[static_cast<std::size_t>(n)] - 1);
    if (value == 0.0) continue;
    for (int site = first; site <= last; ++site) {
      if (d[static_cast<std::size_t>(site)] != 1) value = -value;
    }
    acc += weight * value;
  }
  return acc;
}

double bond_energy(const StateVector& state, double theta, int bond) {
  const SectorBasis& b = state.basis();
  if (bond < 0 || bond > b.length() - 2) throw RangeError("bond index out of range");
  const BondMatrix h = bond_matrix(theta);
  const int i = bond;
  const int j = bond + 1;
  const auto wi = static_cast<std::int64_t>(b.site_weight(i));
  const auto wj = static_cast<std::int64_t>(b.site_weight(j));
  const Vector& amp = state.amplitudes();

  double acc = 0.0;
  for (Index k = 0; k < b.dimension(); ++k) {
    if (amp(k) == 0.0) continue;
    const ConfigCode code = b.code(k);
    const int di = b.local_sz(code, i) + 1;
    const int dj = b.local_sz(code, j) + 1;
    const std::int64_t base = static_cast<std::int64_t>(code) - di * wi - dj * wj;
    for (int pair = 0; pair < 9; ++pair) {
      const double element = h(pair, 3 * di + dj);
      if (element == 0.0) continue;
      const Index target = b.find(static_cast<ConfigCode>(base + (pair / 3) * wi + (pair % 3) * wj));
      if (target >= 0) acc += amp(target) * element * amp(k);
    }
  }
  return acc;
}

double dimer_order(const StateVector& state, double theta, int bond) {
  if (bond < 0 || bond > state.basis().length() - 3) throw RangeError("dimer order needs 0 <= i <= L-3");
  return std::abs(bond_energy(state, theta, bond) - bond_energy(state, theta, bond + 1));
}

}  // namespace spinprobe
