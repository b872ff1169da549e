#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinprobe/spinprobe.hpp"
#include "support/oracles.hpp"

using namespace spinprobe;
constexpr double pi = std::numbers::pi;

namespace {

ProbeConfig probe(double kpd, double alpha = 0.0, double sigma = 0.0) {
  ProbeConfig p;
  p.kpd = kpd;
  p.alpha = alpha;
  p.wannier_width = sigma;
  return p;
}

// 2 * integral cos^2(k (z - alpha)) |w(z - n)|^2 dz for |w|^2 a normalized
// Gaussian of variance sigma^2 / 2, by the trapezoid rule.
double smeared_coefficient(double kpd, double alpha, double sigma, int n) {
  const int steps = 20000;
  const double half = 12.0 * sigma;
  const double h = 2 * half / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = -half + i * h;
    const double density = std::exp(-x * x / (sigma * sigma)) / (sigma * std::sqrt(pi));
    const double c = std::cos(kpd * (n + x - alpha));
    acc += (i == 0 || i == steps ? 0.5 : 1.0) * 2 * c * c * density;
  }
  return acc * h;
}

CorrelationSet zero_set(int l) {
  CorrelationSet c;
  c.length = l;
  c.sz_mean = Vector::Zero(l);
  c.zz = Matrix::Zero(l, l);
  c.zz_connected = Matrix::Zero(l, l);
  return c;
}

const CorrelationSet& heis12() {
  static const CorrelationSet c = correlations(fixtures::ground(0.0, 12).state);
  return c;
}

}  // namespace

TEST_CASE("probe coefficient examples") {
  ProbeConfig p0 = probe(0.0);
  CHECK(probe_coefficients(p0, 5).isApprox(Vector::Constant(5, 2.0)));
  const Vector c = probe_coefficients(probe(pi / 2), 6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(c(n) - (n % 2 == 0 ? 2.0 : 0.0)) < 1e-15);
  CHECK(std::abs(probe_coefficients(probe(pi / 3, 0.5), 3)(1) - 1.5) < 1e-15);
  CHECK_THROWS_AS(probe_coefficients(probe(pi / 3, 0.0, -0.1), 3), DomainError);
}

TEST_CASE("Gaussian smearing matches direct quadrature") {
  for (double sigma : {0.05, 0.2, 0.45}) {
    for (double kpd : {pi / 7, pi / 3, 0.9 * pi}) {
      const Vector c = probe_coefficients(probe(kpd, 0.3, sigma), 6);
      for (int n = 0; n < 6; ++n) {
        CHECK(std::abs(c(n) - smeared_coefficient(kpd, 0.3, sigma, n)) < 1e-9);
        CHECK(c(n) >= 0.0);
        CHECK(c(n) <= 2.0);
      }
    }
  }
  const Vector sharp = probe_coefficients(probe(0.7, 0.2, 1e-9), 5);
  CHECK((sharp - probe_coefficients(probe(0.7, 0.2), 5)).norm() < 1e-12);
}

TEST_CASE("mean effective Jz") {
  const auto zero = correlations(fixtures::uniform_product(4, 0));
  CHECK(mean_effective_jz(zero.sz_mean, probe_coefficients(probe(0.8), 4)) == 0.0);
  const auto pol = correlations(fixtures::uniform_product(4, 1));
  CHECK(std::abs(mean_effective_jz(pol.sz_mean, probe_coefficients(probe(0.0), 4)) - 4.0) < 1e-14);
  CHECK(std::abs(ferromagnetic_signal(4, 4) - 4.0) < 1e-14);
  const auto heis = correlations(fixtures::ground(0.0, 6).state);
  for (double k : {0.0, 0.3, pi / 2, 2.9})
    for (double a : {0.0, 0.25, 0.7}) CHECK(std::abs(mean_effective_jz(heis.sz_mean, probe_coefficients(probe(k, a), 6))) < 1e-10);
  CHECK_THROWS_AS(mean_effective_jz(Vector::Zero(3), Vector::Zero(4)), DimensionError);
}

TEST_CASE("epsilon examples") {
  const auto prod = epsilon(correlations(fixtures::uniform_product(5, 1)), probe(0.6));
  CHECK(prod.epsilon == 0.0);
  CHECK(prod.x_out_variance == 0.5);

  const auto singlet = correlations(fixtures::two_site_singlet());
  const auto s = epsilon(singlet, probe(pi / 2));
  CHECK(std::abs(s.epsilon - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(s.x_out_variance - (0.5 + 4.0 / 3.0)) < 1e-14);

  int best = 0;
  double best_value = -1.0;
  for (int i = 1; i <= 64; ++i) {
    const double e = epsilon(heis12(), probe(pi * i / 64)).epsilon;
    if (e > best_value) {
      best_value = e;
      best = i;
    }
  }
  CHECK(best == 32);
}

TEST_CASE("homodyne statistics scale with kappa") {
  const auto pol = correlations(fixtures::uniform_product(4, 1));
  ProbeConfig p = probe(0.4);
  p.kappa = 2.5;
  p.input_variance = 0.7;
  const auto pt = epsilon(pol, p);
  CHECK(pt.x_out_mean == doctest::Approx(-2.5 * pt.mean_jz));
  CHECK(pt.x_out_variance == doctest::Approx(0.7 + 6.25 * pt.epsilon));
}

TEST_CASE("alpha-averaged signal") {
  const auto zero = correlations(fixtures::uniform_product(4, 0));
  CHECK(epsilon_alpha_averaged(zero, 0.9) == 0.0);
  const auto singlet = correlations(fixtures::two_site_singlet());
  CHECK(std::abs(epsilon_alpha_averaged(singlet, pi / 4) - 1.0 / 3.0) < 1e-14);
  for (double k : {pi / 6, pi / 4, pi / 3, pi / 2}) {
    CHECK(std::abs(epsilon_alpha_averaged(heis12(), k) - epsilon_alpha_grid_average(heis12(), k)) < 1e-9);
    CHECK(std::abs(epsilon_alpha_averaged(heis12(), k) - structure_factor(heis12(), 2 * k) / 2) < 1e-14);
  }
  const auto pol = correlations(fixtures::uniform_product(4, 1));
  CHECK_THROWS_AS(epsilon_alpha_averaged(pol, 0.5), PreconditionError);
  CHECK_THROWS_AS(epsilon_alpha_averaged(zero, 0.0), DomainError);
}

TEST_CASE("delta epsilon") {
  const auto& c = heis12();
  CHECK(delta_epsilon(c, 0.7, 0.3, 0.3) == 0.0);
  CHECK(std::abs(delta_epsilon(c, 0.7, 0.3, 0.3 + pi / 0.7)) < 1e-12);
  for (double k : {0.2, pi / 4, pi / 3, 1.3})
    for (double a1 : {0.0, 0.5, 1.25})
      CHECK(std::abs(delta_epsilon(c, k, a1, 0.5) - delta_epsilon_kernel(c.zz_connected, k, a1, 0.5)) < 1e-10);

  const auto crit = correlations(fixtures::ground(0.3 * pi, 12).state);
  CHECK(std::abs(delta_epsilon(crit, pi / 3, 1.25, 0.5) - c_epsilon(crit)) < 1e-10);
}

TEST_CASE("phase detector closed forms") {
  CHECK(c_epsilon(zero_set(6)) == 0.0);
  CHECK(d_epsilon(zero_set(6)) == 0.0);
  const auto pol = correlations(fixtures::uniform_product(4, 1));
  CHECK_THROWS_AS(c_epsilon(pol), PreconditionError);
  CHECK_THROWS_AS(d_epsilon(pol), PreconditionError);

  for (double theta : {-0.5 * pi, 0.0, 0.3 * pi}) {
    const auto c = correlations(fixtures::ground(theta, 12).state);
    CHECK(std::abs(c_epsilon(c) - delta_epsilon(c, pi / 3, 1.25, 0.5)) < 1e-10);
    // The closed form equals the (3/2, 1/2) ordering; the reverse ordering flips its sign.
    CHECK(std::abs(d_epsilon(c) - delta_epsilon(c, pi / 4, 1.5, 0.5)) < 1e-10);
    CHECK(std::abs(d_epsilon(c) + delta_epsilon(c, pi / 4, 0.5, 1.5)) < 1e-10);
  }

  const double d_dimer = d_epsilon(correlations(fixtures::ground(-0.5 * pi, 12).state));
  CHECK(std::abs(d_dimer) > std::abs(d_epsilon(heis12())));
}

TEST_CASE("dimer detector only sees odd m + n") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int l = 6;
    Matrix a(l, l);
    for (Index i = 0; i < l; ++i)
      for (Index j = 0; j < l; ++j) a(i, j) = g(rng);
    Matrix gz = a + a.transpose();
    // Remove row sums so the closed-form precondition holds.
    const Vector mean_row = gz.rowwise().sum() / l;
    gz -= mean_row * Vector::Ones(l).transpose() + Vector::Ones(l) * mean_row.transpose();
    gz.array() += mean_row.sum() / l;
    CorrelationSet c = zero_set(l);
    c.zz = gz;
    c.zz_connected = gz;
    REQUIRE(max_abs_row_sum(c) < 1e-10);

    double odd_only = 0.0;
    for (int m = 0; m < l; ++m)
      for (int n = 0; n < l; ++n)
        if ((m + n) % 2 == 1) odd_only -= std::sin(pi / 2 * (m + n)) * gz(m, n);
    CHECK(std::abs(d_epsilon(c) - odd_only / l) < 1e-12);
    CHECK(std::abs(d_epsilon(c) - delta_epsilon_kernel(gz, pi / 4, 1.5, 0.5)) < 1e-12);
    CHECK(std::abs(c_epsilon(c) - delta_epsilon_kernel(gz, pi / 3, 1.25, 0.5)) < 1e-12);
  }
}

TEST_CASE("signal invariants on random states") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto v = oracle::random_state(make_full_basis(5), seed);
    const auto c = correlations(v);
    for (double k : {0.1, 0.8, pi / 2, 2.7}) {
      for (double a : {0.0, 0.37, 1.5}) {
        const auto pt = epsilon(c, probe(k, a));
        CHECK(pt.epsilon >= -1e-10);
        CHECK(pt.x_out_variance >= 0.5 - 1e-10);
        CHECK(std::abs(pt.epsilon - epsilon(c, probe(k, a + pi / k)).epsilon) < 1e-12);
        CHECK(std::abs(epsilon_direct(c.zz_connected, k, a) - pt.epsilon) < 1e-12);
      }
    }
  }
}

TEST_CASE("zero-sector sum rule used by the closed forms") {
  CHECK(max_abs_row_sum(heis12()) < 1e-10);
  CHECK(max_abs_magnetization(heis12()) < 1e-10);
}

TEST_CASE("probe validation") {
  ProbeConfig p;
  p.kpd = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_NOTHROW(p.validate(false));
  p.kpd = 1.0;
  p.input_variance = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.input_variance = 0.5;
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(epsilon(heis12(), probe(0.0)), DomainError);
}
