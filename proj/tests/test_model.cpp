#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "spinprobe/model.hpp"
#include "spinprobe/errors.hpp"

using namespace spinprobe;
constexpr double pi = std::numbers::pi;

TEST_CASE("hubbard_to_spin examples") {
  auto a = hubbard_to_spin({1.0, 0.0, 1.0});
  CHECK(a.theta == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(a.j_scale == doctest::Approx(2.0 * std::sqrt(2.0)));

  auto b = hubbard_to_spin({1.0, 0.5, 1.0});
  CHECK(b.theta == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(std::isinf(b.j_scale));

  auto c = hubbard_to_spin({1.0, 0.25, 0.1});
  CHECK(std::abs(c.theta - std::atan2(1.0, 0.5)) < 1e-14);
  CHECK(std::abs(c.theta - 1.10715) < 1e-5);
  CHECK(std::abs(c.j_scale - 0.02 / 1.25 * std::sqrt(5.0)) < 1e-14);
  CHECK(std::abs(c.j_scale - 0.035777) < 1e-6);
}

TEST_CASE("hubbard_to_spin invariants") {
  for (double u0 : {0.1, 1.0, 7.5}) {
    for (double t : {0.01, 0.3, 2.0}) {
      CHECK(hubbard_to_spin({u0, 0.0, t}).theta == pi / 4);
      for (double u2 : {-0.09, -0.05, 0.02, 0.3, 1.0, 4.0}) {
        const auto s = hubbard_to_spin({u0, u2, t});
        CHECK(s.j_scale > 0.0);
        CHECK(s.theta > 0.0);
        CHECK(s.theta < pi);
        CHECK(std::abs(std::tan(s.theta) - u0 / (u0 - 2 * u2)) < 1e-9 * (1 + std::abs(std::tan(s.theta))));
      }
    }
  }
}

TEST_CASE("hubbard_to_spin rejects unphysical couplings") {
  CHECK_THROWS_AS(hubbard_to_spin({0.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(hubbard_to_spin({-1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(hubbard_to_spin({1.0, -1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(hubbard_to_spin({1.0, -2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(hubbard_to_spin({1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(hubbard_to_spin({std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0}), DomainError);
}

TEST_CASE("classify_phase examples") {
  CHECK(classify_phase(0.0).label == PhaseLabel::Haldane);
  CHECK(classify_phase(0.3 * pi).label == PhaseLabel::Critical);
  CHECK(classify_phase(-0.5 * pi).label == PhaseLabel::Dimer);
  CHECK(classify_phase(0.75 * pi).label == PhaseLabel::Ferromagnetic);
  CHECK(classify_phase(-0.9 * pi).label == PhaseLabel::Ferromagnetic);
  CHECK(classify_phase(pi).label == PhaseLabel::Ferromagnetic);
  CHECK(classify_phase(-pi).label == PhaseLabel::Ferromagnetic);
  CHECK_FALSE(classify_phase(pi).transition_point);
  CHECK_FALSE(classify_phase(-pi).transition_point);
  CHECK_FALSE(classify_phase(0.0).transition_point);
}

TEST_CASE("classify_phase boundaries belong to the phase at larger theta") {
  struct Case {
    double theta;
    PhaseLabel label;
  };
  for (const Case& c : {Case{-0.75 * pi, PhaseLabel::Dimer}, Case{-0.25 * pi, PhaseLabel::Haldane},
                        Case{0.25 * pi, PhaseLabel::Critical}, Case{0.5 * pi, PhaseLabel::Ferromagnetic}}) {
    const auto r = classify_phase(c.theta);
    CHECK(r.label == c.label);
    CHECK(r.transition_point);
  }
}

TEST_CASE("classify_phase is piecewise constant on a fine grid") {
  const auto expected = [](double t) {
    if (t > pi / 2 || t < -0.75 * pi) return PhaseLabel::Ferromagnetic;
    if (t > pi / 4) return PhaseLabel::Critical;
    if (t > -pi / 4) return PhaseLabel::Haldane;
    return PhaseLabel::Dimer;
  };
  for (int i = 0; i < 997; ++i) {
    const double t = -pi + 2 * pi * (i + 0.5) / 997.0;
    CHECK(classify_phase(t).label == expected(t));
  }
  CHECK_THROWS_AS(classify_phase(3.2), DomainError);
  CHECK_THROWS_AS(classify_phase(-3.2), DomainError);
}

TEST_CASE("phase labels and boundaries render") {
  CHECK(to_string(PhaseLabel::Haldane) == "haldane");
  CHECK(to_string(PhaseLabel::Dimer) == "dimer");
  CHECK(to_string(Boundary::Periodic) == "periodic");
  CHECK(parse_boundary("open") == Boundary::Open);
  CHECK_THROWS_AS(parse_boundary("twisted"), DomainError);
}

TEST_CASE("ModelParams validation and commensurability warning") {
  ModelParams p(0.1, 12);
  CHECK(p.length() == 12);
  CHECK(p.boundary() == Boundary::Open);
  CHECK(p.j_scale() == 1.0);
  CHECK_FALSE(p.warning().has_value());
  CHECK(ModelParams(0.1, 8).warning().has_value());
  CHECK_THROWS_AS(ModelParams(3.5, 6), DomainError);
  CHECK_THROWS_AS(ModelParams(0.0, 1), DomainError);
  CHECK_THROWS_AS(ModelParams(0.0, 6, Boundary::Open, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.0, 6, Boundary::Open, -1.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.0, 17), SizeGuardError);
  CHECK_NOTHROW(ModelParams(pi, 2));
  CHECK_NOTHROW(ModelParams(-pi, 16));
}
