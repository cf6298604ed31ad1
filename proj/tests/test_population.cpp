#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "terrasim/population.hpp"

using namespace terrasim;

namespace {

Schedule windows(double m0, double m1, double e0, double e1, double lm = 25, double le = 25) {
  Schedule s;
  s.morning_start = m0;
  s.morning_end = m1;
  s.evening_start = e0;
  s.evening_end = e1;
  s.lambda_m = lm;
  s.lambda_e = le;
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("pulse windows") {
  const Schedule s = windows(0.0, 0.2, 0.5, 0.7, 25, 30);
  auto p = pulse(s, 0.1);
  CHECK(p.morning == 25);
  CHECK(p.evening == 0);
  p = pulse(s, 0.9);
  CHECK(p.morning == 0);
  CHECK(p.evening == 0);
  p = pulse(s, 3.55);
  CHECK(p.morning == 0);
  CHECK(p.evening == 30);
  // Half-open windows.
  CHECK(pulse(s, 0.0).morning == 25);
  CHECK(pulse(s, 0.5).evening == 30);
  CHECK(pulse(s, 0.7).evening == 0);
}

TEST_CASE("pulse is periodic") {
  const Schedule s;
  for (int k = 0; k < 200; ++k) {
    const double t = 0.0037 + k * 0.005;
    const auto a = pulse(s, t);
    const auto b = pulse(s, t + 4.0);
    CHECK(a.morning == b.morning);
    CHECK(a.evening == b.evening);
  }
}

TEST_CASE("schedule validation") {
  CHECK_NOTHROW(Schedule{}.validate());
  CHECK_NOTHROW(windows(0, 0, 0.5, 0.5).validate());
  CHECK_THROWS_AS(windows(0.0, 0.6, 0.5, 0.7).validate(), ValidationError);
  CHECK_THROWS_AS(windows(0.3, 0.2, 0.5, 0.7).validate(), ValidationError);
  CHECK_THROWS_AS(windows(0.0, 0.2, 0.5, 1.2).validate(), ValidationError);
  CHECK_THROWS_AS(windows(0.0, 0.2, 0.5, 0.7, 0.0).validate(), ValidationError);
}

TEST_CASE("employment attractor") {
  const Grid g(1.0, 32);
  std::mt19937_64 rng(5);

  SUBCASE("no jobs leaves P0 unchanged") {
    const Field p0 = test::random_field(g, rng, 0.0, 1.0);
    const Field a = employment_attractor(p0, Field(g), 5.0, g);
    for (Index k = 0; k < g.size(); ++k) CHECK(a[k] == doctest::Approx(p0[k]).epsilon(1e-15));
  }
  SUBCASE("mass equals P0 mass") {
    for (int trial = 0; trial < 50; ++trial) {
      const Field p0 = test::random_field(g, rng, 0.0, 2.0);
      const Field e = test::random_sparse_field(g, rng, 0.2);
      const Field a = employment_attractor(p0, e, 1.5 + trial, g);
      CHECK(rel(integrate(g, a), integrate(g, p0)) <= 1e-12);
    }
  }
  SUBCASE("zero population gives zero attractor") {
    const Field e = test::random_field(g, rng, 0.1, 1.0);
    const Field a = employment_attractor(Field(g), e, 5.0, g);
    CHECK(a.max() == 0.0);
  }
  SUBCASE("both zero is an error") {
    CHECK_THROWS_AS(employment_attractor(Field(g), Field(g), 5.0, g), ValidationError);
  }
}

TEST_CASE("home attractor is P0") {
  const Grid g(1.0, 16);
  std::mt19937_64 rng(6);
  const Field p0 = test::random_field(g, rng, 0.0, 1.0);
  const Field a = home_attractor(p0);
  CHECK(a.values() == p0.values());
  CHECK(integrate(g, a) == integrate(g, p0));
  CHECK(home_attractor(Field(g)).max() == 0.0);
}

TEST_CASE("commute substep") {
  const Grid g(1.0, 16);
  std::mt19937_64 rng(7);
  const Field p = test::random_field(g, rng, 0.0, 1.0);
  const Field ae = test::random_field(g, rng, 0.0, 1.0);
  const Field ap = test::random_field(g, rng, 0.0, 1.0);

  CHECK(commute_substep(p, ae, ap, 0.0, 0.0, 0.01).values() == p.values());
  CHECK(commute_substep(ap, ae, ap, 0.0, 25.0, 0.01).values() == ap.values());
  const Field full = commute_substep(p, ae, ap, 40.0, 0.0, 1.0 / 40.0);
  for (Index k = 0; k < g.size(); ++k) CHECK(full[k] == doctest::Approx(ae[k]).epsilon(1e-15));

  SUBCASE("convex combination keeps P non-negative") {
    const Field out = commute_substep(p, ae, ap, 30.0, 20.0, 0.02);
    CHECK(out.min() >= 0.0);
  }
  SUBCASE("mass recursion") {
    const double dt = 0.004;
    const double tm = 25.0;
    const Field out = commute_substep(p, ae, ap, tm, 0.0, dt);
    const double m = integrate(g, p);
    const double m0 = integrate(g, ae);
    CHECK(integrate(g, out) == doctest::Approx(m + dt * tm * (m0 - m)).epsilon(1e-13));
  }
  SUBCASE("convexity guard") {
    CHECK_THROWS_AS(commute_substep(p, ae, ap, 60.0, 60.0, 0.01), StabilityError);
  }
}

TEST_CASE("population day") {
  const Grid g(1.0, 32);
  const Params params;
  const Field p0 = gaussian_mixture<double>(
      g, {{Eigen::Vector2d(-0.45, 0.3), 1.0, 0.25}, {Eigen::Vector2d(0.4, 0.35), 1.0, 0.25}});
  const Field e = gaussian_mixture<double>(g, {{Eigen::Vector2d(0.05, 0.05), 1.2, 0.18}});

  SUBCASE("empty windows freeze P") {
    const auto d = run_population_day(p0, e, p0, windows(0, 0, 0.5, 0.5), params, g, 100);
    CHECK(d.midday.values() == p0.values());
    CHECK(d.end.values() == p0.values());
  }
  SUBCASE("odd substeps rejected") {
    CHECK_THROWS_AS(run_population_day(p0, e, p0, Schedule{}, params, g, 101), ValidationError);
  }
  SUBCASE("midday relaxes toward the employment attractor") {
    // lambda_m * window = 5; the Euler iterate over 40 steps with weight
    // dt * lambda = 0.125 contracts the gap by (1 - 0.125)^40 per cell.
    const int steps = 200;
    const auto d = run_population_day(p0, e, p0, Schedule{}, params, g, steps);
    const Field ae = employment_attractor(p0, e, params.alpha, g);
    const Index c = g.nearest_cell(Eigen::Vector2d(0.05, 0.05));
    const double gap0 = p0[c] - ae[c];
    const double contraction = std::pow(1.0 - 0.125, 40);
    CHECK(std::abs(d.midday[c] - ae[c]) <= std::exp(-5.0) * std::abs(gap0) + 1e-3 * std::abs(gap0));
    for (Index k = 0; k < g.size(); ++k) {
      const double expect = ae[k] + contraction * (p0[k] - ae[k]);
      CHECK(std::abs(d.midday[k] - expect) <= 1e-12 * (std::abs(expect) + 1.0));
    }
    // Evening: gap from midday toward P0 contracts over another 40 steps.
    for (Index k = 0; k < g.size(); ++k) {
      const double expect = p0[k] + contraction * (d.midday[k] - p0[k]);
      CHECK(std::abs(d.end[k] - expect) <= 1e-12 * (std::abs(expect) + 1.0));
    }
  }
  SUBCASE("samples conserve mass") {
    const auto d = run_population_day(p0, e, p0, Schedule{}, params, g, 200);
    const double m0 = integrate(g, p0);
    CHECK(rel(integrate(g, d.start), m0) <= 1e-10);
    CHECK(rel(integrate(g, d.midday), m0) <= 1e-10);
    CHECK(rel(integrate(g, d.end), m0) <= 1e-10);
    CHECK(d.midday.min() >= 0.0);
  }
  SUBCASE("identical inputs give identical days") {
    const auto a = run_population_day(p0, e, p0, Schedule{}, params, g, 200);
    const auto b = run_population_day(p0, e, p0, Schedule{}, params, g, 200);
    CHECK(a.midday.values() == b.midday.values());
    CHECK(a.end.values() == b.end.values());
  }
  SUBCASE("mass conserved over 100 days") {
    Field p = p0;
    const double m0 = integrate(g, p0);
    double worst = 0;
    for (int day = 0; day < 100; ++day) {
      auto d = run_population_day(p, e, p0, Schedule{}, params, g, 200);
      worst = std::max(worst, rel(integrate(g, d.midday), m0));
      p = d.end;
      CHECK(p.min() >= 0.0);
    }
    CHECK(worst <= 1e-10);
  }
}
