#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "jumpconj/verification.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace jumpconj;
using Catch::Matchers::WithinAbs;

namespace {

JumpMap slopes_map(double lam, double mu, double v) {
  return fixtures::affine_map(0, 1, 0.5, 0, lam, 1 - mu, mu, v, Family::IncreasingA);
}

}  // namespace

TEST_CASE("example 1 verifies", "[verification]") {
  const Conjugacy phi = build_conjugacy(fixtures::ex1_f(), fixtures::ex1_g());
  const auto r = verify_conjugacy(phi, 10000, 1e-9);
  CHECK(r.passed);
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.monotonicity_ok);
  CHECK(r.endpoint_values_ok);
  CHECK(r.t_maps_to_s);
  CHECK(r.grid_size > 9000);
  CHECK(r.surjectivity_max_gap <= 1e-12);
}

TEST_CASE("a map conjugated to itself has no residual", "[verification]") {
  for (const JumpMap& f : {fixtures::ex1_f(), fixtures::ex2_f()}) {
    const Conjugacy phi = build_conjugacy(f, f);
    const auto r = verify_conjugacy(phi, 10000, 1e-9);
    CHECK(r.passed);
    CHECK(r.max_residual <= 1e-15);
  }
}

TEST_CASE("a corrupted initial homeomorphism is caught by the orbit pins", "[verification]") {
  const JumpMap f = fixtures::ex1_f(), g = fixtures::ex1_g();
  InitialHomeo init = default_initial_homeo(f, g, Orientation::Increasing);
  init.pieces[0].map =
      MonotoneInterpolant::piecewise_affine({{0.125, 0.125}, {0.1875, 0.3125 + 2e-3}, {0.25, 0.5}});
  BuildOptions loose;
  loose.check_init_pins = false;
  const Conjugacy phi = build_conjugacy(f, g, init, loose);
  const auto r = verify_conjugacy(phi, 10000, 1e-9);
  // The pin at 3/16 is off by 2e-3 forward and by about 2e-3 / 3 backward.
  CHECK(r.orbit_pin_max_error > 6e-4);
  CHECK_FALSE(r.passed);
}

TEST_CASE("inverse conjugacies verify against the swapped pair", "[verification]") {
  for (auto [f, g] : {std::pair{fixtures::ex1_f(), fixtures::ex1_g()}, std::pair{fixtures::ex2_f(), fixtures::ex2_g()}}) {
    const InverseConjugacy inv(build_conjugacy(f, g));
    VerifyParams p;
    p.grid_n = 1000;
    p.tol = 1e-7;
    const auto r = verify_conjugacy(inv, p);
    CHECK(r.passed);
    CHECK(r.max_residual <= 1e-7);
  }
}

TEST_CASE("seeded grids are reproducible", "[verification]") {
  const Conjugacy phi = build_conjugacy(fixtures::ex2_f(), fixtures::ex2_g());
  VerifyParams p;
  p.grid_n = 2000;
  p.seed = 5;
  p.keep_samples = true;
  const auto r1 = verify_conjugacy(phi, p);
  const auto r2 = verify_conjugacy(phi, p);
  CHECK(r1.passed);
  REQUIRE(r1.samples.size() == r2.samples.size());
  for (std::size_t i = 0; i < r1.samples.size(); ++i) CHECK(r1.samples[i].x == r2.samples[i].x);
  CHECK_THROWS_AS(verify_conjugacy(phi, 1, 1e-9), ArgumentError);
}

TEST_CASE("finite differences", "[verification]") {
  const Conjugacy id = build_conjugacy(fixtures::ex1_f(), fixtures::ex1_f());
  CHECK_THAT(finite_difference_derivative(id, 0.3, 1e-6), WithinAbs(1.0, 1e-9));
  CHECK_THROWS_AS(finite_difference_derivative(id, 0.3, 0.0), ArgumentError);

  const Conjugacy phi = build_conjugacy(fixtures::ex1_f(), fixtures::ex1_g());
  CHECK_THAT(finite_difference_derivative(phi, 0.2, 1e-7), WithinAbs(3.0, 1e-5));
  double prev = finite_difference_derivative(phi, 0.0, std::ldexp(1.0, -8));
  for (int k = 9; k <= 20; ++k) {
    const double d = finite_difference_derivative(phi, 0.0, std::ldexp(1.0, -k));
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("smoothness on an equal-slope pair", "[verification][smoothness]") {
  const JumpMap f = fixtures::smooth_f(), g = fixtures::smooth_g();
  InitSpec spec;
  spec.kind = InterpolantKind::MonotoneCubic;
  spec.endpoint_slopes = matched_endpoint_slopes(f, g, 3.0);
  const auto init = make_initial_homeo(f, g, Orientation::Increasing, spec);
  const auto r = check_smoothness(f, g, init);
  for (const auto& [name, v] : r.condition_a_residuals) {
    INFO(name);
    CHECK(v <= 1e-12);
  }
  CHECK(r.condition_a_residuals.size() == 3);
  CHECK(r.all_cauchy);
  CHECK(r.constancy_spread <= 1e-8);
  CHECK_THAT(r.L1_estimate, WithinAbs(3.0, 1e-10));
  CHECK_THAT(r.L2_estimate, WithinAbs(3.0, 1e-10));
  CHECK(std::abs(r.fd_derivative_at_a - r.L1_estimate) <= 1e-4);
  CHECK(r.product_samples.size() == 128);
}

TEST_CASE("identity conjugacy is C1 with unit products", "[verification][smoothness]") {
  const JumpMap f = fixtures::smooth_f();
  const auto init = default_initial_homeo(f, f, Orientation::Increasing);
  const auto r = check_smoothness(f, f, init);
  for (const auto& [name, v] : r.condition_a_residuals) CHECK(v == 0.0);
  CHECK(r.L1_estimate == 1.0);
  CHECK(r.L2_estimate == 1.0);
  CHECK(r.constancy_spread == 0.0);
}

TEST_CASE("condition (a) violations are reported", "[verification][smoothness]") {
  const JumpMap f = fixtures::smooth_f(), g = fixtures::smooth_g();
  InitSpec spec;
  spec.kind = InterpolantKind::MonotoneCubic;
  spec.endpoint_slopes = matched_endpoint_slopes(f, g, 3.0);
  spec.endpoint_slopes[0].lo = 3.1;
  const auto init = make_initial_homeo(f, g, Orientation::Increasing, spec);
  const auto r = check_smoothness(f, g, init);
  CHECK_THAT(r.condition_a_residuals.at("left_endpoint_slope"), WithinAbs(0.1, 1e-12));
  CHECK(r.condition_a_residuals.at("slope_match_at_t") <= 1e-12);
}

TEST_CASE("example 1 products vanish", "[verification][smoothness]") {
  const JumpMap f = fixtures::ex1_f(), g = fixtures::ex1_g();
  const auto r = check_smoothness(f, g, default_initial_homeo(f, g, Orientation::Increasing), 60, 64);
  CHECK(r.L1_estimate <= 1e-15);
  CHECK(r.L1_estimate >= 0.0);
  CHECK(r.all_cauchy);
}

TEST_CASE("Cauchy flag agrees with the slope-ratio predicate", "[verification][smoothness][property]") {
  const double lam = 0.4;
  for (double rl : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    for (double rr : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      const JumpMap f = slopes_map(lam, lam, 0.4);
      const JumpMap g = slopes_map(lam * rl, lam * rr, 0.45);
      REQUIRE(validate_jump_map(g).ok());
      const auto r = check_smoothness(f, g, default_initial_homeo(f, g, Orientation::Increasing));
      const bool predicate = rl > 0 && rl <= 1 && rr > 0 && rr <= 1;
      INFO("ratios " << rl << " " << rr);
      CHECK(r.all_cauchy == predicate);
    }
  }
}

TEST_CASE("smoothness scope is enforced", "[verification][smoothness]") {
  const JumpMap f = fixtures::ex1_f(), g = fixtures::ex1_g();
  const auto init = default_initial_homeo(f, g, Orientation::Increasing);
  // f(t) > t, g(s) > s
  const JumpMap f2 = f.with_value_at_t(0.4), g2 = g.with_value_at_t(0.6);
  CHECK_THROWS_AS(check_smoothness(f2, g2, default_initial_homeo(f2, g2, Orientation::Increasing)), ScopeError);
  CHECK_THROWS_AS(check_smoothness(fixtures::ex2_f(), fixtures::ex2_g(),
                                   default_initial_homeo(fixtures::ex2_f(), fixtures::ex2_g(), Orientation::Increasing)),
                  ScopeError);
  const JumpMap ga = g.with_value_at_t(0.125);
  CHECK_THROWS_AS(check_smoothness(fixtures::ex1_f_attains(), ga,
                                   default_initial_homeo(fixtures::ex1_f_attains(), ga, Orientation::Increasing)),
                  ScopeError);
  const JumpMap fc(Interval(0, 1), 0.25, Branch::callable([](double x) { return x / 2; }, Interval(0, 0.25)),
                   f.right(), 3.0 / 16, Family::IncreasingA);
  CHECK_THROWS_AS(check_smoothness(fc, g, init), NonDifferentiableBranch);
  CHECK_THROWS_AS(check_smoothness(f, g, init, 5, 64), ArgumentError);
}
