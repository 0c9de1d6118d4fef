#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jumpconj/interval_map.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace jumpconj;
using Catch::Matchers::WithinAbs;

TEST_CASE("interval rejects empty and non-finite ranges", "[interval_map]") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(Interval(2.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), ArgumentError);
  CHECK(Interval(0.0, 2.0).width() == 2.0);
}

TEST_CASE("example maps are admitted into their families", "[interval_map]") {
  const auto r1 = validate_jump_map(fixtures::ex1_f());
  CHECK(r1.ok());
  CHECK(validate_jump_map(fixtures::ex1_g()).ok());
  const auto r2 = validate_jump_map(fixtures::ex2_f());
  CHECK(r2.ok());
  REQUIRE(r2.limit_order);
  // f(t+0) < f(t) < f(t-0) for the decreasing example.
  CHECK(*r2.limit_order == LimitOrder::RightBelowLeft);
  CHECK(fixtures::ex2_f()(0.0) == 1.0);
  CHECK(fixtures::ex2_f()(1.0) == 0.0);
  CHECK(validate_jump_map(fixtures::ex2_g()).ok());
}

TEST_CASE("identity with a fake jump is rejected", "[interval_map]") {
  const JumpMap m = fixtures::affine_map(0, 1, 0.5, 0, 1, 0, 1, 0.5, Family::IncreasingA);
  const auto r = validate_jump_map(m);
  CHECK_FALSE(r.ok());
  CHECK(r.has(ViolationKind::JumpAbsent));
  CHECK_THROWS_AS(require_valid(m), InvalidMap);
}

TEST_CASE("validation reports violations with witnesses", "[interval_map]") {
  SECTION("endpoint not fixed") {
    const JumpMap m = fixtures::affine_map(0, 1, 0.25, 0.01, 0.5, 0.5, 0.5, 0.1, Family::IncreasingA);
    const auto r = validate_jump_map(m);
    REQUIRE(r.has(ViolationKind::EndpointViolation));
  }
  SECTION("non-monotone polynomial branch") {
    const JumpMap m(Interval(0, 1), 0.5, Branch::polynomial({0.0, 1.0, -1.5}, Interval(0, 0.5)),
                    Branch::affine(0.5, 0.5, Interval(0.5, 1)), 0.3, Family::IncreasingA);
    const auto r = validate_jump_map(m);
    REQUIRE(r.has(ViolationKind::MonotonicityViolation));
    for (const auto& v : r.violations) {
      if (v.kind == ViolationKind::MonotonicityViolation) CHECK(v.witness.size() >= 2);
    }
  }
  SECTION("value outside the bracket") {
    const JumpMap m = fixtures::ex1_f().with_value_at_t(0.7);
    CHECK(validate_jump_map(m).has(ViolationKind::BracketViolation));
  }
  SECTION("value equal to t") {
    const JumpMap m = fixtures::ex1_f().with_value_at_t(0.25);
    CHECK(validate_jump_map(m).has(ViolationKind::ValueAtJump));
  }
  SECTION("family B with a repelling period-two orbit") {
    // Slopes -2 on both sides make f^2 expand away from the endpoints.
    const JumpMap m = fixtures::affine_map(0, 1, 0.5, 1, -2, 2, -2, 0.5 + 0.25, Family::DecreasingB);
    CHECK_FALSE(validate_jump_map(m).ok());
  }
}

TEST_CASE("one-sided limits of the examples", "[interval_map]") {
  CHECK(one_sided_limits(fixtures::ex1_f()) == std::pair{0.125, 0.625});
  CHECK(one_sided_limits(fixtures::ex1_g()) == std::pair{0.125, 0.875});
  const auto [l, r] = one_sided_limits(fixtures::ex2_f());
  CHECK_THAT(l, WithinAbs(57.0 / 80, 1e-15));
  CHECK_THAT(r, WithinAbs(23.0 / 80, 1e-15));
}

TEST_CASE("eval_map follows the branch convention", "[interval_map]") {
  const JumpMap f = fixtures::ex1_f();
  CHECK(eval_map(f, 0.25) == 3.0 / 16);
  CHECK(eval_map(f, 0.0) == 0.0);
  CHECK(eval_map(f, 0.5) == 0.75);
  CHECK_THAT(eval_map(fixtures::ex2_f(), 0.75), WithinAbs(23.0 / 160, 1e-15));
  CHECK_THROWS_AS(eval_map(f, 1.5), DomainError);
  CHECK_THROWS_AS(eval_map(f, -1e-9), DomainError);
}

TEST_CASE("branch inverse and derivative", "[interval_map]") {
  const Branch half = Branch::affine(0, 0.5, Interval(0, 0.25));
  CHECK(branch_inverse(half, 1.0 / 16, 1e-13) == 0.125);
  const Branch dec = Branch::affine(0.125, -0.125, Interval(0.25, 1));
  CHECK(branch_inverse(dec, 3.0 / 32, 1e-13) == 0.25);
  const Branch sq = Branch::polynomial({0, 0, 1}, Interval(0.1, 0.5));
  const double x = branch_inverse(sq, 0.09, 1e-13);
  CHECK(std::abs(sq(x) - 0.09) <= 1e-13);
  CHECK_THAT(x, WithinAbs(0.3, 1e-12));
  CHECK_THROWS_AS(branch_inverse(sq, 0.5, 1e-13), RangeError);

  CHECK(branch_derivative(half, 0.1) == 0.5);
  CHECK(branch_derivative(dec, 0.7) == -0.125);
  CHECK_THAT(branch_derivative(sq, 0.3), WithinAbs(0.6, 1e-15));
  const Branch cb = Branch::callable([](double v) { return v / 2; }, Interval(0, 1));
  CHECK_THROWS_AS(branch_derivative(cb, 0.5), NonDifferentiableBranch);
  CHECK_THAT(branch_inverse(cb, 0.2, 1e-14), WithinAbs(0.4, 1e-13));
}

TEST_CASE("jump map checks its structure", "[interval_map]") {
  const Branch l = Branch::affine(0, 0.5, Interval(0, 0.25));
  const Branch r = Branch::affine(0.5, 0.5, Interval(0.25, 1));
  CHECK_THROWS_AS(JumpMap(Interval(0, 1), 1.0, l, r, 0.1, Family::IncreasingA), ArgumentError);
  CHECK_THROWS_AS(JumpMap(Interval(0, 1), 0.5, l, r, 0.1, Family::IncreasingA), ArgumentError);
  CHECK_THROWS_AS(JumpMap(Interval(0, 1), 0.25, l, r, std::nan(""), Family::IncreasingA), ArgumentError);
}

TEST_CASE("classify_jump", "[interval_map]") {
  CHECK(classify_jump(fixtures::ex1_f()) == JumpKind::Interior);
  CHECK(classify_jump(fixtures::ex1_f_attains()) == JumpKind::AttainsLeft);
  CHECK(classify_jump(fixtures::ex1_f().with_value_at_t(0.625)) == JumpKind::AttainsRight);
  CHECK(classify_jump(fixtures::ex2_g()) == JumpKind::Interior);
  CHECK(classify_jump(fixtures::ex2_f().with_value_at_t(23.0 / 80)) == JumpKind::AttainsRight);
}

TEST_CASE("decide_pair on the examples", "[interval_map]") {
  const auto d1 = decide_pair(fixtures::ex1_f(), fixtures::ex1_g());
  CHECK(d1.conjugate);
  CHECK(d1.orientation == Orientation::Increasing);
  CHECK(d1.case_pair == CasePair::C1);

  const auto d2 = decide_pair(fixtures::ex1_f(), fixtures::ex1_f_attains());
  CHECK_FALSE(d2.conjugate);
  CHECK_FALSE(d2.orientation);

  const auto d3 = decide_pair(fixtures::ex2_f(), fixtures::ex2_g());
  CHECK(d3.conjugate);
  CHECK(d3.orientation == Orientation::Increasing);
  CHECK(d3.case_pair == CasePair::D1);

  CHECK_THROWS_AS(decide_pair(fixtures::ex1_f(), fixtures::ex2_f()), NotComparable);

  // f(t) > t on one side only flips the orientation.
  const auto d4 = decide_pair(fixtures::ex1_f(), fixtures::ex1_g().with_value_at_t(0.6));
  CHECK(d4.orientation == Orientation::Decreasing);
  const auto d5 = decide_pair(fixtures::ex1_f_attains(), fixtures::ex1_g().with_value_at_t(0.875));
  CHECK(d5.case_pair == CasePair::C2);
  CHECK(d5.orientation == Orientation::Decreasing);
}

TEST_CASE("classification is invariant under affine rescaling", "[interval_map][property]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Family fam = i % 2 ? Family::IncreasingA : Family::DecreasingB;
    const JumpKind kind = gen::random_kind(rng);
    const JumpMap m = gen::random_affine_map(fam, kind, rng);
    REQUIRE(validate_jump_map(m).ok());
    REQUIRE(classify_jump(m) == kind);
    // h(x) = p + q x; conjugated branches are p + q c0 - c1 p + c1 y.
    const double p = gen::uniform(rng, -5, 5);
    const double q = gen::uniform(rng, 0.01, 100);
    auto conj = [&](const Branch& br, Interval dom) {
      const double c0 = br.coefficients()[0];
      const double c1 = br.coefficients()[1];
      return Branch::affine(p + q * c0 - c1 * p, c1, dom);
    };
    const double a = p + q * m.a(), b = p + q * m.b(), t = p + q * m.t();
    const JumpMap h(Interval(a, b), t, conj(m.left(), Interval(a, t)), conj(m.right(), Interval(t, b)),
                    p + q * m.value_at_t(), fam);
    CHECK(classify_jump(h) == kind);
  }
}

TEST_CASE("decide_pair is symmetric and limits bracket the value", "[interval_map][property]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Family fam = i % 2 ? Family::IncreasingA : Family::DecreasingB;
    const JumpMap f = gen::random_affine_map(fam, gen::random_kind(rng), rng);
    const JumpMap g = gen::random_affine_map(fam, gen::random_kind(rng), rng);
    const auto d = decide_pair(f, g);
    const auto e = decide_pair(g, f);
    CHECK(d.conjugate == e.conjugate);
    CHECK(d.orientation == e.orientation);
    const auto [lo, hi] = one_sided_limits(f);
    CHECK(f.value_at_t() >= std::min(lo, hi));
    CHECK(f.value_at_t() <= std::max(lo, hi));
  }
}

TEST_CASE("branches of valid maps are monotone with the family's sign", "[interval_map][property]") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Family fam = i % 2 ? Family::IncreasingA : Family::DecreasingB;
    const JumpMap m = gen::random_affine_map(fam, JumpKind::Interior, rng);
    for (const Branch* br : {&m.left(), &m.right()}) {
      const double lo = br->domain().lo(), hi = br->domain().hi();
      double prev = (*br)(lo);
      for (int k = 1; k <= 50; ++k) {
        const double v = (*br)(lo + (hi - lo) * k / 50);
        CHECK((fam == Family::IncreasingA ? v > prev : v < prev));
        prev = v;
      }
    }
  }
}
