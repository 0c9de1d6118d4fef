#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jumpconj/errors.hpp"

namespace jumpconj {

enum class Family { IncreasingA, DecreasingB };
enum class Side { Left, Right };
enum class Orientation { Increasing, Decreasing };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

std::string_view to_string(Family f);
std::string_view to_string(Side s);
std::string_view to_string(Orientation o);

/// Closed interval [lo, hi] with lo < hi.
class Interval {
public:
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  bool contains(double x) const { return x >= lo_ && x <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  double lo_;
  double hi_;
};

/// Relative comparison |x - y| <= tol * max(1, |x|, |y|).
bool nearly_equal(double x, double y, double tol);

/// One continuous, strictly monotone piece of a jump map, evaluable on the
/// closure of its domain.
class Branch {
public:
  enum class Kind { Affine, Polynomial, Callable };

  /// intercept + slope * x
  static Branch affine(double intercept, double slope, Interval domain);
  /// Ascending-degree coefficients.
  static Branch polynomial(std::vector<double> coeffs, Interval domain);
  /// Black-box branch. Evaluation, inversion and validation work; derivatives
  /// (and hence smoothness checks) do not.
  static Branch callable(std::function<double(double)> fn, Interval domain);

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  const Interval& domain() const { return domain_; }

  /// Unchecked evaluation; callers keep x on the closed domain.
  double operator()(double x) const;

  bool has_derivative() const { return kind_ != Kind::Callable; }
  double derivative(double x) const;

  /// Values at the domain endpoints decide the direction.
  bool increasing() const;
  /// Closed image of the closed domain.
  Interval image() const;

  /// x on the closed domain with |b(x) - y| <= tol * max(1, |y|). Affine
  /// branches invert in closed form, others by bisection. Values within that
  /// tolerance outside the image are clamped; anything further throws RangeError.
  double inverse(double y, double tol) const;

  Branch with_domain(Interval domain) const;

private:
  Branch(Kind kind, std::vector<double> coeffs, std::function<double(double)> fn,
         Interval domain);

  Kind kind_;
  std::vector<double> coeffs_;
  std::function<double(double)> fn_;
  Interval domain_;
};

double branch_inverse(const Branch& b, double y, double tol);
double branch_derivative(const Branch& b, double x);

/// Strictly monotone map on [a, b] with a single jump at t.
class JumpMap {
public:
  /// Checks structure only: a < t < b, finite values, branch domains
  /// [a, t] and [t, b]. Family membership is `validate_jump_map`'s job.
  JumpMap(Interval domain, double t, Branch left, Branch right, double value_at_t,
          Family family);

  const Interval& domain() const { return domain_; }
  double a() const { return domain_.lo(); }
  double b() const { return domain_.hi(); }
  double t() const { return t_; }
  const Branch& left() const { return left_; }
  const Branch& right() const { return right_; }
  const Branch& branch(Side s) const { return s == Side::Left ? left_ : right_; }
  double value_at_t() const { return value_at_t_; }
  Family family() const { return family_; }

  /// f(t-0) or f(t+0).
  double limit(Side s) const { return branch(s)(t_); }

  /// Throws DomainError outside [a, b].
  double operator()(double x) const;

  JumpMap with_value_at_t(double v) const;

private:
  Interval domain_;
  double t_;
  Branch left_;
  Branch right_;
  double value_at_t_;
  Family family_;
};

double eval_map(const JumpMap& m, double x);

/// (f(t-0), f(t+0))
std::pair<double, double> one_sided_limits(const JumpMap& m);

enum class JumpKind { Interior, AttainsLeft, AttainsRight };
std::string_view to_string(JumpKind k);

inline constexpr double kDefaultEqTol = 1e-12;

/// Equality with a one-sided limit is tested relative to the jump size, so the
/// result does not change under affine rescaling of the domain.
JumpKind classify_jump(const JumpMap& m, double eq_tol = kDefaultEqTol);

enum class CasePair { C1, C2, D1, D2, Mixed };
std::string_view to_string(CasePair c);

struct PairDecision {
  bool conjugate = false;
  std::optional<Orientation> orientation;
  CasePair case_pair = CasePair::Mixed;
  JumpKind f_kind = JumpKind::Interior;
  JumpKind g_kind = JumpKind::Interior;
};

/// Throws NotComparable when the families differ.
PairDecision decide_pair(const JumpMap& f, const JumpMap& g, double eq_tol = kDefaultEqTol);

struct ValidationParams {
  double eq_tol = kDefaultEqTol;
  int samples_per_side = 1024;
};

enum class ViolationKind {
  NonFinite,
  MonotonicityViolation,
  EndpointViolation,
  JumpAbsent,
  BracketViolation,
  FixedPointViolation,
  PeriodTwoViolation,
  ValueAtJump,
};
std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<double> witness;
};

enum class LimitOrder { LeftBelowRight, RightBelowLeft };
std::string_view to_string(LimitOrder o);

struct ValidationReport {
  std::vector<Violation> violations;
  std::optional<LimitOrder> limit_order;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const;
};

ValidationReport validate_jump_map(const JumpMap& m, const ValidationParams& params = {});

/// Throws InvalidMap listing the violations when `m` is not admitted.
void require_valid(const JumpMap& m, const ValidationParams& params = {});

}  // namespace jumpconj
