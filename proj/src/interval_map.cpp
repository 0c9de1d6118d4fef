#include "jumpconj/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jumpconj/polynomial.hpp"

namespace jumpconj {

std::string_view to_string(Family f) {
  return f == Family::IncreasingA ? "A" : "B";
}

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::string_view to_string(Orientation o) {
  return o == Orientation::Increasing ? "Increasing" : "Decreasing";
}

std::string_view to_string(JumpKind k) {
  switch (k) {
    case JumpKind::Interior: return "Interior";
    case JumpKind::AttainsLeft: return "AttainsLeft";
    case JumpKind::AttainsRight: return "AttainsRight";
  }
  return "?";
}

std::string_view to_string(CasePair c) {
  switch (c) {
    case CasePair::C1: return "C1";
    case CasePair::C2: return "C2";
    case CasePair::D1: return "D1";
    case CasePair::D2: return "D2";
    case CasePair::Mixed: return "Mixed";
  }
  return "?";
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::NonFinite: return "NonFinite";
    case ViolationKind::MonotonicityViolation: return "MonotonicityViolation";
    case ViolationKind::EndpointViolation: return "EndpointViolation";
    case ViolationKind::JumpAbsent: return "JumpAbsent";
    case ViolationKind::BracketViolation: return "BracketViolation";
    case ViolationKind::FixedPointViolation: return "FixedPointViolation";
    case ViolationKind::PeriodTwoViolation: return "PeriodTwoViolation";
    case ViolationKind::ValueAtJump: return "ValueAtJump";
  }
  return "?";
}

std::string_view to_string(LimitOrder o) {
  return o == LimitOrder::LeftBelowRight ? "LeftBelowRight" : "RightBelowLeft";
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ArgumentError("interval bounds must be finite");
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "interval requires lo < hi, got [" << lo << ", " << hi << "]";
    throw ArgumentError(os.str());
  }
}

bool nearly_equal(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// ---------------------------------------------------------------------------
// Branch

Branch::Branch(Kind kind, std::vector<double> coeffs, std::function<double(double)> fn,
               Interval domain)
    : kind_(kind), coeffs_(std::move(coeffs)), fn_(std::move(fn)), domain_(domain) {}

Branch Branch::affine(double intercept, double slope, Interval domain) {
  if (!std::isfinite(intercept) || !std::isfinite(slope))
    throw ArgumentError("affine branch coefficients must be finite");
  return Branch(Kind::Affine, {intercept, slope}, {}, domain);
}

Branch Branch::polynomial(std::vector<double> coeffs, Interval domain) {
  if (coeffs.empty()) throw ArgumentError("polynomial branch needs at least one coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw ArgumentError("polynomial branch coefficients must be finite");
  }
  return Branch(Kind::Polynomial, std::move(coeffs), {}, domain);
}

Branch Branch::callable(std::function<double(double)> fn, Interval domain) {
  if (!fn) throw ArgumentError("callable branch needs a function");
  return Branch(Kind::Callable, {}, std::move(fn), domain);
}

Branch Branch::with_domain(Interval domain) const {
  Branch copy = *this;
  copy.domain_ = domain;
  return copy;
}

double Branch::operator()(double x) const {
  if (kind_ == Kind::Callable) return fn_(x);
  return poly::evaluate(coeffs_, x);
}

double Branch::derivative(double x) const {
  if (kind_ == Kind::Callable)
    throw NonDifferentiableBranch("callable branch has no analytic derivative");
  if (kind_ == Kind::Affine) return coeffs_.size() > 1 ? coeffs_[1] : 0.0;
  return poly::evaluate(poly::derivative(coeffs_), x);
}

bool Branch::increasing() const { return (*this)(domain_.hi()) > (*this)(domain_.lo()); }

Interval Branch::image() const {
  const double u = (*this)(domain_.lo());
  const double v = (*this)(domain_.hi());
  return Interval(std::min(u, v), std::max(u, v));
}

double Branch::inverse(double y, double tol) const {
  const Interval img = image();
  const double slack = tol * std::max(1.0, std::abs(y));
  if (y < img.lo() - slack || y > img.hi() + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "value " << y << " outside branch image [" << img.lo() << ", " << img.hi() << "]";
    throw RangeError(os.str());
  }
  const bool up = increasing();
  if (y <= img.lo()) return up ? domain_.lo() : domain_.hi();
  if (y >= img.hi()) return up ? domain_.hi() : domain_.lo();

  if (poly::degree(coeffs_) == 1 && kind_ != Kind::Callable) {
    const double x = (y - coeffs_[0]) / coeffs_[1];
    return std::clamp(x, domain_.lo(), domain_.hi());
  }

  double lo = domain_.lo();
  double hi = domain_.hi();
  for (int it = 0; it < 1100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = (*this)(mid);
    if (v == y) return mid;
    if ((v < y) == up) lo = mid;
    else hi = mid;
  }
  const double r_lo = std::abs((*this)(lo) - y);
  const double r_hi = std::abs((*this)(hi) - y);
  return r_lo <= r_hi ? lo : hi;
}

double branch_inverse(const Branch& b, double y, double tol) { return b.inverse(y, tol); }

double branch_derivative(const Branch& b, double x) { return b.derivative(x); }

// ---------------------------------------------------------------------------
// JumpMap

namespace {

bool same_endpoint(double x, double y) { return nearly_equal(x, y, 1e-12); }

}  // namespace

JumpMap::JumpMap(Interval domain, double t, Branch left, Branch right, double value_at_t,
                 Family family)
    : domain_(domain),
      t_(t),
      left_(std::move(left)),
      right_(std::move(right)),
      value_at_t_(value_at_t),
      family_(family) {
  if (!std::isfinite(t) || !std::isfinite(value_at_t))
    throw ArgumentError("jump point and value at the jump must be finite");
  if (!(domain_.lo() < t_ && t_ < domain_.hi()))
    throw ArgumentError("jump point must lie strictly inside the domain");
  if (!same_endpoint(left_.domain().lo(), domain_.lo()) || !same_endpoint(left_.domain().hi(), t_))
    throw ArgumentError("left branch domain must be [a, t]");
  if (!same_endpoint(right_.domain().lo(), t_) || !same_endpoint(right_.domain().hi(), domain_.hi()))
    throw ArgumentError("right branch domain must be [t, b]");
  left_ = left_.with_domain(Interval(domain_.lo(), t_));
  right_ = right_.with_domain(Interval(t_, domain_.hi()));
}

double JumpMap::operator()(double x) const {
  if (!(x >= a() && x <= b())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside [" << a() << ", " << b() << "]";
    throw DomainError(os.str());
  }
  if (x < t_) return left_(x);
  if (x > t_) return right_(x);
  return value_at_t_;
}

JumpMap JumpMap::with_value_at_t(double v) const {
  return JumpMap(domain_, t_, left_, right_, v, family_);
}

double eval_map(const JumpMap& m, double x) { return m(x); }

std::pair<double, double> one_sided_limits(const JumpMap& m) {
  return {m.limit(Side::Left), m.limit(Side::Right)};
}

JumpKind classify_jump(const JumpMap& m, double eq_tol) {
  const auto [lim_l, lim_r] = one_sided_limits(m);
  const double v = m.value_at_t();
  if (v == lim_l) return JumpKind::AttainsLeft;
  if (v == lim_r) return JumpKind::AttainsRight;
  const double tol = eq_tol * std::abs(lim_r - lim_l);
  const double d_l = std::abs(v - lim_l);
  const double d_r = std::abs(v - lim_r);
  if (d_l <= tol && d_l <= d_r) return JumpKind::AttainsLeft;
  if (d_r <= tol) return JumpKind::AttainsRight;
  return JumpKind::Interior;
}

PairDecision decide_pair(const JumpMap& f, const JumpMap& g, double eq_tol) {
  if (f.family() != g.family())
    throw NotComparable("maps belong to different families (one increasing, one decreasing)");
  PairDecision d;
  d.f_kind = classify_jump(f, eq_tol);
  d.g_kind = classify_jump(g, eq_tol);
  const bool f_interior = d.f_kind == JumpKind::Interior;
  const bool g_interior = d.g_kind == JumpKind::Interior;
  const bool family_a = f.family() == Family::IncreasingA;

  if (f_interior != g_interior) {
    d.case_pair = CasePair::Mixed;
    return d;
  }
  d.conjugate = true;
  if (f_interior) {
    d.case_pair = family_a ? CasePair::C1 : CasePair::D1;
    const double prod = (f.value_at_t() - f.t()) * (g.value_at_t() - g.t());
    d.orientation = prod > 0.0 ? Orientation::Increasing : Orientation::Decreasing;
  } else {
    d.case_pair = family_a ? CasePair::C2 : CasePair::D2;
    d.orientation =
        d.f_kind == d.g_kind ? Orientation::Increasing : Orientation::Decreasing;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(),
                     [k](const Violation& v) { return v.kind == k; });
}

namespace {

std::string fmt_values(std::initializer_list<double> vs) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (double v : vs) {
    if (!first) os << ", ";
    os << v;
    first = false;
  }
  return os.str();
}

// Interior sample points of (lo, hi).
std::vector<double> interior_samples(double lo, double hi, int n) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) xs.push_back(lo + (hi - lo) * k / (n + 1));
  return xs;
}

std::optional<Violation> check_branch_monotone(const Branch& br, bool want_increasing,
                                               std::string_view name, int samples) {
  const Interval dom = br.domain();
  std::vector<double> xs;
  xs.push_back(dom.lo());
  for (double x : interior_samples(dom.lo(), dom.hi(), samples)) xs.push_back(x);
  xs.push_back(dom.hi());

  auto ordered = [&](double u, double v) { return want_increasing ? u < v : u > v; };
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double u = br(xs[i]);
    const double v = br(xs[i + 1]);
    if (!ordered(u, v)) {
      return Violation{ViolationKind::MonotonicityViolation,
                       std::string(name) + " branch is not strictly " +
                           (want_increasing ? "increasing" : "decreasing") + " at (" +
                           fmt_values({xs[i], xs[i + 1]}) + ")",
                       {xs[i], xs[i + 1]}};
    }
  }
  if (!br.has_derivative()) return std::nullopt;

  const double sign = want_increasing ? 1.0 : -1.0;
  for (double x : interior_samples(dom.lo(), dom.hi(), samples)) {
    if (!(sign * br.derivative(x) > 0.0)) {
      const double d = dom.width() * 1e-6;
      return Violation{ViolationKind::MonotonicityViolation,
                       std::string(name) + " branch derivative loses its sign near " +
                           fmt_values({x}),
                       {std::max(dom.lo(), x - d), std::min(dom.hi(), x + d)}};
    }
  }
  if (br.kind() == Branch::Kind::Polynomial) {
    const auto dp = poly::derivative(br.coefficients());
    const auto roots = poly::real_roots(dp, dom.lo(), dom.hi());
    if (!roots.empty()) {
      const double r = roots.front();
      const double d = dom.width() * 1e-6;
      return Violation{ViolationKind::MonotonicityViolation,
                       std::string(name) + " branch derivative vanishes at " + fmt_values({r}),
                       {std::max(dom.lo(), r - d), std::min(dom.hi(), r + d)}};
    }
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_jump_map(const JumpMap& m, const ValidationParams& params) {
  ValidationReport rep;
  const double tol = params.eq_tol;
  const int n = std::max(1, params.samples_per_side);
  const double a = m.a();
  const double b = m.b();
  const double t = m.t();
  const double v = m.value_at_t();
  const bool family_a = m.family() == Family::IncreasingA;
  auto add = [&](ViolationKind k, std::string msg, std::vector<double> w) {
    rep.violations.push_back({k, std::move(msg), std::move(w)});
  };

  const auto [lim_l, lim_r] = one_sided_limits(m);
  const double f_a = m.left()(a);
  const double f_b = m.right()(b);
  for (double val : {lim_l, lim_r, f_a, f_b}) {
    if (!std::isfinite(val)) {
      add(ViolationKind::NonFinite, "branch evaluates to a non-finite value", {val});
      return rep;
    }
  }

  const bool want_increasing = family_a;
  if (auto viol = check_branch_monotone(m.left(), want_increasing, "left", n)) rep.violations.push_back(*viol);
  if (auto viol = check_branch_monotone(m.right(), want_increasing, "right", n)) rep.violations.push_back(*viol);

  const double want_fa = family_a ? a : b;
  const double want_fb = family_a ? b : a;
  if (!nearly_equal(f_a, want_fa, tol) || !nearly_equal(f_b, want_fb, tol)) {
    add(ViolationKind::EndpointViolation,
        std::string(family_a ? "family A needs f(a) = a and f(b) = b"
                             : "family B needs f(a) = b and f(b) = a") +
            "; observed f(a), f(b) = " + fmt_values({f_a, f_b}),
        {f_a, f_b});
  }

  const double jump_scale = std::max({1.0, std::abs(lim_l), std::abs(lim_r)});
  if (std::abs(lim_r - lim_l) <= tol * jump_scale) {
    add(ViolationKind::JumpAbsent, "one-sided limits coincide: " + fmt_values({lim_l, lim_r}),
        {lim_l, lim_r});
  } else {
    const double lo = std::min(lim_l, lim_r);
    const double hi = std::max(lim_l, lim_r);
    const double slack = tol * std::abs(hi - lo);
    const bool inside = v >= lo - slack && v <= hi + slack;
    rep.limit_order = lim_l < lim_r ? LimitOrder::LeftBelowRight : LimitOrder::RightBelowLeft;
    if (family_a && lim_l > lim_r) {
      add(ViolationKind::BracketViolation,
          "family A needs f(t-0) <= f(t+0); observed " + fmt_values({lim_l, lim_r}),
          {lim_l, lim_r});
    } else if (!inside) {
      add(ViolationKind::BracketViolation,
          "f(t) must lie between the one-sided limits; observed f(t-0), f(t), f(t+0) = " +
              fmt_values({lim_l, v, lim_r}),
          {lim_l, v, lim_r});
    }
  }

  if (nearly_equal(v, t, tol)) add(ViolationKind::ValueAtJump, "f(t) = t", {t});

  // Position relative to the diagonal. Family A: f(x) < x left of t, f(x) > x
  // right of t (a and b attract). Family B: no fixed point, so the jump must
  // straddle the diagonal.
  const double want_left_sign = family_a ? -1.0 : 1.0;
  auto first_bad = [&](const std::vector<double>& xs, auto&& fn, double sign) -> std::optional<double> {
    for (double x : xs) {
      if (!(sign * (fn(x) - x) > 0.0)) return x;
    }
    return std::nullopt;
  };
  std::vector<double> left_xs = interior_samples(a, t, n);
  left_xs.push_back(t);
  std::vector<double> right_xs{t};
  for (double x : interior_samples(t, b, n)) right_xs.push_back(x);
  auto left_fn = [&](double x) { return m.left()(x); };
  auto right_fn = [&](double x) { return m.right()(x); };
  if (auto bad = first_bad(left_xs, left_fn, want_left_sign)) {
    add(ViolationKind::FixedPointViolation,
        std::string("left branch must stay ") + (family_a ? "below" : "above") +
            " the diagonal on (a, t]; fails at x = " + fmt_values({*bad}),
        {*bad});
  }
  if (auto bad = first_bad(right_xs, right_fn, -want_left_sign)) {
    add(ViolationKind::FixedPointViolation,
        std::string("right branch must stay ") + (family_a ? "above" : "below") +
            " the diagonal on [t, b); fails at x = " + fmt_values({*bad}),
        {*bad});
  }

  if (!family_a && !rep.has(ViolationKind::FixedPointViolation)) {
    // f^2 has no fixed point inside (a, b): left of t it moves points toward a,
    // right of t toward b. One-sided closures are used at t.
    auto second_left = [&](double x) { return m.right()(m.left()(x)); };
    auto second_right = [&](double x) { return m.left()(m.right()(x)); };
    if (auto bad = first_bad(left_xs, second_left, -1.0)) {
      add(ViolationKind::PeriodTwoViolation,
          "f^2(x) < x fails on (a, t] at x = " + fmt_values({*bad}), {*bad});
    }
    if (auto bad = first_bad(right_xs, second_right, 1.0)) {
      add(ViolationKind::PeriodTwoViolation,
          "f^2(x) > x fails on [t, b) at x = " + fmt_values({*bad}), {*bad});
    }
  }
  return rep;
}

void require_valid(const JumpMap& m, const ValidationParams& params) {
  const ValidationReport rep = validate_jump_map(m, params);
  if (rep.ok()) return;
  std::string msg = "map is not a valid member of family " + std::string(to_string(m.family())) + ":";
  for (const auto& v : rep.violations) msg += " [" + std::string(to_string(v.kind)) + "] " + v.message + ";";
  throw InvalidMap(msg);
}

}  // namespace jumpconj
