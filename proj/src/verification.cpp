#include "jumpconj/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <spdlog/spdlog.h>

namespace jumpconj {

namespace {

struct FailureLog {
  int count = 0;
  std::string first;

  void record(const std::exception& e) {
    if (count++ == 0) first = e.what();
  }
};

double endpoint_target(const Homeomorphism& phi, bool at_a) {
  const bool inc = phi.orientation() == Orientation::Increasing;
  return at_a == inc ? phi.target().a() : phi.target().b();
}

// A pin (x, y) holds to within the smaller of |phi(x) - y| and |phi^-1(y) - x|;
// the second is the well-conditioned measure where phi is nearly flat.
double pin_error(const Homeomorphism& phi, double x, double y) {
  const double forward = std::abs(phi(x) - y);
  if (forward == 0.0) return 0.0;
  return std::min(forward, std::abs(phi.inverse(y, 0.0) - x));
}

double boundary_pin_error(const Homeomorphism& phi, int depth, double eps) {
  const JumpMap& f = phi.source();
  const JumpMap& g = phi.target();
  const bool inc = phi.orientation() == Orientation::Increasing;
  double err = 0.0;
  auto compare = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, pin_error(phi, xs[i], ys[i]));
  };
  if (f.family() == Family::IncreasingA) {
    const OrbitPartition p = boundary_orbit_A(f, depth, eps);
    const OrbitPartition q = boundary_orbit_A(g, depth, eps);
    compare(p.left_points(), inc ? q.left_points() : q.right_points());
    compare(p.right_points(), inc ? q.right_points() : q.left_points());
  } else {
    const OrbitPartition p = boundary_orbit_B(f, depth, eps, Side::Left);
    const OrbitPartition q = boundary_orbit_B(g, depth, eps, inc ? Side::Left : Side::Right);
    compare(p.points(), q.points());
  }
  return err;
}

double true_orbit_pin_error(const Homeomorphism& phi, int depth) {
  const JumpMap& f = phi.source();
  const JumpMap& g = phi.target();
  double x = f.t();
  double y = g.t();
  double err = 0.0;
  for (int n = 0; n <= depth; ++n) {
    err = std::max(err, pin_error(phi, x, y));
    x = f(x);
    y = g(y);
  }
  return err;
}

// Distance from y to the image of x = phi^-1(y) and its two neighbouring
// doubles. Zero when y is covered up to the resolution of x.
double coverage_gap(const Homeomorphism& phi, double y) {
  const double a = phi.source().a();
  const double b = phi.source().b();
  const double x = phi.inverse(y, 0.0);
  double lo = phi(x);
  double hi = lo;
  for (double n : {std::nextafter(x, a), std::nextafter(x, b)}) {
    const double v = phi(std::clamp(n, a, b));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return y < lo ? lo - y : (y > hi ? y - hi : 0.0);
}

}  // namespace

VerificationReport verify_conjugacy(const Homeomorphism& phi, const VerifyParams& params) {
  if (params.grid_n < 2) throw ArgumentError("grid_n must be at least 2");
  if (!(params.tol > 0.0)) throw ArgumentError("tol must be positive");
  const JumpMap& f = phi.source();
  const JumpMap& g = phi.target();
  const bool inc = phi.orientation() == Orientation::Increasing;
  VerificationReport rep;
  FailureLog failures;

  const double a = f.a();
  const double b = f.b();
  std::vector<double> xs(params.grid_n);
  if (params.seed) {
    std::mt19937_64 rng(*params.seed);
    std::uniform_real_distribution<double> u(a, b);
    for (double& x : xs) x = u(rng);
    xs.front() = a;
    xs.back() = b;
    std::sort(xs.begin(), xs.end());
  } else {
    for (int i = 0; i < params.grid_n; ++i)
      xs[i] = i == params.grid_n - 1 ? b : a + (b - a) * i / (params.grid_n - 1);
  }

  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < params.grid_n; ++i) {
    const double x = xs[i];
    try {
      const double y = phi(x);
      if (i > 0 && !(inc ? y > prev : y < prev)) {
        // Near an endpoint phi can be flatter than double resolution; ties
        // there are rounding, anywhere else they fail the check.
        const double slack = 1e-12 * std::max(1.0, std::abs(y));
        const bool at_end = std::abs(y - g.a()) <= slack || std::abs(y - g.b()) <= slack;
        if (y == prev && at_end) ++rep.monotonicity_ties;
        else rep.monotonicity_ok = false;
      }
      prev = y;
      if (x == f.t()) continue;
      const double fx = f(x);
      if (std::abs(fx - f.t()) <= params.endpoint_eps) continue;
      const double r = std::abs(phi(fx) - g(y));
      ++rep.grid_size;
      if (params.keep_samples) rep.samples.push_back({x, r});
      if (r > rep.max_residual || std::isnan(r)) {
        rep.max_residual = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
        rep.residual_argmax = x;
      }
    } catch (const Error& e) {
      failures.record(e);
    }
  }

  const double c = g.a();
  const double d = g.b();
  const int m = std::max(2, params.surjectivity_targets);
  for (int j = 0; j < m; ++j) {
    const double y = j == m - 1 ? d : c + (d - c) * j / (m - 1);
    try {
      rep.surjectivity_max_gap = std::max(rep.surjectivity_max_gap, coverage_gap(phi, y));
    } catch (const Error& e) {
      failures.record(e);
    }
  }

  try {
    rep.orbit_pin_max_error = std::max(boundary_pin_error(phi, params.orbit_depth, params.endpoint_eps),
                                       true_orbit_pin_error(phi, params.orbit_depth));
  } catch (const Error& e) {
    failures.record(e);
    rep.orbit_pin_max_error = std::numeric_limits<double>::infinity();
  }

  try {
    rep.endpoint_values_ok = phi(a) == endpoint_target(phi, true) && phi(b) == endpoint_target(phi, false);
    rep.t_maps_to_s = phi(f.t()) == g.t();
  } catch (const Error& e) {
    failures.record(e);
    rep.endpoint_values_ok = false;
    rep.t_maps_to_s = false;
  }

  rep.evaluation_failures = failures.count;
  rep.first_failure = failures.first;
  rep.passed = failures.count == 0 && rep.max_residual <= params.tol && rep.monotonicity_ok &&
               rep.surjectivity_max_gap <= params.tol && rep.orbit_pin_max_error <= params.tol &&
               rep.endpoint_values_ok && rep.t_maps_to_s;
  spdlog::debug("verify: grid {} max_residual {:.3e} at {} gap {:.3e} pins {:.3e} failures {}",
                rep.grid_size, rep.max_residual, rep.residual_argmax, rep.surjectivity_max_gap,
                rep.orbit_pin_max_error, rep.evaluation_failures);
  return rep;
}

VerificationReport verify_conjugacy(const Conjugacy& phi, int grid_n, double tol) {
  VerifyParams p;
  p.grid_n = grid_n;
  p.tol = tol;
  p.endpoint_eps = phi.params().endpoint_eps;
  return verify_conjugacy(static_cast<const Homeomorphism&>(phi), p);
}

double finite_difference_derivative(const Homeomorphism& phi, double x, double h) {
  if (h == 0.0) throw ArgumentError("finite difference step must be nonzero");
  return (phi(x + h) - phi(x)) / h;
}

// ---------------------------------------------------------------------------

namespace {

void require_smoothness_scope(const JumpMap& f, const JumpMap& g) {
  if (f.family() != Family::IncreasingA || g.family() != Family::IncreasingA)
    throw ScopeError("smoothness conditions are only available for family A");
  const PairDecision d = decide_pair(f, g);
  if (d.case_pair != CasePair::C1 || !d.conjugate)
    throw ScopeError("smoothness conditions cover case C1 only, got " + std::string(to_string(d.case_pair)));
  if (*d.orientation != Orientation::Increasing)
    throw ScopeError("smoothness conditions cover increasing conjugacies only");
  if (!(f.value_at_t() < f.t()) || !(g.value_at_t() < g.t()))
    throw ScopeError("smoothness conditions cover the subcase f(t) < t, g(s) < s only");
  for (const Branch* br : {&f.left(), &f.right(), &g.left(), &g.right()}) {
    if (!br->has_derivative())
      throw NonDifferentiableBranch("a branch is a black-box callable without a derivative");
  }
}

// phi0'(x) * prod_{j<n} g'(g^j(phi0(x))) / f'(f^j(x)), for n = n_short and n_long.
std::pair<double, double> truncated_products(const Branch& fb, const Branch& gb,
                                             const MonotoneInterpolant& phi0, double x,
                                             int n_short, int n_long) {
  double p = phi0.derivative(x);
  double u = x;
  double v = phi0(x);
  double at_short = p;
  for (int j = 0; j < n_long; ++j) {
    if (j == n_short) at_short = p;
    p *= gb.derivative(v) / fb.derivative(u);
    u = fb(u);
    v = gb(v);
  }
  if (n_short == n_long) at_short = p;
  return {at_short, p};
}

}  // namespace

SmoothnessReport check_smoothness(const JumpMap& f, const JumpMap& g, const InitialHomeo& init,
                                  const SmoothnessParams& params) {
  require_smoothness_scope(f, g);
  if (params.lag < 1 || params.n < params.lag) throw ArgumentError("need n >= lag >= 1");
  if (params.samples < 1) throw ArgumentError("samples must be positive");
  if (init.pieces.size() != 2 || init.orientation != Orientation::Increasing)
    throw InitError("smoothness needs an increasing two-piece initial homeomorphism");

  const double t = f.t();
  const double s = g.t();
  const MonotoneInterpolant& phil = init.pieces[0].map;
  const MonotoneInterpolant& phir = init.pieces[1].map;

  SmoothnessReport rep;
  const double dl_t = phil.derivative(t);
  const double dr_t = phir.derivative(t);
  rep.condition_a_residuals["slope_match_at_t"] = std::abs(dl_t - dr_t);
  rep.condition_a_residuals["left_endpoint_slope"] =
      std::abs(phil.derivative(f.limit(Side::Left)) - g.left().derivative(s) / f.left().derivative(t) * dl_t);
  rep.condition_a_residuals["right_endpoint_slope"] =
      std::abs(phir.derivative(f.limit(Side::Right)) - g.right().derivative(s) / f.right().derivative(t) * dr_t);

  auto run_side = [&](Side side, const MonotoneInterpolant& phi0, double lo, double hi) {
    double sum = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (int k = 0; k < params.samples; ++k) {
      // Left cell (f_l(t), t], right cell [t, f_r(t)).
      const double frac = side == Side::Left ? double(k + 1) / params.samples : double(k) / params.samples;
      const double x = lo + (hi - lo) * frac;
      const auto [shorter, full] =
          truncated_products(f.branch(side), g.branch(side), phi0, x, params.n - params.lag, params.n);
      const bool cauchy = std::abs(full - shorter) <= params.cauchy_tol * std::max(1.0, std::abs(full));
      rep.all_cauchy = rep.all_cauchy && cauchy;
      rep.product_samples.push_back({side, x, params.n, full, cauchy});
      sum += full;
      mn = std::min(mn, full);
      mx = std::max(mx, full);
    }
    return std::pair{sum / params.samples, mx - mn};
  };
  const auto [l1, spread_l] = run_side(Side::Left, phil, f.limit(Side::Left), t);
  const auto [l2, spread_r] = run_side(Side::Right, phir, t, f.limit(Side::Right));
  rep.L1_estimate = l1;
  rep.L2_estimate = l2;
  rep.constancy_spread = std::max(spread_l, spread_r);

  const Conjugacy phi = build_conjugacy_A(f, g, init);
  rep.fd_step = (t - f.a()) * std::ldexp(1.0, -20);
  rep.fd_derivative_at_a = finite_difference_derivative(phi, f.a(), rep.fd_step);
  return rep;
}

SmoothnessReport check_smoothness(const JumpMap& f, const JumpMap& g, const InitialHomeo& init, int N,
                                  int samples) {
  SmoothnessParams p;
  p.n = N;
  p.samples = samples;
  return check_smoothness(f, g, init, p);
}

}  // namespace jumpconj
