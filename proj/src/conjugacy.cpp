#include "jumpconj/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jumpconj {

namespace {

std::string point_str(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

Side matched_side(Orientation o, Side s) { return o == Orientation::Increasing ? s : opposite(s); }

// Sorts by x and merges points whose abscissae agree within tol. The first
// point pushed wins; a conflicting ordinate is an error.
std::vector<Point> merge_points(std::vector<Point> pts, double tol) {
  std::stable_sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
  std::vector<Point> out;
  for (const Point& p : pts) {
    if (!out.empty() && nearly_equal(out.back().x, p.x, tol)) {
      if (!nearly_equal(out.back().y, p.y, tol))
        throw PinOrderError("pins " + point_str(out.back()) + " and " + point_str(p) +
                            " share an abscissa but not an ordinate");
      continue;
    }
    out.push_back(p);
  }
  return out;
}

void require_strictly_monotone(const std::vector<Point>& pts, Orientation o, const char* what) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const bool ok = o == Orientation::Increasing ? pts[i + 1].y > pts[i].y : pts[i + 1].y < pts[i].y;
    if (!ok)
      throw PinOrderError(std::string(what) + " are not strictly " +
                          (o == Orientation::Increasing ? "increasing" : "decreasing") + ": " +
                          point_str(pts[i]) + " then " + point_str(pts[i + 1]));
  }
}

Orientation require_conjugate(const JumpMap& f, const JumpMap& g, double eq_tol) {
  const PairDecision d = decide_pair(f, g, eq_tol);
  if (!d.conjugate)
    throw NotConjugate("maps are not conjugate: jump kinds " + std::string(to_string(d.f_kind)) +
                       " and " + std::string(to_string(d.g_kind)));
  return *d.orientation;
}

// Domain of each fundamental piece with the images of its endpoints.
struct PieceFrame {
  Point lo;
  Point hi;
};

std::vector<PieceFrame> fundamental_frames(const JumpMap& f, const JumpMap& g, Orientation o) {
  const double t = f.t();
  const double s = g.t();
  const auto m = [o](Side side) { return matched_side(o, side); };
  if (f.family() == Family::IncreasingA) {
    return {
        {{f.limit(Side::Left), g.limit(m(Side::Left))}, {t, s}},
        {{t, s}, {f.limit(Side::Right), g.limit(m(Side::Right))}},
    };
  }
  // [f_e^2(t), t]; the left-closure orbit of t leaves through the left branch
  // and returns through the right one, so the matched g-branches are applied
  // in the same order.
  const double fe2 = f.right()(f.limit(Side::Left));
  const double ge2 = g.branch(m(Side::Right))(g.limit(m(Side::Left)));
  return {{{fe2, ge2}, {t, s}}};
}

// Extra constraint for family B when f(t) lies right of t: then f(t) sits in
// the gap and the pin (f(t), g(s)) is enforced through its image under the
// right branch, which lands in the fundamental cell.
std::optional<Point> derived_pin_b(const JumpMap& f, const JumpMap& g, Orientation o) {
  if (f.family() != Family::DecreasingB || !(f.value_at_t() > f.t())) return std::nullopt;
  return Point{f.right()(f.value_at_t()), g.branch(matched_side(o, Side::Right))(g.value_at_t())};
}

std::vector<Point> piece_constraints(const PieceFrame& frame, const PinnedPoints& pins,
                                     const std::optional<Point>& derived, double tol) {
  std::vector<Point> pts{frame.lo, frame.hi};
  auto inside = [&](double x) {
    return x > frame.lo.x && x < frame.hi.x && !nearly_equal(x, frame.lo.x, tol) &&
           !nearly_equal(x, frame.hi.x, tol);
  };
  for (const Point& p : pins.points) {
    if (inside(p.x)) pts.push_back(p);
  }
  if (derived && inside(derived->x)) pts.push_back(*derived);
  return pts;
}

}  // namespace

std::optional<double> PinnedPoints::image_of(double x) const {
  for (const Point& p : points) {
    if (p.x == x) return p.y;
  }
  return std::nullopt;
}

PinnedPoints pinned_points(const JumpMap& f, const JumpMap& g, Orientation o, double eq_tol) {
  const Orientation decided = require_conjugate(f, g, eq_tol);
  if (decided != o)
    throw NotConjugate("no " + std::string(to_string(o)) + " conjugacy exists; the pair forces " +
                       std::string(to_string(decided)));

  const bool inc = o == Orientation::Increasing;
  std::vector<Point> pts{
      {f.a(), inc ? g.a() : g.b()},
      {f.b(), inc ? g.b() : g.a()},
      {f.t(), g.t()},
  };
  for (Side side : {Side::Left, Side::Right}) {
    pts.push_back({f.limit(side), g.limit(matched_side(o, side))});
  }
  if (f.family() == Family::DecreasingB) {
    for (Side side : {Side::Left, Side::Right}) {
      const double fx = f.limit(side);
      const double gy = g.limit(matched_side(o, side));
      pts.push_back({f(fx), g(gy)});
    }
  }
  // Last, so that in the attained cases the coinciding limit pin is kept.
  pts.push_back({f.value_at_t(), g.value_at_t()});

  PinnedPoints out;
  out.orientation = o;
  out.points = merge_points(std::move(pts), eq_tol);
  require_strictly_monotone(out.points, o, "pinned points");
  return out;
}

InitialHomeo make_initial_homeo(const JumpMap& f, const JumpMap& g, Orientation o,
                                const InitSpec& spec, double eq_tol) {
  const PinnedPoints pins = pinned_points(f, g, o, eq_tol);
  const auto frames = fundamental_frames(f, g, o);
  const auto derived = derived_pin_b(f, g, o);

  if (!spec.endpoint_slopes.empty() && spec.endpoint_slopes.size() != frames.size())
    throw InitError("endpoint_slopes needs one entry per fundamental piece (" +
                    std::to_string(frames.size()) + ")");

  std::vector<std::vector<Point>> per_piece;
  for (const auto& frame : frames) per_piece.push_back(piece_constraints(frame, pins, derived, eq_tol));

  for (const Point& p : spec.extra_points) {
    bool placed = false;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (p.x > frames[i].lo.x && p.x < frames[i].hi.x) {
        per_piece[i].push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw InitError("extra point " + point_str(p) +
                      " is not inside an open fundamental cell");
  }

  InitialHomeo init;
  init.orientation = o;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::vector<Point> knots = merge_points(per_piece[i], eq_tol);
    require_strictly_monotone(knots, o, "initial homeomorphism knots");
    const auto& frame = frames[i];
    MonotoneInterpolant map = [&] {
      if (spec.kind == InterpolantKind::PiecewiseAffine)
        return MonotoneInterpolant::piecewise_affine(std::move(knots));
      const EndpointSlopes slopes =
          spec.endpoint_slopes.empty() ? EndpointSlopes{} : spec.endpoint_slopes[i];
      return MonotoneInterpolant::monotone_cubic(std::move(knots), slopes.lo, slopes.hi);
    }();
    init.pieces.push_back({Interval(frame.lo.x, frame.hi.x),
                           Interval(std::min(frame.lo.y, frame.hi.y), std::max(frame.lo.y, frame.hi.y)),
                           std::move(map)});
  }
  return init;
}

InitialHomeo default_initial_homeo(const JumpMap& f, const JumpMap& g, Orientation o,
                                   InterpolantKind kind) {
  return make_initial_homeo(f, g, o, InitSpec{kind, {}, {}});
}

std::vector<EndpointSlopes> matched_endpoint_slopes(const JumpMap& f, const JumpMap& g,
                                                    double slope_at_t) {
  if (f.family() != Family::IncreasingA || g.family() != Family::IncreasingA)
    throw ScopeError("slope matching at the fundamental cells is defined for family A");
  const Orientation o = require_conjugate(f, g, kDefaultEqTol);
  const double t = f.t();
  const double s = g.t();
  auto image_slope = [&](Side side) {
    return g.branch(matched_side(o, side)).derivative(s) / f.branch(side).derivative(t) * slope_at_t;
  };
  return {{image_slope(Side::Left), slope_at_t}, {slope_at_t, image_slope(Side::Right)}};
}

// ---------------------------------------------------------------------------

namespace {

void validate_init(const JumpMap& f, const JumpMap& g, Orientation o, const InitialHomeo& init,
                   const PinnedPoints& pins, bool check_pins, double eq_tol) {
  if (init.orientation != o)
    throw InitError("initial homeomorphism is " + std::string(to_string(init.orientation)) +
                    " but the pair needs " + std::string(to_string(o)));
  const auto frames = fundamental_frames(f, g, o);
  if (init.pieces.size() != frames.size())
    throw InitError("initial homeomorphism needs " + std::to_string(frames.size()) + " piece(s), got " +
                    std::to_string(init.pieces.size()));
  const auto derived = derived_pin_b(f, g, o);
  constexpr double tol = 1e-12;

  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& piece = init.pieces[i];
    const auto& frame = frames[i];
    const Interval dom = piece.map.domain();
    if (!nearly_equal(piece.domain.lo(), frame.lo.x, tol) || !nearly_equal(piece.domain.hi(), frame.hi.x, tol) ||
        !nearly_equal(dom.lo(), frame.lo.x, tol) || !nearly_equal(dom.hi(), frame.hi.x, tol)) {
      std::ostringstream os;
      os.precision(17);
      os << "piece " << i << " must be defined on [" << frame.lo.x << ", " << frame.hi.x << "]";
      throw InitError(os.str());
    }
    if (piece.map.increasing() != (o == Orientation::Increasing))
      throw InitError("piece " + std::to_string(i) + " has the wrong orientation");
    if (!check_pins) continue;
    for (const Point& p : piece_constraints(frame, pins, derived, eq_tol)) {
      const double got = piece.map(p.x);
      if (!nearly_equal(got, p.y, tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "piece " << i << " misses pin " << point_str(p) << " (value " << got << ")";
        throw InitError(os.str());
      }
    }
  }
}

void require_family(const JumpMap& f, const JumpMap& g, Family fam) {
  if (f.family() != g.family()) throw NotComparable("maps belong to different families");
  if (f.family() != fam)
    throw ArgumentError(std::string("builder expects family ") + std::string(to_string(fam)) + " maps");
}

struct Prepared {
  Orientation orientation;
  PinnedPoints pins;
  InitialHomeo init;
};

Prepared prepare(const JumpMap& f, const JumpMap& g, std::optional<InitialHomeo> init,
                 const BuildOptions& options) {
  if (options.validate_maps) {
    require_valid(f);
    require_valid(g);
  }
  const Orientation o = require_conjugate(f, g, options.eq_tol);
  PinnedPoints pins = pinned_points(f, g, o, options.eq_tol);
  InitialHomeo chosen = init ? std::move(*init) : default_initial_homeo(f, g, o);
  validate_init(f, g, o, chosen, pins, init ? options.check_init_pins : true, options.eq_tol);
  if (!options.check_init_pins) {
    // Keep only the pins that hold by construction, so evaluation does not
    // mask a deliberately wrong init.
    std::erase_if(pins.points, [&](const Point& p) {
      return p.x != f.a() && p.x != f.b() && p.x != f.t();
    });
  }
  return {o, std::move(pins), std::move(chosen)};
}

}  // namespace

Conjugacy::Conjugacy(JumpMap f, JumpMap g, Orientation o, InitialHomeo init, OrbitPartition partition,
                     OrbitPartition target_orbit, PinnedPoints pins, EvalParams params)
    : f_(std::move(f)),
      g_(std::move(g)),
      orientation_(o),
      init_(std::move(init)),
      partition_(std::move(partition)),
      target_orbit_(std::move(target_orbit)),
      pins_(std::move(pins)),
      params_(params) {}

Conjugacy build_conjugacy_A(const JumpMap& f, const JumpMap& g, std::optional<InitialHomeo> init,
                            const BuildOptions& options) {
  require_family(f, g, Family::IncreasingA);
  Prepared prep = prepare(f, g, std::move(init), options);
  const auto& ev = options.eval;
  OrbitPartition part = boundary_orbit_A(f, ev.n_max, ev.endpoint_eps);
  OrbitPartition target = boundary_orbit_A(g, ev.n_max, ev.endpoint_eps);
  return Conjugacy(f, g, prep.orientation, std::move(prep.init), std::move(part), std::move(target),
                   std::move(prep.pins), ev);
}

Conjugacy build_conjugacy_B(const JumpMap& f, const JumpMap& g, std::optional<InitialHomeo> init,
                            const BuildOptions& options) {
  require_family(f, g, Family::DecreasingB);
  Prepared prep = prepare(f, g, std::move(init), options);
  const auto& ev = options.eval;
  const Orientation o = prep.orientation;

  // The gap (t, f_e(t)) is evaluated as h^{-1}(init(f_r(x))), h the g-branch
  // matched to f's right branch; f_r maps the gap into [f_e^2(t), f(t+0)],
  // whose init image must lie in h's image.
  const InitPiece& piece = prep.init.pieces.front();
  const double f_plus = f.limit(Side::Right);
  if (!piece.domain.contains(f_plus))
    throw ConstructionDomainError("f(t+0) lies outside the fundamental cell [f_e^2(t), t]");
  const Branch& h = g.branch(matched_side(o, Side::Right));
  const Interval h_img = h.image();
  const double slack = 1e-12 * std::max(1.0, g.domain().width());
  for (double u : {piece.domain.lo(), f_plus}) {
    const double y = piece.map(u);
    if (y < h_img.lo() - slack || y > h_img.hi() + slack) {
      std::ostringstream os;
      os.precision(17);
      os << "initial homeomorphism sends " << u << " to " << y << ", outside the image ["
         << h_img.lo() << ", " << h_img.hi() << "] of the " << to_string(matched_side(o, Side::Right))
         << " branch of g used on the gap";
      throw ConstructionDomainError(os.str());
    }
  }

  OrbitPartition part = boundary_orbit_B(f, ev.n_max, ev.endpoint_eps, Side::Left);
  OrbitPartition target =
      boundary_orbit_B(g, ev.n_max, ev.endpoint_eps, matched_side(o, Side::Left));
  return Conjugacy(f, g, o, std::move(prep.init), std::move(part), std::move(target),
                   std::move(prep.pins), ev);
}

Conjugacy build_conjugacy(const JumpMap& f, const JumpMap& g, std::optional<InitialHomeo> init,
                          const BuildOptions& options) {
  if (f.family() == Family::IncreasingA) return build_conjugacy_A(f, g, std::move(init), options);
  return build_conjugacy_B(f, g, std::move(init), options);
}

double Conjugacy::endpoint_image(bool at_a) const {
  const bool inc = orientation_ == Orientation::Increasing;
  return at_a == inc ? g_.a() : g_.b();
}

double Conjugacy::operator()(double x) const {
  if (!(x >= f_.a() && x <= f_.b())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside [" << f_.a() << ", " << f_.b() << "]";
    throw DomainError(os.str());
  }
  if (x == f_.t()) return g_.t();
  // Pinned abscissae return their exact images.
  if (auto y = pins_.image_of(x)) return *y;
  if (x - f_.a() <= params_.endpoint_eps) return endpoint_image(true);
  if (f_.b() - x <= params_.endpoint_eps) return endpoint_image(false);

  const CellIndex cell = locate(partition_, x);
  if (cell.region == CellIndex::Region::EndpointA) return endpoint_image(true);
  if (cell.region == CellIndex::Region::EndpointB) return endpoint_image(false);
  if (f_.family() == Family::IncreasingA) return eval_family_a(cell, x);
  return eval_family_b(cell, x);
}

double Conjugacy::eval_family_a(const CellIndex& cell, double x) const {
  const Side side = cell.region == CellIndex::Region::Left ? Side::Left : Side::Right;
  const InitPiece& piece = init_.pieces[side == Side::Left ? 0 : 1];
  const Branch& fb = f_.branch(side);
  // The cell is located exactly, so rounding drift past the branch image is clamped.
  const Interval img = fb.image();
  double u = x;
  for (int k = 0; k < cell.n; ++k) u = fb.inverse(std::clamp(u, img.lo(), img.hi()), params_.inv_tol);
  u = std::clamp(u, piece.domain.lo(), piece.domain.hi());

  double y = piece.map(u);
  const Branch& gb = g_.branch(matched(side));
  for (int k = 0; k < cell.n; ++k) y = gb(y);
  return y;
}

double Conjugacy::eval_family_b(const CellIndex& cell, double x) const {
  const InitPiece& piece = init_.pieces.front();
  if (cell.region == CellIndex::Region::Gap) {
    const double u = std::clamp(f_.right()(x), piece.domain.lo(), piece.domain.hi());
    return g_.branch(matched(Side::Right)).inverse(piece.map(u), params_.inv_tol);
  }

  // Preimages alternate sides: a point left of t comes from the right branch
  // and vice versa. After n steps the point is back in [f_e^2(t), t].
  Side region = cell.region == CellIndex::Region::Left ? Side::Left : Side::Right;
  double u = x;
  for (int k = 0; k < cell.n; ++k) {
    region = opposite(region);
    const Branch& fb = f_.branch(region);
    const Interval img = fb.image();
    u = fb.inverse(std::clamp(u, img.lo(), img.hi()), params_.inv_tol);
  }
  u = std::clamp(u, piece.domain.lo(), piece.domain.hi());

  double y = piece.map(u);
  Side side = Side::Left;
  for (int k = 0; k < cell.n; ++k) {
    y = g_.branch(matched(side))(y);
    side = opposite(side);
  }
  return y;
}

double Conjugacy::inverse(double y, double tol) const {
  const double c = g_.a();
  const double d = g_.b();
  if (!(y >= c && y <= d)) {
    std::ostringstream os;
    os.precision(17);
    os << "y = " << y << " outside [" << c << ", " << d << "]";
    throw DomainError(os.str());
  }
  if (y == g_.t()) return f_.t();
  for (const Point& p : pins_.points) {
    if (p.y == y) return p.x;
  }
  // Boundary orbit points of g map back to the matching partition points.
  auto match = [y](const std::vector<double>& ys, const std::vector<double>& xs) -> std::optional<double> {
    const std::size_t n = std::min(ys.size(), xs.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (ys[i] == y) return xs[i];
    }
    return std::nullopt;
  };
  std::optional<double> hit;
  if (f_.family() == Family::IncreasingA) {
    const bool inc = orientation_ == Orientation::Increasing;
    hit = match(target_orbit_.left_points(), inc ? partition_.left_points() : partition_.right_points());
    if (!hit) hit = match(target_orbit_.right_points(), inc ? partition_.right_points() : partition_.left_points());
  } else {
    hit = match(target_orbit_.points(), partition_.points());
  }
  if (hit) return *hit;
  return monotone_inverse(*this, y, tol);
}

double monotone_inverse(const Homeomorphism& h, double y, double tol) {
  double lo = h.source().a();
  double hi = h.source().b();
  const bool inc = h.orientation() == Orientation::Increasing;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = h(mid);
    if (v == y || std::abs(v - y) < tol * std::abs(y)) return mid;
    if ((v < y) == inc) lo = mid;
    else hi = mid;
  }
  return std::abs(h(lo) - y) <= std::abs(h(hi) - y) ? lo : hi;
}

double evaluate(const Conjugacy& phi, double x) { return phi(x); }

double evaluate_inverse(const Conjugacy& phi, double y, double tol) { return phi.inverse(y, tol); }

}  // namespace jumpconj
