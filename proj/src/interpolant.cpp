#include "jumpconj/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jumpconj {

std::string_view to_string(InterpolantKind k) {
  return k == InterpolantKind::PiecewiseAffine ? "piecewise_affine" : "monotone_cubic";
}

InterpolantKind interpolant_kind_from_string(std::string_view s) {
  if (s == "piecewise_affine" || s == "PiecewiseAffine") return InterpolantKind::PiecewiseAffine;
  if (s == "monotone_cubic" || s == "MonotoneCubic") return InterpolantKind::MonotoneCubic;
  throw ArgumentError("unknown interpolant kind '" + std::string(s) + "'");
}

namespace {

void check_knots(const std::vector<Point>& knots) {
  if (knots.size() < 2) throw PinOrderError("an interpolant needs at least two knots");
  for (const auto& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.y)) throw PinOrderError("knots must be finite");
  }
  const bool up = knots[1].y > knots[0].y;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto& p = knots[i];
    const auto& q = knots[i + 1];
    const bool ok = q.x > p.x && (up ? q.y > p.y : q.y < p.y);
    if (!ok) {
      std::ostringstream os;
      os.precision(17);
      os << "knots are not strictly monotone: (" << p.x << ", " << p.y << ") then (" << q.x
         << ", " << q.y << ")";
      throw PinOrderError(os.str());
    }
  }
}

double secant(const Point& p, const Point& q) { return (q.y - p.y) / (q.x - p.x); }

void check_cubic_slopes(const std::vector<Point>& knots, const std::vector<double>& m) {
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double d = secant(knots[i], knots[i + 1]);
    const double alpha = m[i] / d;
    const double beta = m[i + 1] / d;
    // Relative slack for slopes computed in floating point.
    constexpr double slack = 1e-12;
    if (!(alpha >= -slack && beta >= -slack && alpha <= 3.0 + slack && beta <= 3.0 + slack)) {
      std::ostringstream os;
      os.precision(17);
      os << "cubic slopes (" << m[i] << ", " << m[i + 1] << ") on [" << knots[i].x << ", "
         << knots[i + 1].x << "] break monotonicity (secant " << d << ")";
      throw InitError(os.str());
    }
  }
}

}  // namespace

MonotoneInterpolant::MonotoneInterpolant(InterpolantKind kind, std::vector<Point> knots,
                                         std::vector<double> slopes)
    : kind_(kind), knots_(std::move(knots)), slopes_(std::move(slopes)) {}

MonotoneInterpolant MonotoneInterpolant::piecewise_affine(std::vector<Point> knots) {
  check_knots(knots);
  return MonotoneInterpolant(InterpolantKind::PiecewiseAffine, std::move(knots), {});
}

MonotoneInterpolant MonotoneInterpolant::monotone_cubic(std::vector<Point> knots,
                                                        std::optional<double> slope_lo,
                                                        std::optional<double> slope_hi) {
  check_knots(knots);
  const std::size_t n = knots.size();
  std::vector<double> m(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = knots[i].x - knots[i - 1].x;
    const double h1 = knots[i + 1].x - knots[i].x;
    const double d0 = secant(knots[i - 1], knots[i]);
    const double d1 = secant(knots[i], knots[i + 1]);
    const double w0 = 2.0 * h1 + h0;
    const double w1 = h1 + 2.0 * h0;
    m[i] = d0 == d1 ? d0 : (w0 + w1) / (w0 / d0 + w1 / d1);
  }
  m.front() = slope_lo.value_or(secant(knots[0], knots[1]));
  m.back() = slope_hi.value_or(secant(knots[n - 2], knots[n - 1]));
  for (double s : {m.front(), m.back()}) {
    if (!std::isfinite(s)) throw InitError("endpoint slopes must be finite");
  }
  check_cubic_slopes(knots, m);
  return MonotoneInterpolant(InterpolantKind::MonotoneCubic, std::move(knots), std::move(m));
}

MonotoneInterpolant MonotoneInterpolant::monotone_cubic_with_slopes(std::vector<Point> knots,
                                                                    std::vector<double> slopes) {
  check_knots(knots);
  if (slopes.size() != knots.size()) throw InitError("one slope per knot is required");
  check_cubic_slopes(knots, slopes);
  return MonotoneInterpolant(InterpolantKind::MonotoneCubic, std::move(knots), std::move(slopes));
}

std::size_t MonotoneInterpolant::segment(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(i, knots_.size() - 2);
}

double MonotoneInterpolant::operator()(double x) const {
  if (x <= knots_.front().x) return knots_.front().y;
  if (x >= knots_.back().x) return knots_.back().y;
  const std::size_t i = segment(x);
  const Point& p = knots_[i];
  const Point& q = knots_[i + 1];
  if (x == p.x) return p.y;
  const double h = q.x - p.x;
  const double s = (x - p.x) / h;
  if (kind_ == InterpolantKind::PiecewiseAffine) return p.y + s * (q.y - p.y);

  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * p.y + h10 * h * slopes_[i] + h01 * q.y + h11 * h * slopes_[i + 1];
}

double MonotoneInterpolant::derivative(double x) const {
  const double xc = std::clamp(x, knots_.front().x, knots_.back().x);
  const std::size_t i = segment(xc);
  const Point& p = knots_[i];
  const Point& q = knots_[i + 1];
  const double h = q.x - p.x;
  if (kind_ == InterpolantKind::PiecewiseAffine) return (q.y - p.y) / h;

  const double s = (xc - p.x) / h;
  const double s2 = s * s;
  return (6.0 * s2 - 6.0 * s) / h * p.y + (3.0 * s2 - 4.0 * s + 1.0) * slopes_[i] +
         (-6.0 * s2 + 6.0 * s) / h * q.y + (3.0 * s2 - 2.0 * s) * slopes_[i + 1];
}

}  // namespace jumpconj
