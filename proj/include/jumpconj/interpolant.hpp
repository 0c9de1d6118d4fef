#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "jumpconj/interval_map.hpp"

namespace jumpconj {

struct Point {
  double x;
  double y;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class InterpolantKind { PiecewiseAffine, MonotoneCubic };
std::string_view to_string(InterpolantKind k);
InterpolantKind interpolant_kind_from_string(std::string_view s);

/// Strictly monotone interpolant through a set of knots.
///
/// MonotoneCubic is a C1 Hermite cubic. Interior slopes use the weighted
/// harmonic mean of the neighbouring secants (Fritsch-Butland), endpoint slopes
/// are either prescribed or the adjacent secant. Every segment is checked
/// against the Fritsch-Carlson box 0 <= m/secant <= 3, which guarantees
/// monotonicity.
class MonotoneInterpolant {
public:
  /// Throws PinOrderError unless x is strictly increasing and y strictly monotone.
  static MonotoneInterpolant piecewise_affine(std::vector<Point> knots);

  /// Additionally throws InitError when a prescribed endpoint slope breaks
  /// monotonicity.
  static MonotoneInterpolant monotone_cubic(std::vector<Point> knots,
                                            std::optional<double> slope_lo = std::nullopt,
                                            std::optional<double> slope_hi = std::nullopt);

  /// Rebuilds a cubic from explicit knot slopes (used when reloading a
  /// serialized interpolant).
  static MonotoneInterpolant monotone_cubic_with_slopes(std::vector<Point> knots,
                                                        std::vector<double> slopes);

  InterpolantKind kind() const { return kind_; }
  const std::vector<Point>& knots() const { return knots_; }
  /// Knot slopes (cubic only; empty for piecewise-affine).
  const std::vector<double>& slopes() const { return slopes_; }
  bool increasing() const { return knots_.back().y > knots_.front().y; }
  Interval domain() const { return Interval(knots_.front().x, knots_.back().x); }

  /// x is clamped to the knot range; knot abscissae return their ordinates exactly.
  double operator()(double x) const;

  /// At an interior knot the segment to its right is used; at the last knot
  /// the last segment.
  double derivative(double x) const;

private:
  MonotoneInterpolant(InterpolantKind kind, std::vector<Point> knots, std::vector<double> slopes);
  std::size_t segment(double x) const;

  InterpolantKind kind_;
  std::vector<Point> knots_;
  std::vector<double> slopes_;
};

}  // namespace jumpconj
