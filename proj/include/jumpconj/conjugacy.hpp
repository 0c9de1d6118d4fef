#pragma once

#include <optional>
#include <vector>

#include "jumpconj/interpolant.hpp"
#include "jumpconj/interval_map.hpp"
#include "jumpconj/orbits.hpp"

namespace jumpconj {

/// Graph points every conjugacy of the given orientation passes through,
/// sorted by x.
struct PinnedPoints {
  Orientation orientation = Orientation::Increasing;
  std::vector<Point> points;

  /// Pin with abscissa exactly x, if any.
  std::optional<double> image_of(double x) const;
};

/// Throws NotConjugate unless `decide_pair(f, g)` admits orientation `o`.
PinnedPoints pinned_points(const JumpMap& f, const JumpMap& g, Orientation o,
                           double eq_tol = kDefaultEqTol);

/// One piece of an initial homeomorphism: the free choice on a fundamental cell.
struct InitPiece {
  Interval domain;
  Interval target;
  MonotoneInterpolant map;
};

/// Family A: two pieces, on [f_l(t), t] and [t, f_r(t)]. Family B: one piece
/// on [f_e^2(t), t].
struct InitialHomeo {
  Orientation orientation = Orientation::Increasing;
  std::vector<InitPiece> pieces;

  InterpolantKind kind() const { return pieces.front().map.kind(); }
};

struct EndpointSlopes {
  std::optional<double> lo;
  std::optional<double> hi;
};

/// How to choose the initial homeomorphism: the required pins plus any extra
/// points (the free part of the choice), joined by the given interpolant.
struct InitSpec {
  InterpolantKind kind = InterpolantKind::PiecewiseAffine;
  std::vector<Point> extra_points;
  /// Per piece, in domain order. Only used by MonotoneCubic.
  std::vector<EndpointSlopes> endpoint_slopes;
};

InitialHomeo make_initial_homeo(const JumpMap& f, const JumpMap& g, Orientation o,
                                const InitSpec& spec, double eq_tol = kDefaultEqTol);

InitialHomeo default_initial_homeo(const JumpMap& f, const JumpMap& g, Orientation o,
                                   InterpolantKind kind = InterpolantKind::PiecewiseAffine);

/// Endpoint slopes for a family A cubic init that make the slope-matching
/// equations hold with common slope `slope_at_t` at the jump point.
std::vector<EndpointSlopes> matched_endpoint_slopes(const JumpMap& f, const JumpMap& g,
                                                    double slope_at_t);

struct EvalParams {
  double inv_tol = 1e-13;
  int n_max = kDefaultNMax;
  double endpoint_eps = kDefaultEndpointEps;
};

struct BuildOptions {
  EvalParams eval;
  double eq_tol = kDefaultEqTol;
  /// Reject maps that fail `validate_jump_map`.
  bool validate_maps = true;
  /// Reject user inits that miss a pin. Turning this off is only useful for
  /// diagnosing what a wrong init does.
  bool check_init_pins = true;
};

/// A homeomorphism from the domain of `source()` to that of `target()`.
class Homeomorphism {
public:
  virtual ~Homeomorphism() = default;
  virtual double operator()(double x) const = 0;
  virtual double inverse(double y, double tol) const = 0;
  virtual Orientation orientation() const = 0;
  virtual const JumpMap& source() const = 0;
  virtual const JumpMap& target() const = 0;
};

/// A conjugacy from f to g, evaluated by pulling x back to a fundamental cell
/// with inverse branches of f, applying the initial homeomorphism, and pushing
/// forward with the matching branches of g. Immutable; evaluation is
/// thread-safe.
class Conjugacy final : public Homeomorphism {
public:
  double operator()(double x) const override;
  double inverse(double y, double tol) const override;
  Orientation orientation() const override { return orientation_; }
  const JumpMap& source() const override { return f_; }
  const JumpMap& target() const override { return g_; }

  const JumpMap& f() const { return f_; }
  const JumpMap& g() const { return g_; }
  const InitialHomeo& init() const { return init_; }
  const OrbitPartition& partition() const { return partition_; }
  /// Boundary orbit of s under the g-branches matched to f's partition.
  const OrbitPartition& target_orbit() const { return target_orbit_; }
  const PinnedPoints& pins() const { return pins_; }
  const EvalParams& params() const { return params_; }

private:
  friend Conjugacy build_conjugacy_A(const JumpMap&, const JumpMap&, std::optional<InitialHomeo>,
                                     const BuildOptions&);
  friend Conjugacy build_conjugacy_B(const JumpMap&, const JumpMap&, std::optional<InitialHomeo>,
                                     const BuildOptions&);

  Conjugacy(JumpMap f, JumpMap g, Orientation o, InitialHomeo init, OrbitPartition partition,
            OrbitPartition target_orbit, PinnedPoints pins, EvalParams params);

  Side matched(Side s) const {
    return orientation_ == Orientation::Increasing ? s : opposite(s);
  }
  double endpoint_image(bool at_a) const;
  double eval_family_a(const CellIndex& cell, double x) const;
  double eval_family_b(const CellIndex& cell, double x) const;

  JumpMap f_;
  JumpMap g_;
  Orientation orientation_;
  InitialHomeo init_;
  OrbitPartition partition_;
  OrbitPartition target_orbit_;
  PinnedPoints pins_;
  EvalParams params_;
};

Conjugacy build_conjugacy_A(const JumpMap& f, const JumpMap& g,
                            std::optional<InitialHomeo> init = std::nullopt,
                            const BuildOptions& options = {});
Conjugacy build_conjugacy_B(const JumpMap& f, const JumpMap& g,
                            std::optional<InitialHomeo> init = std::nullopt,
                            const BuildOptions& options = {});
/// Dispatches on the family.
Conjugacy build_conjugacy(const JumpMap& f, const JumpMap& g,
                          std::optional<InitialHomeo> init = std::nullopt,
                          const BuildOptions& options = {});

double evaluate(const Conjugacy& phi, double x);
double evaluate_inverse(const Conjugacy& phi, double y, double tol);

/// The inverse of a conjugacy from f to g, viewed as a conjugacy from g to f.
class InverseConjugacy final : public Homeomorphism {
public:
  explicit InverseConjugacy(Conjugacy phi, double tol = 0.0) : phi_(std::move(phi)), tol_(tol) {}

  double operator()(double y) const override { return phi_.inverse(y, tol_); }
  double inverse(double x, double) const override { return phi_(x); }
  Orientation orientation() const override { return phi_.orientation(); }
  const JumpMap& source() const override { return phi_.g(); }
  const JumpMap& target() const override { return phi_.f(); }

private:
  Conjugacy phi_;
  double tol_;
};

/// Bisection inverse of a monotone function on its source interval. Stops
/// once |h(x) - y| < tol * |y|, otherwise runs to full precision and returns
/// the bracket end with the smaller residual.
double monotone_inverse(const Homeomorphism& h, double y, double tol);

}  // namespace jumpconj
