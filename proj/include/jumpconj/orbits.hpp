#pragma once

#include <vector>

#include "jumpconj/interval_map.hpp"

namespace jumpconj {

inline constexpr int kDefaultNMax = 200;
inline constexpr double kDefaultEndpointEps = 1e-13;

/// Truncated boundary orbits of the jump point and the fundamental-domain
/// partition they induce.
///
/// Family A keeps two sequences: f_l^n(t) (strictly decreasing to a) and
/// f_r^n(t) (strictly increasing to b). Family B keeps the single sequence
/// f_e^n(t), where f_e is f with the one-sided value `closure()` at t; with the
/// left closure its even terms decrease to a and its odd terms increase to b.
class OrbitPartition {
public:
  Family family() const { return family_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double t() const { return t_; }
  double endpoint_eps() const { return endpoint_eps_; }
  Side closure() const { return closure_; }

  /// A only.
  const std::vector<double>& left_points() const { return left_; }
  const std::vector<double>& right_points() const { return right_; }
  /// B only.
  const std::vector<double>& points() const { return points_; }

  /// Number of iterations performed (the longest sequence minus one).
  int depth() const;

private:
  friend OrbitPartition boundary_orbit_A(const JumpMap&, int, double);
  friend OrbitPartition boundary_orbit_B(const JumpMap&, int, double, Side);

  Family family_ = Family::IncreasingA;
  double a_ = 0.0;
  double b_ = 1.0;
  double t_ = 0.5;
  double endpoint_eps_ = kDefaultEndpointEps;
  Side closure_ = Side::Left;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> points_;
};

OrbitPartition boundary_orbit_A(const JumpMap& m, int n_max = kDefaultNMax,
                                double endpoint_eps = kDefaultEndpointEps);

/// `closure` selects the value used at t: Left gives f_e (f(t-0)), Right the
/// orbit through f(t+0). Only the left-closure partition can be passed to
/// `locate`.
OrbitPartition boundary_orbit_B(const JumpMap& m, int n_max = kDefaultNMax,
                                double endpoint_eps = kDefaultEndpointEps,
                                Side closure = Side::Left);

/// Partition cell addressing.
///
/// Family A: Left n is (f_l^{n+1}(t), f_l^n(t)], Right n is [f_r^n(t), f_r^{n+1}(t)).
/// Family B: Left n (n even) is [f_e^{n+2}(t), f_e^n(t)] and Right n (n odd)
/// is [f_e^n(t), f_e^{n+2}(t)], shared endpoints going to the smaller n; Gap is
/// the open cell (t, f_e(t)). t itself is Left 0.
struct CellIndex {
  enum class Region { Left, Right, Gap, EndpointA, EndpointB };
  Region region = Region::Left;
  int n = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Throws DomainError outside [a, b] and DepthExceeded beyond the truncated
/// orbit unless x is within endpoint_eps of a or b.
CellIndex locate(const OrbitPartition& p, double x);

}  // namespace jumpconj
