#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jumpconj/conjugacy.hpp"

namespace jumpconj {

struct VerifyParams {
  int grid_n = 10000;
  double tol = 1e-9;
  int surjectivity_targets = 1000;
  /// Boundary and true orbit pins are compared up to this many iterates.
  int orbit_depth = 60;
  /// Residual grid skips x with |f(x) - t| within this distance.
  double endpoint_eps = kDefaultEndpointEps;
  /// Keep (x, residual) for every grid point.
  bool keep_samples = false;
  /// When set, the residual grid is grid_n sorted uniform random points
  /// (endpoints included) instead of a uniform grid.
  std::optional<std::uint64_t> seed;
};

struct ResidualSample {
  double x;
  double residual;
};

struct VerificationReport {
  double max_residual = 0.0;
  double residual_argmax = 0.0;
  int grid_size = 0;
  bool monotonicity_ok = true;
  /// Equal consecutive values within 1e-12 of an endpoint image, accepted as rounding.
  int monotonicity_ties = 0;
  /// Max over target samples y of the distance from y to phi of phi^-1(y)
  /// and its neighbouring doubles.
  double surjectivity_max_gap = 0.0;
  double orbit_pin_max_error = 0.0;
  bool endpoint_values_ok = true;
  bool t_maps_to_s = true;
  /// Grid points whose evaluation threw; each one fails the report.
  int evaluation_failures = 0;
  std::string first_failure;
  bool passed = false;
  std::vector<ResidualSample> samples;
};

/// Checks phi o f = g o phi for phi from source() to target(). Never throws
/// on evaluation failures; they are counted in the report.
VerificationReport verify_conjugacy(const Homeomorphism& phi, const VerifyParams& params = {});
VerificationReport verify_conjugacy(const Conjugacy& phi, int grid_n, double tol);

/// (phi(x + h) - phi(x)) / h
double finite_difference_derivative(const Homeomorphism& phi, double x, double h);

struct ProductSample {
  Side side;
  double x;
  int n;
  double product;
  bool cauchy;
};

struct SmoothnessParams {
  int n = 60;
  int samples = 64;
  /// Cauchy test compares the truncations at n and n - lag.
  int lag = 10;
  double cauchy_tol = 1e-10;
};

struct SmoothnessReport {
  /// slope_match_at_t, left_endpoint_slope, right_endpoint_slope
  std::map<std::string, double> condition_a_residuals;
  std::vector<ProductSample> product_samples;
  double L1_estimate = 0.0;
  double L2_estimate = 0.0;
  double constancy_spread = 0.0;
  double fd_derivative_at_a = 0.0;
  double fd_step = 0.0;
  bool all_cauchy = true;
};

/// Family A, increasing orientation, f(t) < t only; anything else raises
/// ScopeError. Branches need analytic derivatives.
SmoothnessReport check_smoothness(const JumpMap& f, const JumpMap& g, const InitialHomeo& init,
                                  const SmoothnessParams& params);
SmoothnessReport check_smoothness(const JumpMap& f, const JumpMap& g, const InitialHomeo& init,
                                  int N = 60, int samples = 64);

}  // namespace jumpconj
