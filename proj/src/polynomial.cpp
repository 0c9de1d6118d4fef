#include "jumpconj/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace jumpconj::poly {

double evaluate(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(std::span<const double> coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<double> out(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs[k];
  return out;
}

int degree(std::span<const double> coeffs) {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

namespace {

double bisect_root(std::span<const double> p, double lo, double hi) {
  double f_lo = evaluate(p, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = evaluate(p, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Magnitude scale of p on [lo, hi], used to decide when a critical value is
// numerically zero.
double coefficient_scale(std::span<const double> p, double lo, double hi) {
  const double r = std::max({1.0, std::abs(lo), std::abs(hi)});
  double scale = 0.0;
  double power = 1.0;
  for (double c : p) {
    scale += std::abs(c) * power;
    power *= r;
  }
  return scale;
}

}  // namespace

std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi) {
  const int deg = degree(coeffs);
  if (deg <= 0 || !(lo < hi)) return {};
  const std::span<const double> p = coeffs.first(static_cast<std::size_t>(deg) + 1);
  if (deg == 1) {
    const double r = -p[0] / p[1];
    if (r > lo && r < hi) return {r};
    return {};
  }

  const std::vector<double> dp = derivative(p);
  const std::vector<double> critical = real_roots(dp, lo, hi);
  const double zero_tol = 1e-14 * coefficient_scale(p, lo, hi);

  std::vector<double> knots;
  knots.reserve(critical.size() + 2);
  knots.push_back(lo);
  knots.insert(knots.end(), critical.begin(), critical.end());
  knots.push_back(hi);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double u = knots[i];
    const double v = knots[i + 1];
    const double fu = evaluate(p, u);
    const double fv = evaluate(p, v);
    if (i > 0 && std::abs(fu) <= zero_tol) {
      roots.push_back(u);
      continue;
    }
    if ((fu < 0.0 && fv > 0.0) || (fu > 0.0 && fv < 0.0)) {
      if (i + 2 < knots.size() && std::abs(fv) <= zero_tol) continue;  // picked up at v
      roots.push_back(bisect_root(p, u, v));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::erase_if(roots, [&](double r) { return !(r > lo && r < hi); });
  return roots;
}

}  // namespace jumpconj::poly
