#pragma once

#include <span>
#include <vector>

namespace jumpconj::poly {

/// Horner evaluation; coefficients are in ascending degree.
double evaluate(std::span<const double> coeffs, double x);

/// Coefficients of the derivative (ascending degree). The derivative of a
/// constant is the zero polynomial `{0}`.
std::vector<double> derivative(std::span<const double> coeffs);

/// Degree after dropping trailing zero coefficients; -1 for the zero polynomial.
int degree(std::span<const double> coeffs);

/// Real roots in the open interval (lo, hi), ascending.
///
/// Roots are isolated recursively: between consecutive critical points the
/// polynomial is monotone, so each sign change is bracketed and bisected.
/// Critical points where the polynomial touches zero (even-multiplicity roots)
/// are reported too.
std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi);

}  // namespace jumpconj::poly
