#pragma once

#include "jumpconj/interval_map.hpp"

namespace fixtures {

using jumpconj::Branch;
using jumpconj::Family;
using jumpconj::Interval;
using jumpconj::JumpMap;

inline JumpMap affine_map(double a, double b, double t, double l0, double l1, double r0, double r1,
                          double v, Family fam) {
  return JumpMap(Interval(a, b), t, Branch::affine(l0, l1, Interval(a, t)),
                 Branch::affine(r0, r1, Interval(t, b)), v, fam);
}

// Worked example 1: f on [0,1] with t = 1/4, g with s = 1/2.
inline JumpMap ex1_f() { return affine_map(0, 1, 0.25, 0, 0.5, 0.5, 0.5, 3.0 / 16, Family::IncreasingA); }
inline JumpMap ex1_g() { return affine_map(0, 1, 0.5, 0, 0.25, 0.75, 0.25, 5.0 / 16, Family::IncreasingA); }
inline JumpMap ex1_f_attains() { return ex1_f().with_value_at_t(0.125); }

// Worked example 2: decreasing maps, t = 1/2 and s = 1/4.
inline JumpMap ex2_f() {
  return affine_map(0, 1, 0.5, 1, -23.0 / 40, 23.0 / 40, -23.0 / 40, 17.0 / 40, Family::DecreasingB);
}
inline JumpMap ex2_g() {
  return affine_map(0, 1, 0.25, 1, -1.0 / 8, 1.0 / 8, -1.0 / 8, 53.0 / 272, Family::DecreasingB);
}

// Equal branch slopes: g = h f h^{-1} with h(x) = 2 + 3x.
inline JumpMap smooth_f() { return affine_map(0, 1, 0.4, 0, 0.5, 0.5, 0.5, 0.3, Family::IncreasingA); }
inline JumpMap smooth_g() { return affine_map(2, 5, 3.2, 1, 0.5, 2.5, 0.5, 2.9, Family::IncreasingA); }

}  // namespace fixtures
