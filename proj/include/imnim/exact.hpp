// exact.hpp
//
// Integer helpers for certifying floors of quadratic irrationals
// (u + sqrt(D)) / q without trusting floating point at the boundary.

#ifndef IMNIM_EXACT_HPP
#define IMNIM_EXACT_HPP

#include <cmath>
#include <cstdint>

namespace imnim::exact {

using Wide = __int128;

// floor(sqrt(n)) for n >= 0.
inline Wide isqrt(Wide n) {
  if (n <= 0) return 0;
  auto guess = static_cast<Wide>(std::sqrt(static_cast<long double>(n)));
  while (guess * guess > n) --guess;
  while ((guess + 1) * (guess + 1) <= n) ++guess;
  return guess;
}

inline Wide floor_div(Wide num, Wide den) {
  Wide q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// floor((u + sqrt(d)) / q) for q > 0, d >= 0. Exact whether or not d is a
// perfect square: with s = isqrt(d), s <= sqrt(d) < s+1, so the numerator lies
// in [u+s, u+s+1) and division by a positive integer keeps the floor.
inline Wide floor_quadratic(Wide u, Wide d, Wide q) { return floor_div(u + isqrt(d), q); }

// Sign of (x + y*sqrt(d)) - z for y >= 0, d >= 0, evaluated exactly.
// Returns -1, 0 or +1.
inline int compare_sqrt(Wide x, Wide y, Wide d, Wide z) {
  // x + y*sqrt(d) ? z   <=>   y*sqrt(d) ? z - x
  const Wide rhs = z - x;
  const Wide lhs_sq = y * y * d;
  if (rhs < 0) return 1;
  const Wide rhs_sq = rhs * rhs;
  if (lhs_sq < rhs_sq) return -1;
  if (lhs_sq > rhs_sq) return 1;
  return 0;
}

}  // namespace imnim::exact

#endif  // IMNIM_EXACT_HPP
