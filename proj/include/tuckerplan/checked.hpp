//
// tuckerplan : checked 64-bit arithmetic
//
// Planner quantities (cardinalities, flop counts, volumes) are exact unsigned
// integers. Every multiply/add that could leave 64 bits goes through here.
//

#pragma once

#include <cstdint>

#include "tuckerplan/errors.hpp"

namespace tuckerplan {

using u64 = std::uint64_t;

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(Errc::overflow, "64-bit overflow in product");
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    fail(Errc::overflow, "64-bit overflow in sum");
  return r;
}

// Saturating variants for minimization: branches whose value leaves 64 bits
// pin at kSaturated and lose to any representable branch; callers raise
// Errc::overflow only if the minimum itself saturated.
inline constexpr u64 kSaturated = ~u64{0};

inline u64 sat_mul(u64 a, u64 b) {
  u64 r;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

inline u64 sat_add(u64 a, u64 b) {
  u64 r;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

// a * b / c where b/c is a compression step known to divide exactly at the
// tensor level; the intermediate a*b may exceed 64 bits.
inline u64 mul_div_exact(u64 a, u64 b, u64 c) {
  unsigned __int128 wide = static_cast<unsigned __int128>(a) * b;
  if (wide % c != 0)
    fail(Errc::overflow, "inexact division in cardinality update");
  wide /= c;
  if (wide > ~u64{0})
    fail(Errc::overflow, "64-bit overflow in cardinality update");
  return static_cast<u64>(wide);
}

} // namespace tuckerplan
