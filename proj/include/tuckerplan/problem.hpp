//
// tuckerplan : problem specification
//
// A problem is a pair of per-mode extents: input lengths L and output ranks
// K with 1 <= K_n <= L_n. Multiplying along mode n scales the element count
// by the exact rational K_n / L_n; that pair is never collapsed to a float.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tuckerplan/checked.hpp"
#include "tuckerplan/errors.hpp"
#include "tuckerplan/mode_set.hpp"

namespace tuckerplan {

// Largest representable input: product of lengths capped at 2^62.
inline constexpr u64 kMaxElements = u64{1} << 62;

struct ProblemSpec {
  std::vector<u64> L; // input extent per mode
  std::vector<u64> K; // output extent per mode

  int n_modes() const { return static_cast<int>(L.size()); }
};

// Exact per-mode compression ratio K_n / L_n.
struct Ratio {
  u64 num;
  u64 den;
};

inline void validate_spec(const ProblemSpec& s) {
  const int n = s.n_modes();
  if (n == 0 || s.K.size() != s.L.size())
    fail(Errc::bad_dims, "spec needs matching non-empty L and K");
  if (n > kMaxModes)
    fail(Errc::bad_dims, "at most 16 modes supported");
  u64 total = 1;
  for (int m = 0; m < n; ++m) {
    if (s.L[m] == 0)
      fail(Errc::bad_dims, "zero length at mode " + std::to_string(m), m);
    if (s.K[m] < 1 || s.K[m] > s.L[m])
      fail(Errc::k_too_large, "K out of [1, L] at mode " + std::to_string(m), m);
    total = checked_mul(total, s.L[m]);
  }
  if (total > kMaxElements)
    fail(Errc::overflow, "input exceeds 2^62 elements");
}

inline u64 cost_factor(const ProblemSpec& s, int mode) {
  if (mode < 0 || mode >= s.n_modes())
    fail(Errc::bad_mode, "mode out of range", mode);
  return s.K[mode];
}

inline Ratio compression_factor(const ProblemSpec& s, int mode) {
  if (mode < 0 || mode >= s.n_modes())
    fail(Errc::bad_mode, "mode out of range", mode);
  return Ratio{s.K[mode], s.L[mode]};
}

inline u64 input_cardinality(const ProblemSpec& s) {
  u64 total = 1;
  for (u64 l : s.L) total = checked_mul(total, l);
  return total;
}

inline u64 core_cardinality(const ProblemSpec& s) {
  u64 total = 1;
  for (u64 k : s.K) total = checked_mul(total, k);
  return total;
}

// Element count after the modes in `done` have been multiplied:
// prod_{n in done} K_n * prod_{n not in done} L_n.
inline u64 partial_cardinality(const ProblemSpec& s, ModeSet done) {
  u64 total = 1;
  for (int m = 0; m < s.n_modes(); ++m)
    total = checked_mul(total, done.contains(m) ? s.K[m] : s.L[m]);
  return total;
}

} // namespace tuckerplan
