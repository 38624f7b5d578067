//
// tuckerplan : processor grids
//
// P processors form an N-dimensional grid q with prod q_n = P. A grid is
// valid for a spec when q_n <= K_n for every mode, so each processor owns a
// non-empty block of every tensor the pass produces. Blocks follow the
// floor cut points floor(b * L / q).
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tuckerplan/checked.hpp"
#include "tuckerplan/errors.hpp"
#include "tuckerplan/problem.hpp"

namespace tuckerplan {

struct Grid {
  std::vector<u64> q;

  int n_modes() const { return static_cast<int>(q.size()); }
  bool operator==(const Grid&) const = default;
};

inline u64 grid_procs(const Grid& g) {
  u64 p = 1;
  for (u64 v : g.q) p = checked_mul(p, v);
  return p;
}

inline void validate_grid(const Grid& g, const ProblemSpec& s, u64 procs) {
  if (g.n_modes() != s.n_modes())
    fail(Errc::invalid_grid, "grid and spec mode counts differ");
  for (int m = 0; m < g.n_modes(); ++m) {
    if (g.q[m] < 1 || g.q[m] > s.K[m])
      fail(Errc::invalid_grid, "grid extent outside [1, K] at mode " + std::to_string(m), m);
  }
  if (grid_procs(g) != procs)
    fail(Errc::invalid_grid, "grid does not multiply out to the processor count");
}

// Number of N-dimensional grids with product P, ignoring the K bounds:
// for P = prod p_i^e_i this is prod C(e_i + N - 1, N - 1).
inline u64 grid_count(u64 procs, int n_modes) {
  if (procs == 0 || n_modes < 1)
    fail(Errc::bad_argument, "need procs >= 1 and modes >= 1");
  auto choose = [](u64 n, u64 k) {
    u64 r = 1;
    for (u64 i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
    return r;
  };
  u64 count = 1;
  u64 rem = procs;
  for (u64 p = 2; p <= rem / p; ++p) {
    if (rem % p) continue;
    u64 e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    count = checked_mul(count, choose(e + n_modes - 1, n_modes - 1));
  }
  if (rem > 1) count = checked_mul(count, static_cast<u64>(n_modes)); // e = 1
  return count;
}

namespace detail {

inline void grids_rec(const ProblemSpec& s, const std::vector<u64>& divisors,
                      int mode, u64 rem, Grid& cur, std::vector<Grid>& out) {
  const int n = s.n_modes();
  if (mode == n - 1) {
    if (rem <= s.K[mode]) {
      cur.q[mode] = rem;
      out.push_back(cur);
    }
    return;
  }
  for (u64 d : divisors) {
    if (d > s.K[mode]) break;
    if (rem % d) continue;
    cur.q[mode] = d;
    grids_rec(s, divisors, mode + 1, rem / d, cur, out);
  }
}

} // namespace detail

// All valid grids for the spec, in lexicographic order. Empty when P cannot
// be factored within the K bounds.
inline std::vector<Grid> enumerate_grids(u64 procs, const ProblemSpec& s) {
  validate_spec(s);
  if (procs == 0) fail(Errc::bad_argument, "need procs >= 1");
  std::vector<u64> divisors;
  for (u64 d = 1; d <= procs / d; ++d) {
    if (procs % d) continue;
    divisors.push_back(d);
    if (d != procs / d) divisors.push_back(procs / d);
  }
  std::sort(divisors.begin(), divisors.end());
  std::vector<Grid> out;
  Grid cur;
  cur.q.assign(s.n_modes(), 1);
  detail::grids_rec(s, divisors, 0, procs, cur, out);
  return out;
}

// Cut points of the block partition of [0, len) into parts parts.
inline std::vector<u64> block_bounds(u64 len, u64 parts) {
  std::vector<u64> cuts(parts + 1);
  for (u64 b = 0; b <= parts; ++b)
    cuts[b] = static_cast<u64>(static_cast<unsigned __int128>(b) * len / parts);
  return cuts;
}

// Index of the block containing coordinate c, inverse of block_bounds.
inline u64 block_of(u64 c, u64 len, u64 parts) {
  return static_cast<u64>(
      (static_cast<unsigned __int128>(c) * parts + parts - 1) / len);
}

} // namespace tuckerplan
