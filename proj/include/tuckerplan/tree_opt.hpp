//
// tuckerplan : minimum-cost tree search
//
// State of the search: P = modes already multiplied on the path, Q = outputs
// this subtree still owes, R = the remaining modes (available to multiply
// but also owed by subtrees elsewhere). opt(P,Q) is the least cost to finish
// Q from a tensor of partial_cardinality(P) elements:
//
//   opt(P,Q) = 0                                   if |Q| = 1 and R empty
//   reuse n in R:  K_n * |T[P]| + opt(P+n, Q)
//   split Q1+Q2:   opt(P, Q1) + opt(P, Q2)         (each side re-sees R + other side)
//
// Ties prefer reuse over split, then the smallest mode, then the smallest
// Q1 bitmask (Q1 is the side holding Q's lowest mode). With those rules the
// reconstruction always yields a binary tree in canonical form.
//

#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "tuckerplan/checked.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

namespace detail {

enum class Choice : std::uint8_t { base, reuse, split };

struct DpEntry {
  u64 cost = 0;
  Choice choice = Choice::base;
  std::uint8_t reuse_mode = 0;
  std::uint16_t split_q1 = 0;
};

struct TreeDp {
  const ProblemSpec& spec;
  ModeSet all;
  std::unordered_map<std::uint32_t, DpEntry> memo;
  bool greedy_reuse; // diagnostic mode: split only once R is exhausted

  explicit TreeDp(const ProblemSpec& s, bool greedy = false)
      : spec(s), all(ModeSet::full(s.n_modes())), greedy_reuse(greedy) {}

  static std::uint32_t key(ModeSet p, ModeSet q) {
    return p.bits() | (q.bits() << 16);
  }

  const DpEntry& solve(ModeSet p, ModeSet q) {
    const std::uint32_t k = key(p, q);
    if (auto it = memo.find(k); it != memo.end()) return it->second;

    const ModeSet r = all - p - q;
    DpEntry e;
    if (q.count() == 1 && r.empty()) {
      e.cost = 0;
      e.choice = Choice::base;
      return memo.emplace(k, e).first->second;
    }

    e.cost = kSaturated;
    const u64 card = partial_cardinality(spec, p);
    for (int n : r) {
      const u64 c =
          sat_add(sat_mul(spec.K[n], card), solve(p.with(n), q).cost);
      if (c < e.cost) {
        e.cost = c;
        e.choice = Choice::reuse;
        e.reuse_mode = static_cast<std::uint8_t>(n);
      }
    }
    if (q.count() >= 2 && (!greedy_reuse || r.empty())) {
      const int low = q.lowest();
      const std::uint32_t rest = q.without(low).bits();
      for (std::uint32_t sub = 0; sub != rest; sub = (sub - rest) & rest) {
        const ModeSet q1 = ModeSet(sub).with(low);
        const ModeSet q2 = q - q1;
        const u64 c = sat_add(solve(p, q1).cost, solve(p, q2).cost);
        if (c < e.cost) {
          e.cost = c;
          e.choice = Choice::split;
          e.split_q1 = static_cast<std::uint16_t>(q1.bits());
        }
      }
    }
    return memo.emplace(k, e).first->second;
  }

  void realize(ModeSet p, ModeSet q, int host, TtmTree& t) {
    const DpEntry e = solve(p, q);
    switch (e.choice) {
      case Choice::base:
        t.add_node(NodeKind::leaf, q.lowest(), host);
        break;
      case Choice::reuse: {
        const int n = e.reuse_mode;
        const int v = t.add_node(NodeKind::mode, n, host);
        realize(p.with(n), q, v, t);
        break;
      }
      case Choice::split: {
        const ModeSet q1 = ModeSet(e.split_q1);
        realize(p, q1, host, t);
        realize(p, q - q1, host, t);
        break;
      }
    }
  }
};

} // namespace detail

struct OptimalTreeResult {
  TtmTree tree;
  u64 total_macs = 0;
  std::size_t dp_states = 0;
};

inline OptimalTreeResult optimal_tree(const ProblemSpec& s) {
  validate_spec(s);
  detail::TreeDp dp(s);
  const u64 cost = dp.solve(ModeSet(), ModeSet::full(s.n_modes())).cost;
  if (cost == kSaturated)
    fail(Errc::overflow, "optimal cost not representable in 64 bits");
  OptimalTreeResult r;
  r.tree = make_tree(s.n_modes());
  dp.realize(ModeSet(), ModeSet::full(s.n_modes()), 0, r.tree);
  r.total_macs = cost;
  r.dp_states = dp.memo.size();
  return r;
}

// Cost of the best tree a reuse-greedy policy can reach (splits allowed only
// after R empties). Exceeds optimal_tree exactly on inputs where splitting
// while reusable modes remain is the better move.
inline u64 optimal_cost_reuse_greedy(const ProblemSpec& s) {
  validate_spec(s);
  detail::TreeDp dp(s, /*greedy=*/true);
  const u64 cost = dp.solve(ModeSet(), ModeSet::full(s.n_modes())).cost;
  if (cost == kSaturated)
    fail(Errc::overflow, "cost not representable in 64 bits");
  return cost;
}

inline constexpr int kMaxEnumerationModes = 5;

namespace detail {

struct WorkItem {
  ModeSet p;
  ModeSet q;
  int host;
};

struct TreeEnumerator {
  ModeSet all;
  TtmTree tree;
  std::vector<WorkItem> work;
  const std::function<void(const TtmTree&)>& emit;

  TreeEnumerator(int n, const std::function<void(const TtmTree&)>& fn)
      : all(ModeSet::full(n)), tree(make_tree(n)), emit(fn) {}

  // Expands one pending subtree through every alternative; the work stack
  // and tree are restored before returning.
  void step() {
    if (work.empty()) {
      emit(tree);
      return;
    }
    const WorkItem item = work.back();
    work.pop_back();
    const ModeSet r = all - item.p - item.q;

    if (item.q.count() == 1 && r.empty()) {
      tree.add_node(NodeKind::leaf, item.q.lowest(), item.host);
      step();
      tree.pop_node();
    } else {
      for (int n : r) {
        const int v = tree.add_node(NodeKind::mode, n, item.host);
        work.push_back({item.p.with(n), item.q, v});
        step();
        work.pop_back();
        tree.pop_node();
      }
      if (item.q.count() >= 2) {
        const int low = item.q.lowest();
        const std::uint32_t rest = item.q.without(low).bits();
        for (std::uint32_t sub = 0; sub != rest; sub = (sub - rest) & rest) {
          const ModeSet q1 = ModeSet(sub).with(low);
          const ModeSet q2 = item.q - q1;
          for (int n1 : r | q2) {
            for (int n2 : r | q1) {
              if (n1 == n2) continue; // equal-labelled siblings merge away
              const int v1 = tree.add_node(NodeKind::mode, n1, item.host);
              const int v2 = tree.add_node(NodeKind::mode, n2, item.host);
              work.push_back({item.p.with(n1), q1, v1});
              work.push_back({item.p.with(n2), q2, v2});
              step();
              work.pop_back();
              work.pop_back();
              tree.pop_node();
              tree.pop_node();
            }
          }
        }
      }
    }
    work.push_back(item);
  }
};

} // namespace detail

// Visits every canonical binary tree for the spec exactly once. The tree
// reference is reused between calls; copy it to keep it.
inline void for_each_binary_tree(const ProblemSpec& s,
                                 const std::function<void(const TtmTree&)>& fn) {
  validate_spec(s);
  if (s.n_modes() > kMaxEnumerationModes)
    fail(Errc::too_large, "tree enumeration is guarded to 5 modes");
  detail::TreeEnumerator en(s.n_modes(), fn);
  en.work.push_back({ModeSet(), ModeSet::full(s.n_modes()), 0});
  en.step();
}

namespace detail {

// Number of ways to finish a state with q owed outputs and r free modes;
// the counting twin of the enumerator above.
inline u64 count_states(int q, int r, std::vector<std::vector<u64>>& memo) {
  u64& slot = memo[q][r];
  if (slot != kSaturated) return slot;
  u64 total = (q == 1 && r == 0) ? 1 : 0;
  if (r > 0)
    total = checked_add(
        total, checked_mul(static_cast<u64>(r), count_states(q, r - 1, memo)));
  if (q >= 2) {
    // heads(a, b) = ways for a side owing a outputs with b free modes,
    // forced to open with a reuse: b * count(a, b - 1)
    auto heads = [&](int a, int b) {
      return checked_mul(static_cast<u64>(b), count_states(a, b - 1, memo));
    };
    u64 choose = 1; // C(q-1, k-1)
    for (int k = 1; k <= q - 1; ++k) {
      u64 pairs = checked_mul(heads(k, r + q - k), heads(q - k, r + k));
      // both heads reusing the same free mode would merge; subtract
      const u64 dup = checked_mul(
          static_cast<u64>(r),
          checked_mul(count_states(k, r + q - k - 1, memo),
                      count_states(q - k, r + k - 1, memo)));
      pairs -= dup;
      total = checked_add(total, checked_mul(choose, pairs));
      choose = choose * static_cast<u64>(q - 1 - k + 1) / static_cast<u64>(k);
    }
  }
  slot = total;
  return total;
}

} // namespace detail

// Closed-form count of canonical binary trees on n modes; cross-checks the
// enumerator without materializing trees.
inline u64 count_binary_trees(int n) {
  if (n < 1 || n > kMaxModes)
    fail(Errc::bad_dims, "mode count out of range");
  std::vector<std::vector<u64>> memo(
      n + 1, std::vector<u64>(2 * n + 1, kSaturated));
  return detail::count_states(n, 0, memo);
}

} // namespace tuckerplan
