//
// tuckerplan : per-node grid assignment
//
// A scheme gives every internal node its own grid; a node whose grid
// differs from its parent's pays a full redistribution of its input
// (|In_u| elements) before multiplying. The root's grid only anchors its
// children. dvol(u, g) is the least downstream volume for the subtree at u
// given that u's parent handed it grid g:
//
//   stay:   (g_n - 1)|Out_u| + sum_child dvol(child, g)
//   regrid: |In_u| + min_g' [ (g'_n - 1)|Out_u| + sum_child dvol(child, g') ]
//
// The regrid target is shared by all parent grids, so it is found once per
// node. Ties keep the parent grid (stay) and the lexicographically first
// regrid target. The legacy objective picks the regrid target by the child
// sum alone, ignoring the node's own reduce-scatter term.
//

#pragma once

#include <map>
#include <vector>

#include "tuckerplan/grid.hpp"
#include "tuckerplan/grid_volume.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

struct DynamicGridScheme {
  Grid root;
  std::map<int, Grid> node_grids; // one entry per internal node
};

inline VolumeReport scheme_volume(const TtmTree& t, const ProblemSpec& s,
                                  const DynamicGridScheme& scheme, u64 procs) {
  validate_grid(scheme.root, s, procs);
  const NodeCards cards = node_cardinalities(t, s);
  VolumeReport r;
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    if (!t.is_internal(static_cast<int>(id))) continue;
    const auto it = scheme.node_grids.find(static_cast<int>(id));
    if (it == scheme.node_grids.end())
      fail(Errc::missing_assignment,
           "no grid for internal node " + std::to_string(id));
    validate_grid(it->second, s, procs);
    const int parent = t.nodes[id].parent;
    const Grid& parent_grid = t.nodes[parent].kind == NodeKind::root
                                  ? scheme.root
                                  : scheme.node_grids.at(parent);
    NodeVolume nv;
    nv.node = static_cast<int>(id);
    if (!(it->second == parent_grid)) nv.regrid = cards.in[id];
    nv.ttm = checked_mul(it->second.q[t.nodes[id].mode] - 1, cards.out[id]);
    r.total = checked_add(r.total, checked_add(nv.ttm, nv.regrid));
    r.per_node.push_back(nv);
  }
  return r;
}

struct DynamicOptions {
  bool legacy_regrid_target = false; // pick regrid grid by child sum alone
};

struct DynamicSchemeResult {
  DynamicGridScheme scheme;
  VolumeReport report;
};

namespace detail {

struct DynamicDp {
  const TtmTree& tree;
  const ProblemSpec& spec;
  const std::vector<Grid>& grids;
  const NodeCards& cards;
  DynamicOptions opts;

  // per internal node, indexed by grid: least downstream volume
  std::vector<std::vector<u64>> dvol;
  std::vector<u64> regrid_best;        // |In_u| excluded
  std::vector<std::size_t> regrid_arg; // target grid index

  DynamicDp(const TtmTree& t, const ProblemSpec& s, const std::vector<Grid>& g,
            const NodeCards& c, DynamicOptions o)
      : tree(t), spec(s), grids(g), cards(c), opts(o),
        dvol(t.nodes.size()), regrid_best(t.nodes.size(), 0),
        regrid_arg(t.nodes.size(), 0) {}

  u64 child_sum(int id, std::size_t gi) const {
    u64 sum = 0;
    for (int c : tree.nodes[id].children)
      if (tree.is_internal(c)) sum = checked_add(sum, dvol[c][gi]);
    return sum;
  }

  u64 ttm_term(int id, std::size_t gi) const {
    return checked_mul(grids[gi].q[tree.nodes[id].mode] - 1, cards.out[id]);
  }

  void fill(int id) {
    for (int c : tree.nodes[id].children)
      if (tree.is_internal(c)) fill(c);
    if (!tree.is_internal(id)) return;

    u64 best = kSaturated;
    std::size_t arg = 0;
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
      const u64 key = opts.legacy_regrid_target
                          ? child_sum(id, gi)
                          : checked_add(ttm_term(id, gi), child_sum(id, gi));
      if (key < best) {
        best = key;
        arg = gi;
      }
    }
    regrid_arg[id] = arg;
    regrid_best[id] = checked_add(ttm_term(id, arg), child_sum(id, arg));

    dvol[id].resize(grids.size());
    const u64 regrid_cost = checked_add(cards.in[id], regrid_best[id]);
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
      const u64 stay = checked_add(ttm_term(id, gi), child_sum(id, gi));
      dvol[id][gi] = stay <= regrid_cost ? stay : regrid_cost;
    }
  }

  void assign(int id, std::size_t parent_gi, DynamicGridScheme& scheme) const {
    if (!tree.is_internal(id)) return;
    const u64 stay = checked_add(ttm_term(id, parent_gi), child_sum(id, parent_gi));
    const u64 regrid_cost = checked_add(cards.in[id], regrid_best[id]);
    const std::size_t gi = stay <= regrid_cost ? parent_gi : regrid_arg[id];
    scheme.node_grids[id] = grids[gi];
    for (int c : tree.nodes[id].children) assign(c, gi, scheme);
  }
};

} // namespace detail

inline DynamicSchemeResult optimal_dynamic_scheme(const TtmTree& t,
                                                  const ProblemSpec& s, u64 procs,
                                                  DynamicOptions opts = {}) {
  const std::vector<Grid> grids = enumerate_grids(procs, s);
  if (grids.empty())
    fail(Errc::no_valid_grid, "no grid with prod q = procs fits under K");
  const NodeCards cards = node_cardinalities(t, s);
  detail::DynamicDp dp(t, s, grids, cards, opts);
  dp.fill(0);

  // root: free choice of anchor grid, no regrid charge
  std::size_t root_gi = 0;
  u64 best = kSaturated;
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const u64 v = dp.child_sum(0, gi);
    if (v < best) {
      best = v;
      root_gi = gi;
    }
  }

  DynamicSchemeResult r;
  r.scheme.root = grids[root_gi];
  for (int c : t.nodes[0].children) dp.assign(c, root_gi, r.scheme);
  r.report = scheme_volume(t, s, r.scheme, procs);
  return r;
}

// Exhaustive minimum over every grid assignment (root plus each internal
// node); guarded because the space is |grids|^(internals + 1).
inline DynamicSchemeResult brute_force_dynamic(const TtmTree& t, const ProblemSpec& s,
                                               u64 procs, u64 guard = 10'000'000) {
  const std::vector<Grid> grids = enumerate_grids(procs, s);
  if (grids.empty())
    fail(Errc::no_valid_grid, "no grid with prod q = procs fits under K");
  const NodeCards cards = node_cardinalities(t, s);

  std::vector<int> internals;
  for (std::size_t id = 0; id < t.nodes.size(); ++id)
    if (t.is_internal(static_cast<int>(id))) internals.push_back(static_cast<int>(id));

  const std::size_t slots = internals.size() + 1; // slot 0 is the root grid
  u64 space = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    space = sat_mul(space, grids.size());
    if (space > guard)
      fail(Errc::too_large, "assignment space exceeds the brute-force guard");
  }

  std::vector<std::size_t> slot_of(t.nodes.size(), 0);
  for (std::size_t i = 0; i < internals.size(); ++i) slot_of[internals[i]] = i + 1;

  std::vector<std::size_t> idx(slots, 0), best_idx;
  u64 best = kSaturated;
  while (true) {
    u64 total = 0;
    for (std::size_t i = 0; i < internals.size(); ++i) {
      const int id = internals[i];
      const int parent = t.nodes[id].parent;
      const std::size_t gi = idx[i + 1];
      const std::size_t pg = idx[slot_of[parent]]; // root maps to slot 0
      total = checked_add(
          total, checked_mul(grids[gi].q[t.nodes[id].mode] - 1, cards.out[id]));
      if (gi != pg) total = checked_add(total, cards.in[id]);
    }
    if (total < best) {
      best = total;
      best_idx = idx;
    }
    std::size_t carry = slots;
    while (carry > 0 && ++idx[carry - 1] == grids.size()) idx[--carry] = 0;
    if (carry == 0) break;
  }

  DynamicSchemeResult r;
  r.scheme.root = grids[best_idx[0]];
  for (std::size_t i = 0; i < internals.size(); ++i)
    r.scheme.node_grids[internals[i]] = grids[best_idx[i + 1]];
  r.report = scheme_volume(t, s, r.scheme, procs);
  return r;
}

} // namespace tuckerplan
