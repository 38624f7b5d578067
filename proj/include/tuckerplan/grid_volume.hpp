//
// tuckerplan : communication volume under a fixed grid
//
// With the tensor at node u block-distributed on grid g, the multiply along
// mode n leaves each processor holding partial sums for the whole mode-n
// extent of the output; a reduce-scatter brings every element to its owner
// at a per-element price of q_n - 1. Root and leaves move nothing.
//

#pragma once

#include <future>
#include <vector>

#include "tuckerplan/grid.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

struct NodeVolume {
  int node = -1;
  u64 ttm = 0;
  u64 regrid = 0;
};

struct VolumeReport {
  u64 total = 0;
  std::vector<NodeVolume> per_node; // internal nodes in id order
};

inline VolumeReport static_volume(const TtmTree& t, const ProblemSpec& s,
                                  const Grid& g, u64 procs) {
  validate_grid(g, s, procs);
  const NodeCards cards = node_cardinalities(t, s);
  VolumeReport r;
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    if (!t.is_internal(static_cast<int>(id))) continue;
    NodeVolume nv;
    nv.node = static_cast<int>(id);
    nv.ttm = checked_mul(g.q[t.nodes[id].mode] - 1, cards.out[id]);
    r.total = checked_add(r.total, nv.ttm);
    r.per_node.push_back(nv);
  }
  return r;
}

struct StaticGridResult {
  Grid grid;
  VolumeReport report;
};

// Least-volume grid, lexicographically first among ties. The scan over
// grids may be chunked across threads; chunks are reduced in grid order, so
// the result never depends on the thread count.
inline StaticGridResult optimal_static_grid(const TtmTree& t, const ProblemSpec& s,
                                            u64 procs, int threads = 1) {
  const std::vector<Grid> grids = enumerate_grids(procs, s);
  if (grids.empty())
    fail(Errc::no_valid_grid, "no grid with prod q = procs fits under K");
  const NodeCards cards = node_cardinalities(t, s);

  auto volume_of = [&](const Grid& g) {
    u64 v = 0;
    for (std::size_t id = 0; id < t.nodes.size(); ++id)
      if (t.is_internal(static_cast<int>(id)))
        v = checked_add(
            v, checked_mul(g.q[t.nodes[id].mode] - 1, cards.out[id]));
    return v;
  };

  std::size_t best = 0;
  u64 best_vol = volume_of(grids[0]);
  if (threads <= 1) {
    for (std::size_t i = 1; i < grids.size(); ++i) {
      const u64 v = volume_of(grids[i]);
      if (v < best_vol) {
        best_vol = v;
        best = i;
      }
    }
  } else {
    const std::size_t chunk = (grids.size() + threads - 1) / threads;
    std::vector<std::future<std::pair<u64, std::size_t>>> parts;
    for (std::size_t lo = 0; lo < grids.size(); lo += chunk) {
      const std::size_t hi = std::min(lo + chunk, grids.size());
      parts.push_back(std::async(std::launch::async, [&, lo, hi] {
        std::size_t arg = lo;
        u64 val = volume_of(grids[lo]);
        for (std::size_t i = lo + 1; i < hi; ++i) {
          const u64 v = volume_of(grids[i]);
          if (v < val) {
            val = v;
            arg = i;
          }
        }
        return std::make_pair(val, arg);
      }));
    }
    best_vol = kSaturated;
    for (auto& part : parts) { // chunk order = grid order, first min wins
      auto [val, arg] = part.get();
      if (val < best_vol) {
        best_vol = val;
        best = arg;
      }
    }
  }
  return StaticGridResult{grids[best], static_volume(t, s, grids[best], procs)};
}

} // namespace tuckerplan
