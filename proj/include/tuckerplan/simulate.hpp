//
// tuckerplan : block-distribution walk-through
//
// Replays one pass of a plan over the block layout that a grid induces:
// every tensor is cut by the floor partition along each mode and a block
// lives on the processor whose grid coordinates are the block's, ranked
// row-major. Metadata only; no tensor values move.
//
// Per internal node the ledger carries the model predictions and, in trace
// mode, measurements taken off the block structure itself: reduce-scatter
// elements counted block by block, and regrid elements counted by walking
// every input element and comparing owners under the old and new grids.
//

#pragma once

#include <vector>

#include "tuckerplan/grid.hpp"
#include "tuckerplan/grid_dynamic.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

inline constexpr u64 kTraceMaxElements = 1'000'000;
inline constexpr u64 kTraceMaxProcs = 64;

struct NodeTrace {
  int node = -1;
  u64 flops = 0;          // K_n * |In_u|
  u64 model_ttm = 0;      // (q_n - 1) |Out_u|
  u64 model_regrid = 0;   // |In_u| if the grid changes, else 0
  u64 measured_ttm = 0;   // traced reduce-scatter element count
  u64 measured_regrid = 0; // traced owner-change count
};

struct SimLedger {
  bool traced = false;
  std::vector<NodeTrace> nodes; // internal nodes in id order
  u64 total_flops = 0;
  u64 total_model_ttm = 0;
  u64 total_model_regrid = 0;
  u64 total_measured_ttm = 0;
  u64 total_measured_regrid = 0;
  int peak_live = 0; // tensors alive under depth-first execution
};

// Static distribution as a scheme: one grid everywhere.
inline DynamicGridScheme uniform_scheme(const TtmTree& t, const Grid& g) {
  DynamicGridScheme scheme;
  scheme.root = g;
  for (std::size_t id = 0; id < t.nodes.size(); ++id)
    if (t.is_internal(static_cast<int>(id)))
      scheme.node_grids[static_cast<int>(id)] = g;
  return scheme;
}

namespace detail {

// Extents of the tensor at a node: K on multiplied modes, L elsewhere.
inline std::vector<u64> node_extents(const TtmTree& t, const ProblemSpec& s, int id) {
  std::vector<u64> ext(s.L.begin(), s.L.end());
  for (int at = id; at >= 0; at = t.nodes[at].parent)
    if (t.nodes[at].kind == NodeKind::mode) ext[t.nodes[at].mode] = s.K[t.nodes[at].mode];
  return ext;
}

inline u64 owner_rank(const std::vector<u64>& block, const Grid& g) {
  u64 rank = 0;
  for (std::size_t m = 0; m < block.size(); ++m) rank = rank * g.q[m] + block[m];
  return rank;
}

// Reduce-scatter elements for the multiply at a node, counted over the
// block structure of its output: every output element reaches its owner
// from the q_n - 1 other processors of its mode-n column.
inline u64 count_reduce_scatter(const std::vector<u64>& out_ext, const Grid& g, int mode) {
  const int n = static_cast<int>(out_ext.size());
  std::vector<std::vector<u64>> cuts(n);
  for (int m = 0; m < n; ++m) cuts[m] = block_bounds(out_ext[m], g.q[m]);
  u64 total = 0;
  std::vector<u64> block(n, 0);
  while (true) {
    u64 elems = 1;
    for (int m = 0; m < n; ++m)
      elems *= cuts[m][block[m] + 1] - cuts[m][block[m]];
    total += (g.q[mode] - 1) * elems;
    int carry = n;
    while (carry > 0 && ++block[carry - 1] == g.q[carry - 1]) block[--carry] = 0;
    if (carry == 0) break;
  }
  return total;
}

// Elements of a tensor with extents ext whose owner differs between grids.
inline u64 count_moved(const std::vector<u64>& ext, const Grid& from, const Grid& to) {
  const int n = static_cast<int>(ext.size());
  u64 moved = 0;
  std::vector<u64> coord(n, 0);
  while (true) {
    u64 rank_from = 0, rank_to = 0;
    for (int m = 0; m < n; ++m) {
      rank_from = rank_from * from.q[m] + block_of(coord[m], ext[m], from.q[m]);
      rank_to = rank_to * to.q[m] + block_of(coord[m], ext[m], to.q[m]);
    }
    if (rank_from != rank_to) ++moved;
    int carry = n;
    while (carry > 0 && ++coord[carry - 1] == ext[carry - 1]) coord[--carry] = 0;
    if (carry == 0) break;
  }
  return moved;
}

} // namespace detail

// Processors that own at least one element; equals P whenever every grid
// extent is at most the matching tensor extent.
inline u64 distinct_owner_count(const std::vector<u64>& ext, const Grid& g) {
  u64 blocks = 1;
  for (std::size_t m = 0; m < ext.size(); ++m)
    blocks = checked_mul(blocks, std::min(ext[m], g.q[m]));
  return blocks;
}

inline SimLedger simulate_distribution(const TtmTree& t, const ProblemSpec& s,
                                       const DynamicGridScheme& scheme, u64 procs,
                                       bool trace = false) {
  const NodeCards cards = node_cardinalities(t, s);
  if (trace) {
    if (input_cardinality(s) > kTraceMaxElements)
      fail(Errc::too_large, "trace mode is guarded to 1e6 elements");
    if (procs > kTraceMaxProcs)
      fail(Errc::too_large, "trace mode is guarded to 64 processors");
  }

  SimLedger ledger;
  ledger.traced = trace;
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    if (!t.is_internal(static_cast<int>(id))) continue;
    const auto it = scheme.node_grids.find(static_cast<int>(id));
    if (it == scheme.node_grids.end())
      fail(Errc::missing_assignment,
           "no grid for internal node " + std::to_string(id));
    validate_grid(it->second, s, procs);
    const Grid& grid = it->second;
    const int parent = t.nodes[id].parent;
    const Grid& parent_grid = t.nodes[parent].kind == NodeKind::root
                                  ? scheme.root
                                  : scheme.node_grids.at(parent);
    const int mode = t.nodes[id].mode;

    NodeTrace nt;
    nt.node = static_cast<int>(id);
    nt.flops = checked_mul(s.K[mode], cards.in[id]);
    nt.model_ttm = checked_mul(grid.q[mode] - 1, cards.out[id]);
    nt.model_regrid = grid == parent_grid ? 0 : cards.in[id];
    if (trace) {
      const std::vector<u64> out_ext =
          detail::node_extents(t, s, static_cast<int>(id));
      nt.measured_ttm = detail::count_reduce_scatter(out_ext, grid, mode);
      if (nt.model_regrid) {
        std::vector<u64> in_ext = out_ext;
        in_ext[mode] = s.L[mode]; // input still has the full extent on mode
        nt.measured_regrid = detail::count_moved(in_ext, parent_grid, grid);
      }
    }
    ledger.total_flops = checked_add(ledger.total_flops, nt.flops);
    ledger.total_model_ttm = checked_add(ledger.total_model_ttm, nt.model_ttm);
    ledger.total_model_regrid =
        checked_add(ledger.total_model_regrid, nt.model_regrid);
    ledger.total_measured_ttm += nt.measured_ttm;
    ledger.total_measured_regrid += nt.measured_regrid;
    ledger.nodes.push_back(nt);
  }
  validate_grid(scheme.root, s, procs);
  ledger.peak_live = tree_depth(t) + 1;
  return ledger;
}

} // namespace tuckerplan
