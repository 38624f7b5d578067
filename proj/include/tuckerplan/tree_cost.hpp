//
// tuckerplan : tree cost model
//
// A mode node labelled n turns a tensor of in_card elements into one of
// in_card * K_n / L_n elements at a price of K_n * in_card multiply-adds.
// Root and leaves are free. All quantities are exact u64 with overflow
// checks.
//

#pragma once

#include <vector>

#include "tuckerplan/checked.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

struct NodeCards {
  std::vector<u64> in;  // indexed by node id
  std::vector<u64> out;
};

inline NodeCards node_cardinalities(const TtmTree& t, const ProblemSpec& s) {
  validate_tree(t, s);
  NodeCards cards;
  cards.in.resize(t.nodes.size());
  cards.out.resize(t.nodes.size());
  const u64 total = input_cardinality(s);
  // nodes are stored parent-before-child, so one forward pass suffices
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    const TreeNode& node = t.nodes[id];
    const u64 in = node.parent < 0 ? total : cards.out[node.parent];
    cards.in[id] = in;
    cards.out[id] = node.kind == NodeKind::mode
                        ? mul_div_exact(in, s.K[node.mode], s.L[node.mode])
                        : in;
  }
  return cards;
}

struct CostReport {
  u64 total_macs = 0;
  std::vector<u64> per_node_macs; // 0 for root and leaves
  int n_internal = 0;
  int depth = 0; // longest run of mode nodes on any path
};

inline CostReport tree_cost(const TtmTree& t, const ProblemSpec& s) {
  const NodeCards cards = node_cardinalities(t, s);
  CostReport r;
  r.per_node_macs.resize(t.nodes.size(), 0);
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    if (!t.is_internal(static_cast<int>(id))) continue;
    const u64 macs = checked_mul(s.K[t.nodes[id].mode], cards.in[id]);
    r.per_node_macs[id] = macs;
    r.total_macs = checked_add(r.total_macs, macs);
    ++r.n_internal;
  }
  r.depth = tree_depth(t);
  return r;
}

namespace detail {

inline u64 cost_below(const TtmTree& t, const ProblemSpec& s, int id, u64 in) {
  const TreeNode& node = t.nodes[id];
  u64 total = 0;
  u64 out = in;
  if (node.kind == NodeKind::mode) {
    total = checked_mul(s.K[node.mode], in);
    out = mul_div_exact(in, s.K[node.mode], s.L[node.mode]);
  }
  for (int c : node.children) total = checked_add(total, cost_below(t, s, c, out));
  return total;
}

} // namespace detail

// Total multiply-adds without building the per-node report; no validation,
// no allocation. Meant for tight enumeration loops over trees that are
// valid by construction.
inline u64 tree_cost_total(const TtmTree& t, const ProblemSpec& s) {
  return detail::cost_below(t, s, 0, input_cardinality(s));
}

} // namespace tuckerplan
