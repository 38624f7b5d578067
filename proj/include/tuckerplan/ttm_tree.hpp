//
// tuckerplan : multiplication trees
//
// A tree describes how one pass of mode products is shared across the N
// outputs. The root holds the input tensor; each internal node multiplies
// its parent's tensor along its mode; leaf F_n marks the tensor that is
// complete in every mode except n.
//
// Validity: exactly one root, exactly N leaves with distinct modes, and on
// every root-to-leaf path for leaf n the internal labels are exactly
// {0..N-1} minus n, each once. Duplicate-labelled sibling subtrees are
// structurally valid (the naive chain scheme has them); canonical form,
// which merges such siblings, is a separate predicate.
//

#pragma once

#include <string>
#include <vector>

#include "tuckerplan/errors.hpp"
#include "tuckerplan/mode_set.hpp"
#include "tuckerplan/problem.hpp"

namespace tuckerplan {

enum class NodeKind { root, mode, leaf };

struct TreeNode {
  NodeKind kind;
  int mode = -1; // label for mode nodes, output index for leaves
  int parent = -1;
  std::vector<int> children;
};

struct TtmTree {
  int n_modes = 0;
  std::vector<TreeNode> nodes; // nodes[0] is the root

  int add_node(NodeKind kind, int mode, int parent) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode{kind, mode, parent, {}});
    if (parent >= 0) nodes[parent].children.push_back(id);
    return id;
  }

  // Drops the most recently added node; valid only while it is still the
  // last child of its parent and has no children (enumeration backtracking).
  void pop_node() {
    const int parent = nodes.back().parent;
    if (parent >= 0) nodes[parent].children.pop_back();
    nodes.pop_back();
  }

  bool is_internal(int id) const { return nodes[id].kind == NodeKind::mode; }
  bool is_leaf(int id) const { return nodes[id].kind == NodeKind::leaf; }
};

inline TtmTree make_tree(int n_modes) {
  TtmTree t;
  t.n_modes = n_modes;
  t.add_node(NodeKind::root, -1, -1);
  return t;
}

namespace detail {

inline void check_paths(const TtmTree& t, int id, ModeSet seen,
                        std::vector<int>& leaf_seen) {
  const TreeNode& node = t.nodes[id];
  if (node.kind == NodeKind::leaf) {
    if (!node.children.empty())
      fail(Errc::bad_tree, "leaf with children");
    if (node.mode < 0 || node.mode >= t.n_modes)
      fail(Errc::bad_tree, "leaf mode out of range", node.mode);
    if (leaf_seen[node.mode]++)
      fail(Errc::bad_tree, "duplicate leaf", node.mode);
    if (!(seen == ModeSet::full(t.n_modes).without(node.mode)))
      fail(Errc::bad_tree,
           "path to leaf " + std::to_string(node.mode) +
               " does not cover the complementary modes",
           node.mode);
    return;
  }
  if (node.kind == NodeKind::mode) {
    if (node.mode < 0 || node.mode >= t.n_modes)
      fail(Errc::bad_tree, "label out of range", node.mode);
    if (seen.contains(node.mode))
      fail(Errc::bad_tree, "mode repeated along a path", node.mode);
    seen = seen.with(node.mode);
  }
  if (node.children.empty())
    fail(Errc::bad_tree, "internal node without children");
  for (int c : node.children) {
    if (t.nodes[c].parent != id)
      fail(Errc::bad_tree, "parent link mismatch");
    check_paths(t, c, seen, leaf_seen);
  }
}

} // namespace detail

inline void validate_tree(const TtmTree& t, const ProblemSpec& s) {
  if (t.n_modes != s.n_modes())
    fail(Errc::shape_mismatch, "tree and spec mode counts differ");
  if (t.nodes.empty() || t.nodes[0].kind != NodeKind::root || t.nodes[0].parent != -1)
    fail(Errc::bad_tree, "node 0 must be the root");
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    if (t.nodes[i].kind == NodeKind::root)
      fail(Errc::bad_tree, "multiple roots");
    if (t.nodes[i].parent < 0 || t.nodes[i].parent >= static_cast<int>(i))
      fail(Errc::bad_tree, "nodes must be stored parent first");
  }
  std::vector<int> leaf_seen(t.n_modes, 0);
  detail::check_paths(t, 0, ModeSet(), leaf_seen);
  for (int m = 0; m < t.n_modes; ++m)
    if (!leaf_seen[m])
      fail(Errc::bad_tree, "missing leaf", m);
}

// Canonical form: no two children of one node head mode subtrees with the
// same label (such siblings are mergeable without changing any output).
inline bool is_canonical(const TtmTree& t) {
  for (const TreeNode& node : t.nodes) {
    std::uint32_t labels = 0;
    for (int c : node.children) {
      if (!t.is_internal(c)) continue;
      const std::uint32_t bit = std::uint32_t{1} << t.nodes[c].mode;
      if (labels & bit) return false;
      labels |= bit;
    }
  }
  return true;
}

namespace detail {

// Merges the child lists of all of `srcs` (equal-labelled originals) under
// `dst`, grouping equal-labelled mode children recursively.
inline void merge_children(const TtmTree& in, const std::vector<int>& srcs,
                           TtmTree& out, int dst) {
  std::vector<std::vector<int>> groups; // first-seen order
  for (int src : srcs) {
    for (int c : in.nodes[src].children) {
      bool placed = false;
      if (in.is_internal(c)) {
        for (auto& g : groups) {
          if (in.is_internal(g[0]) && in.nodes[g[0]].mode == in.nodes[c].mode) {
            g.push_back(c);
            placed = true;
            break;
          }
        }
      }
      if (!placed) groups.push_back({c});
    }
  }
  for (const auto& g : groups) {
    const TreeNode& head = in.nodes[g[0]];
    const int id = out.add_node(head.kind, head.mode, dst);
    if (head.kind != NodeKind::leaf) merge_children(in, g, out, id);
  }
}

} // namespace detail

// Repeatedly merges equal-labelled sibling subtrees; the result is
// canonical and computes the same outputs at no greater cost.
inline TtmTree canonicalize(const TtmTree& t) {
  TtmTree out = make_tree(t.n_modes);
  detail::merge_children(t, {0}, out, 0);
  return out;
}

// Longest chain of mode nodes from root to any leaf.
inline int tree_depth(const TtmTree& t) {
  int best = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    if (t.is_internal(id)) ++depth;
    if (depth > best) best = depth;
    for (int c : t.nodes[id].children) stack.push_back({c, depth});
  }
  return best;
}

} // namespace tuckerplan
