//
// tuckerplan : reference tree constructions
//
// Chain scheme: each output gets its own root chain that multiplies the
// other N-1 modes in a fixed order; nothing is shared. Orderings:
//   input    - mode index order
//   by_cost  - ascending K_n (cheap multiplies first)
//   by_ratio - ascending K_n / L_n (strongest shrink first)
// Balanced scheme: outputs are halved recursively; each half's subtree
// starts with a chain over the other half's modes, so the two halves share
// those products.
//

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "tuckerplan/problem.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

enum class ChainOrder { input, by_cost, by_ratio };

inline std::vector<int> chain_mode_order(const ProblemSpec& s, ChainOrder ord) {
  std::vector<int> modes(s.n_modes());
  std::iota(modes.begin(), modes.end(), 0);
  auto ratio_less = [&](int a, int b) {
    // K_a / L_a < K_b / L_b without rounding
    return static_cast<unsigned __int128>(s.K[a]) * s.L[b] <
           static_cast<unsigned __int128>(s.K[b]) * s.L[a];
  };
  switch (ord) {
    case ChainOrder::input:
      break;
    case ChainOrder::by_cost:
      std::stable_sort(modes.begin(), modes.end(),
                       [&](int a, int b) { return s.K[a] < s.K[b]; });
      break;
    case ChainOrder::by_ratio:
      std::stable_sort(modes.begin(), modes.end(), ratio_less);
      break;
  }
  return modes;
}

inline TtmTree chain_tree(const ProblemSpec& s, ChainOrder ord = ChainOrder::input) {
  validate_spec(s);
  const std::vector<int> order = chain_mode_order(s, ord);
  TtmTree t = make_tree(s.n_modes());
  for (int leaf = 0; leaf < s.n_modes(); ++leaf) {
    int at = 0;
    for (int m : order)
      if (m != leaf) at = t.add_node(NodeKind::mode, m, at);
    t.add_node(NodeKind::leaf, leaf, at);
  }
  return t;
}

namespace detail {

// Subtree producing the outputs in `outs` (ascending), assuming every mode
// outside `outs` is already multiplied on the path to `at`.
inline void balanced_subtree(TtmTree& t, const std::vector<int>& outs, int at) {
  if (outs.size() == 1) {
    t.add_node(NodeKind::leaf, outs[0], at);
    return;
  }
  const std::size_t half = (outs.size() + 1) / 2; // extra mode to the first half
  const std::vector<int> first(outs.begin(), outs.begin() + half);
  const std::vector<int> second(outs.begin() + half, outs.end());
  int at1 = at;
  for (int m : second) at1 = t.add_node(NodeKind::mode, m, at1);
  balanced_subtree(t, first, at1);
  int at2 = at;
  for (int m : first) at2 = t.add_node(NodeKind::mode, m, at2);
  balanced_subtree(t, second, at2);
}

} // namespace detail

inline TtmTree balanced_tree(const ProblemSpec& s) {
  validate_spec(s);
  std::vector<int> outs(s.n_modes());
  std::iota(outs.begin(), outs.end(), 0);
  TtmTree t = make_tree(s.n_modes());
  detail::balanced_subtree(t, outs, 0);
  return t;
}

} // namespace tuckerplan
