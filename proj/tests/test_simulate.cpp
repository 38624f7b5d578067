// Distribution replay: ledger bookkeeping, traced counts, and a hand-built
// multi-regrid scenario with every volume derived by hand.

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <vector>

#include "tuckerplan/grid_volume.hpp"
#include "tuckerplan/simulate.hpp"
#include "tuckerplan/tree_builders.hpp"
#include "tuckerplan/tree_cost.hpp"

namespace tp = tuckerplan;
using tp::u64;

namespace {

tp::Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const tp::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return tp::Errc::bad_argument;
}

// Independent owner oracle: blocks found by scanning floor cuts, ranks by
// mixed radix. Only for small extents (products stay far below 2^64).
u64 moved_oracle(const std::vector<u64>& ext, const tp::Grid& from, const tp::Grid& to) {
  const int n = static_cast<int>(ext.size());
  auto block_scan = [](u64 c, u64 len, u64 parts) {
    u64 b = 0;
    while ((b + 1) * len / parts <= c) ++b;
    return b;
  };
  u64 moved = 0;
  std::vector<u64> coord(n, 0);
  while (true) {
    u64 rf = 0, rt = 0;
    for (int m = 0; m < n; ++m) {
      rf = rf * from.q[m] + block_scan(coord[m], ext[m], from.q[m]);
      rt = rt * to.q[m] + block_scan(coord[m], ext[m], to.q[m]);
    }
    if (rf != rt) ++moved;
    int carry = n;
    while (carry > 0 && ++coord[carry - 1] == ext[carry - 1]) coord[--carry] = 0;
    if (carry == 0) break;
  }
  return moved;
}

// Four modes, two branches; the second branch pays for two mode products
// after its regrid while the first becomes communication-free.
struct RegridScenario {
  tp::ProblemSpec spec{{16, 16, 16, 64}, {8, 8, 8, 64}};
  tp::TtmTree tree = tp::make_tree(4);
  tp::DynamicGridScheme scheme;
  int a, b, c, d, e, f, g, h; // internal node ids

  RegridScenario() {
    a = tree.add_node(tp::NodeKind::mode, 0, 0);
    b = tree.add_node(tp::NodeKind::mode, 1, a);
    c = tree.add_node(tp::NodeKind::mode, 2, b);
    tree.add_node(tp::NodeKind::leaf, 3, c);
    d = tree.add_node(tp::NodeKind::mode, 3, b);
    tree.add_node(tp::NodeKind::leaf, 2, d);
    e = tree.add_node(tp::NodeKind::mode, 2, 0);
    f = tree.add_node(tp::NodeKind::mode, 3, e);
    g = tree.add_node(tp::NodeKind::mode, 0, f);
    tree.add_node(tp::NodeKind::leaf, 1, g);
    h = tree.add_node(tp::NodeKind::mode, 1, f);
    tree.add_node(tp::NodeKind::leaf, 0, h);
    tp::validate_tree(tree, spec);

    const tp::Grid start{{1, 1, 1, 64}};
    scheme.root = start;
    for (int id : {a, b, c, e}) scheme.node_grids[id] = start;
    scheme.node_grids[d] = tp::Grid{{8, 8, 1, 1}};
    const tp::Grid late{{2, 4, 8, 1}};
    for (int id : {f, g, h}) scheme.node_grids[id] = late;
  }
};

} // namespace

TEST(Simulation, UniformSchemeReproducesTheStaticLedger) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 25; ++iter) {
    tp::ProblemSpec s;
    const int n = 2 + static_cast<int>(rng() % 3);
    for (int m = 0; m < n; ++m) {
      const u64 len = 2 + rng() % 7;
      s.L.push_back(len);
      s.K.push_back(1 + rng() % len);
    }
    const u64 procs = 1 + rng() % 8;
    const std::vector<tp::Grid> grids = tp::enumerate_grids(procs, s);
    if (grids.empty()) continue;
    const tp::TtmTree t = iter % 2 ? tp::chain_tree(s) : tp::balanced_tree(s);
    const tp::Grid& grid = grids[rng() % grids.size()];
    const tp::SimLedger led =
        tp::simulate_distribution(t, s, tp::uniform_scheme(t, grid), procs, true);
    EXPECT_EQ(led.total_model_regrid, 0u);
    EXPECT_EQ(led.total_measured_regrid, 0u);
    EXPECT_EQ(led.total_model_ttm, tp::static_volume(t, s, grid, procs).total);
    EXPECT_EQ(led.total_measured_ttm, led.total_model_ttm);
    EXPECT_EQ(led.total_flops, tp::tree_cost(t, s).total_macs);
    EXPECT_EQ(led.peak_live, tp::tree_depth(t) + 1);
    for (const tp::NodeTrace& nt : led.nodes)
      EXPECT_EQ(nt.measured_ttm, nt.model_ttm) << "node " << nt.node;
  }
}

TEST(Simulation, HandBuiltRegridScenarioMatchesDeskArithmetic) {
  const RegridScenario sc;
  const tp::SimLedger led =
      tp::simulate_distribution(sc.tree, sc.spec, sc.scheme, 64, true);

  ASSERT_EQ(led.nodes.size(), 8u);
  auto at = [&](int id) {
    for (const tp::NodeTrace& nt : led.nodes)
      if (nt.node == id) return nt;
    ADD_FAILURE() << "no trace for node " << id;
    return tp::NodeTrace{};
  };

  // first branch rides the start grid for free, then buys one regrid
  for (int id : {sc.a, sc.b, sc.c, sc.e}) {
    EXPECT_EQ(at(id).model_ttm, 0u);
    EXPECT_EQ(at(id).model_regrid, 0u);
  }
  EXPECT_EQ(at(sc.d).model_ttm, 0u);
  EXPECT_EQ(at(sc.d).model_regrid, 65536u);
  EXPECT_EQ(at(sc.d).measured_regrid, 64512u); // 1/64 of the entries stay put

  // second regrid frees the mode-3 product but exposes modes 0 and 1
  EXPECT_EQ(at(sc.f).model_ttm, 0u);
  EXPECT_EQ(at(sc.f).model_regrid, 131072u);
  EXPECT_EQ(at(sc.f).measured_regrid, 129024u);
  EXPECT_EQ(at(sc.g).model_ttm, 65536u);
  EXPECT_EQ(at(sc.h).model_ttm, 3u * 65536u);

  EXPECT_EQ(led.total_model_ttm, 262144u);
  EXPECT_EQ(led.total_model_regrid, 196608u);
  EXPECT_EQ(led.total_measured_ttm, led.total_model_ttm);
  EXPECT_EQ(led.total_measured_regrid, 193536u);
  // 2^21 + 2^20 + 2^19 + 2^22 on the first subtree, 2^21 + 2^23 + 2^20 + 2^20
  // on the second
  EXPECT_EQ(led.total_flops, 20447232u);
  EXPECT_EQ(led.total_flops, tp::tree_cost(sc.tree, sc.spec).total_macs);
  EXPECT_EQ(led.peak_live, 4);

  // the ledger and the volume report account for the same plan
  const tp::VolumeReport vol = tp::scheme_volume(sc.tree, sc.spec, sc.scheme, 64);
  EXPECT_EQ(vol.total, led.total_model_ttm + led.total_model_regrid);
  EXPECT_EQ(vol.total, 458752u);
}

TEST(Simulation, MovedCountsMatchAnIndependentOwnerWalk) {
  // the two regrids of the scenario, on their exact tensor extents
  EXPECT_EQ(moved_oracle({8, 8, 16, 64}, tp::Grid{{1, 1, 1, 64}}, tp::Grid{{8, 8, 1, 1}}),
            64512u);
  EXPECT_EQ(moved_oracle({16, 16, 8, 64}, tp::Grid{{1, 1, 1, 64}}, tp::Grid{{2, 4, 8, 1}}),
            129024u);

  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    tp::ProblemSpec s;
    for (int m = 0; m < 3; ++m) {
      const u64 len = 2 + rng() % 6;
      s.L.push_back(len);
      s.K.push_back(len); // loose bound so more grids qualify
    }
    const u64 procs = std::vector<u64>{2, 4, 6}[rng() % 3];
    const std::vector<tp::Grid> grids = tp::enumerate_grids(procs, s);
    if (grids.size() < 2) continue;
    const tp::Grid& from = grids[rng() % grids.size()];
    const tp::Grid& to = grids[rng() % grids.size()];

    const tp::TtmTree t = tp::chain_tree(s);
    tp::DynamicGridScheme scheme = tp::uniform_scheme(t, from);
    const int first = t.nodes[0].children[0]; // regrid the first chain head
    scheme.node_grids[first] = to;
    for (int at = first; !t.nodes[at].children.empty();
         at = t.nodes[at].children[0])
      scheme.node_grids[at] = to;

    const tp::SimLedger led = tp::simulate_distribution(t, s, scheme, procs, true);
    const std::vector<u64> ext(s.L.begin(), s.L.end()); // chain head input is T
    const u64 want = from == to ? 0 : moved_oracle(ext, from, to);
    EXPECT_EQ(led.nodes[0].measured_regrid, want) << "iter " << iter;
    EXPECT_LE(led.nodes[0].measured_regrid, led.nodes[0].model_regrid);
  }
}

TEST(Simulation, MeasuredRegridNeverExceedsTheModel) {
  const RegridScenario sc;
  const tp::SimLedger led =
      tp::simulate_distribution(sc.tree, sc.spec, sc.scheme, 64, true);
  for (const tp::NodeTrace& nt : led.nodes) {
    EXPECT_LE(nt.measured_regrid, nt.model_regrid);
    EXPECT_EQ(nt.measured_ttm, nt.model_ttm);
  }
}

TEST(Simulation, TraceGuardsBigProblemsButModelModeStillRuns) {
  const tp::ProblemSpec s{{101, 101, 101}, {7, 7, 7}};
  const tp::TtmTree t = tp::chain_tree(s);
  const tp::DynamicGridScheme scheme = tp::uniform_scheme(t, tp::Grid{{7, 7, 1}});
  EXPECT_EQ(code_of([&] { tp::simulate_distribution(t, s, scheme, 49, true); }),
            tp::Errc::too_large);
  EXPECT_NO_THROW(tp::simulate_distribution(t, s, scheme, 49, false));

  const tp::ProblemSpec wide{{4, 4, 4}, {4, 4, 4}};
  const tp::TtmTree wt = tp::chain_tree(wide);
  EXPECT_EQ(code_of([&] {
              tp::simulate_distribution(
                  wt, wide, tp::uniform_scheme(wt, tp::Grid{{4, 4, 4}}), 128, true);
            }),
            tp::Errc::too_large);
}

TEST(Simulation, EveryProcessorOwnsWorkWhenGridsFit) {
  const RegridScenario sc;
  for (const auto& [id, grid] : sc.scheme.node_grids) {
    const std::vector<u64> ext = tp::detail::node_extents(sc.tree, sc.spec, id);
    EXPECT_EQ(tp::distinct_owner_count(ext, grid), 64u) << "node " << id;
  }
}

TEST(Simulation, MissingNodeAssignmentFailsUpFront) {
  RegridScenario sc;
  sc.scheme.node_grids.erase(sc.g);
  EXPECT_EQ(code_of([&] {
              tp::simulate_distribution(sc.tree, sc.spec, sc.scheme, 64, false);
            }),
            tp::Errc::missing_assignment);
}
