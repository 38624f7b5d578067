// JSON round-trips, the on-disk label convention, and tensor files.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

#include "tuckerplan/serialize.hpp"
#include "tuckerplan/tree_builders.hpp"
#include "tuckerplan/tree_opt.hpp"

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

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST(SpecJson, RoundTripsAndValidates) {
  const tp::ProblemSpec s{{6, 5, 4}, {3, 2, 2}};
  const tp::ProblemSpec back = tp::spec_from_json(tp::spec_to_json(s));
  EXPECT_EQ(back.L, s.L);
  EXPECT_EQ(back.K, s.K);
  EXPECT_EQ(tp::spec_to_json(s).dump(), R"({"K":[3,2,2],"L":[6,5,4]})");
  EXPECT_EQ(code_of([] { tp::spec_from_json(tp::json{{"L", {4}}}); }),
            tp::Errc::bad_argument);
  EXPECT_EQ(code_of([] {
              tp::spec_from_json(tp::json{{"L", {4}}, {"K", {5}}});
            }),
            tp::Errc::k_too_large); // validation runs on load
}

TEST(TreeJson, LabelsAreOneBasedOnDisk) {
  const tp::ProblemSpec s{{4, 4}, {2, 2}};
  const tp::TtmTree t = tp::chain_tree(s);
  // two chains: M2 over F1 and M1 over F2
  EXPECT_EQ(tp::tree_to_json(t).dump(),
            R"({"children":[{"children":[{"label":"F1"}],"label":"M2"},)"
            R"({"children":[{"label":"F2"}],"label":"M1"}],"label":"T"})");
}

TEST(TreeJson, RoundTripsEveryBuilder) {
  const tp::ProblemSpec s{{8, 6, 5, 4}, {4, 3, 2, 2}};
  for (const tp::TtmTree& t :
       {tp::chain_tree(s), tp::balanced_tree(s), tp::optimal_tree(s).tree}) {
    const tp::TtmTree back = tp::tree_from_json(tp::tree_to_json(t));
    ASSERT_EQ(back.nodes.size(), t.nodes.size());
    EXPECT_NO_THROW(tp::validate_tree(back, s));
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      EXPECT_EQ(back.nodes[i].kind, t.nodes[i].kind);
      EXPECT_EQ(back.nodes[i].mode, t.nodes[i].mode);
      EXPECT_EQ(back.nodes[i].parent, t.nodes[i].parent);
    }
  }
}

TEST(TreeJson, RejectsMalformedLabels) {
  using tp::json;
  EXPECT_EQ(code_of([] { tp::tree_from_json(json{{"label", "X"}}); }),
            tp::Errc::bad_argument);
  EXPECT_EQ(code_of([] { tp::tree_from_json(json{{"label", "M"}}); }),
            tp::Errc::bad_argument);
  EXPECT_EQ(code_of([] { tp::tree_from_json(json{{"label", "M0"}}); }),
            tp::Errc::bad_argument); // modes start at 1 on disk
  EXPECT_EQ(code_of([] { tp::tree_from_json(json{{"label", "M2x"}}); }),
            tp::Errc::bad_argument);
  EXPECT_EQ(code_of([] { tp::tree_from_json(json{{"label", "F1"}}); }),
            tp::Errc::bad_argument); // top node must be T
  EXPECT_EQ(code_of([] {
              tp::tree_from_json(json{
                  {"label", "T"},
                  {"children", {json{{"label", "T"}}}}});
            }),
            tp::Errc::bad_argument); // nested root
}

TEST(GridJson, PlainArraysRoundTrip) {
  const tp::Grid g{{2, 4, 8, 1}};
  EXPECT_EQ(tp::grid_to_json(g).dump(), "[2,4,8,1]");
  EXPECT_EQ(tp::grid_from_json(tp::grid_to_json(g)), g);
  EXPECT_EQ(code_of([] { tp::grid_from_json(tp::json::array()); }),
            tp::Errc::bad_argument);
  EXPECT_EQ(code_of([] { tp::grid_from_json(tp::json{{"q", 2}}); }),
            tp::Errc::bad_argument);
}

TEST(SchemeJson, NodeKeysAreDecimalIds) {
  tp::DynamicGridScheme s;
  s.root = tp::Grid{{1, 2}};
  s.node_grids[1] = tp::Grid{{2, 1}};
  s.node_grids[4] = tp::Grid{{1, 2}};
  const tp::json j = tp::scheme_to_json(s);
  EXPECT_EQ(j.dump(), R"({"nodes":{"1":[2,1],"4":[1,2]},"root":[1,2]})");
  const tp::DynamicGridScheme back = tp::scheme_from_json(j);
  EXPECT_EQ(back.root, s.root);
  EXPECT_EQ(back.node_grids, s.node_grids);

  tp::json bad = j;
  bad["nodes"]["0"] = tp::json::array({2, 1}); // id 0 is the root, not a node
  EXPECT_EQ(code_of([&] { tp::scheme_from_json(bad); }), tp::Errc::bad_argument);
  tp::json alpha = j;
  alpha["nodes"]["x1"] = tp::json::array({2, 1});
  EXPECT_EQ(code_of([&] { tp::scheme_from_json(alpha); }), tp::Errc::bad_argument);
}

TEST(ReportJson, ShapesStayStable) {
  const tp::ProblemSpec s{{4, 4, 4}, {2, 2, 2}};
  const tp::TtmTree t = tp::chain_tree(s);
  const tp::json cost = tp::cost_to_json(tp::tree_cost(t, s));
  EXPECT_EQ(cost.at("total_macs").get<u64>(), 576u);
  EXPECT_EQ(cost.at("internal_nodes").get<int>(), 6);
  EXPECT_EQ(cost.at("depth").get<int>(), 2);
  EXPECT_EQ(cost.at("per_node").size(), 6u);

  const tp::VolumeReport vol = tp::static_volume(t, s, tp::Grid{{1, 2, 2}}, 4);
  const tp::json vj = tp::volume_to_json(vol);
  EXPECT_EQ(vj.at("total").get<u64>(), 80u);
  EXPECT_EQ(vj.at("per_node").size(), 6u);
  EXPECT_EQ(vj.at("per_node")[0].at("node").get<int>(), 1);

  const tp::SimLedger untraced =
      tp::simulate_distribution(t, s, tp::uniform_scheme(t, tp::Grid{{1, 2, 2}}), 4);
  const tp::json lj = tp::ledger_to_json(untraced);
  EXPECT_FALSE(lj.at("traced").get<bool>());
  EXPECT_FALSE(lj.contains("total_measured_ttm"));
  EXPECT_EQ(lj.at("total_model_ttm").get<u64>(), 80u);
  const tp::SimLedger traced =
      tp::simulate_distribution(t, s, tp::uniform_scheme(t, tp::Grid{{1, 2, 2}}), 4, true);
  EXPECT_EQ(tp::ledger_to_json(traced).at("total_measured_ttm").get<u64>(), 80u);
}

TEST(TensorFiles, HeaderPlusRawDataRoundTrips) {
  const std::string path = temp_path("tuckerplan_roundtrip.tensor");
  const tp::DenseTensor t = tp::random_tensor({3, 4, 2}, 99);
  tp::write_tensor(path, t);
  const tp::DenseTensor back = tp::read_tensor(path);
  EXPECT_EQ(back.dims, t.dims);
  EXPECT_EQ(back.data, t.data); // bit-exact
  std::remove(path.c_str());
}

TEST(TensorFiles, TruncationAndBadHeadersAreCaught) {
  const std::string path = temp_path("tuckerplan_broken.tensor");
  const tp::DenseTensor t = tp::random_tensor({4, 4}, 7);
  tp::write_tensor(path, t);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  EXPECT_EQ(code_of([&] { tp::read_tensor(path); }), tp::Errc::bad_argument);

  {
    std::ofstream out(path, std::ios::binary);
    out << "not json\n";
  }
  EXPECT_EQ(code_of([&] { tp::read_tensor(path); }), tp::Errc::bad_argument);
  EXPECT_EQ(code_of([&] { tp::read_tensor(temp_path("tuckerplan_absent.tensor")); }),
            tp::Errc::bad_argument);
  std::remove(path.c_str());
}
