// End-to-end checks of the command line binary: exit codes, file round
// trips, determinism, and agreement with the library it wraps.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tuckerplan/tuckerplan.hpp"

namespace tp = tuckerplan;
using tp::u64;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TUCKERPLAN_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

tp::json parse_output(const RunResult& r) {
  tp::json j = tp::json::parse(r.output, nullptr, false);
  EXPECT_FALSE(j.is_discarded()) << r.output;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const char* name) { return ::testing::TempDir() + name; }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

} // namespace

TEST(Cli, PlanOnOneProcessorDegeneratesToAllOnesGrids) {
  const RunResult r = run_cli("plan --L 6,5,4 --K 3,2,2 --procs 1 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const tp::json plan = parse_output(r);
  EXPECT_EQ(plan.at("format"), "tuckerplan-plan-v1");
  EXPECT_EQ(plan.at("static_grid"), tp::json({1, 1, 1}));
  EXPECT_EQ(plan.at("static_volume").at("total"), 0);
  EXPECT_EQ(plan.at("dynamic_volume").at("total"), 0);
  EXPECT_EQ(plan.at("dynamic_scheme").at("root"), tp::json({1, 1, 1}));
}

TEST(Cli, PlanPredictedFlopsMatchTheCostModel) {
  const RunResult r =
      run_cli("plan --L 8,6,5,4 --K 4,3,2,2 --tree chain-k --procs 4 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const tp::json plan = parse_output(r);

  const tp::ProblemSpec s{{8, 6, 5, 4}, {4, 3, 2, 2}};
  const tp::TtmTree tree = tp::build_tree(s, tp::TreeStrategy::chain_by_cost);
  EXPECT_EQ(plan.at("cost").at("total_macs").get<u64>(),
            tp::tree_cost(tree, s).total_macs);

  // the embedded tree reloads into the same shape the builder produced
  const tp::TtmTree reloaded = tp::tree_from_json(plan.at("tree"));
  tp::validate_tree(reloaded, s);
  EXPECT_EQ(tp::tree_cost(reloaded, s).total_macs, tp::tree_cost(tree, s).total_macs);
}

TEST(Cli, PlanRerunsAreByteIdentical) {
  const std::string a = tmp_path("cli_plan_a.json");
  const std::string b = tmp_path("cli_plan_b.json");
  ASSERT_EQ(run_cli("plan --L 20,18,16 --K 6,5,4 --procs 8 --out " + a).exit_code, 0);
  ASSERT_EQ(run_cli("plan --L 20,18,16 --K 6,5,4 --procs 8 --out " + b).exit_code, 0);
  const std::string body = slurp(a);
  EXPECT_FALSE(body.empty());
  EXPECT_EQ(body, slurp(b));
}

TEST(Cli, SimulateTracedAgreesWithTheModelAndExitsZero) {
  const RunResult r =
      run_cli("simulate --L 12,10,8 --K 4,3,2 --procs 8 --trace --format json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const tp::json ledger = parse_output(r);
  ASSERT_TRUE(ledger.at("traced").get<bool>());
  for (const tp::json& node : ledger.at("nodes"))
    EXPECT_EQ(node.at("measured_ttm"), node.at("model_ttm")) << node.dump();

  const tp::ProblemSpec s{{12, 10, 8}, {4, 3, 2}};
  const tp::TtmTree tree = tp::build_tree(s, tp::TreeStrategy::optimal);
  EXPECT_EQ(ledger.at("total_flops").get<u64>(), tp::tree_cost(tree, s).total_macs);
}

TEST(Cli, SimulateReplaysAPlanFileAndMatchesItsPredictions) {
  const std::string plan_path = tmp_path("cli_roundtrip.plan.json");
  ASSERT_EQ(
      run_cli("plan --L 24,20,16,8 --K 8,6,4,4 --procs 16 --out " + plan_path)
          .exit_code,
      0);
  const tp::json plan = tp::json::parse(slurp(plan_path));

  const RunResult dyn = run_cli("simulate --plan " + plan_path + " --format json");
  ASSERT_EQ(dyn.exit_code, 0) << dyn.output;
  const tp::json dled = parse_output(dyn);
  EXPECT_EQ(dled.at("total_model_ttm").get<u64>() +
                dled.at("total_model_regrid").get<u64>(),
            plan.at("dynamic_volume").at("total").get<u64>());

  const RunResult st =
      run_cli("simulate --plan " + plan_path + " --grid static --format json");
  ASSERT_EQ(st.exit_code, 0) << st.output;
  const tp::json sled = parse_output(st);
  EXPECT_EQ(sled.at("total_model_ttm").get<u64>() +
                sled.at("total_model_regrid").get<u64>(),
            plan.at("static_volume").at("total").get<u64>());
  EXPECT_EQ(sled.at("total_model_regrid").get<u64>(), 0u);
}

TEST(Cli, BenchOnReferenceTensorsEmitsOrderedCsvWithTheSearchedTreeCheapest) {
  const RunResult r = run_cli("bench --tensors real --procs 32");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::vector<std::string> lines = split_lines(r.output);
  ASSERT_EQ(lines.size(), 13u); // header + 3 tensors x 4 strategies
  EXPECT_EQ(lines[0], "spec,strategy,flops,static_volume,dynamic_volume");

  for (int g = 0; g < 3; ++g) {
    u64 opt_flops = 0, best_fixed = tp::kSaturated;
    for (int j = 0; j < 4; ++j) {
      const std::string& line = lines[1 + 4 * g + j];
      std::stringstream ss(line);
      std::string spec_name, strategy, flops_text;
      ASSERT_TRUE(std::getline(ss, spec_name, ','));
      ASSERT_TRUE(std::getline(ss, strategy, ','));
      ASSERT_TRUE(std::getline(ss, flops_text, ','));
      const u64 flops = std::stoull(flops_text);
      if (strategy == "opt")
        opt_flops = flops;
      else
        best_fixed = std::min(best_fixed, flops);
    }
    EXPECT_LT(opt_flops, best_fixed) << "tensor group " << g;
  }

  const RunResult again = run_cli("bench --tensors real --procs 32");
  EXPECT_EQ(again.output, r.output);
}

TEST(Cli, BenchRejectsAnEmptyStrategyList) {
  const RunResult r = run_cli("bench --strategies \"\"");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("empty strategy list"), std::string::npos) << r.output;
}

TEST(Cli, InvalidInputsExitWithOne) {
  EXPECT_EQ(run_cli("plan --L 6,5,4").exit_code, 1);              // no --K
  EXPECT_EQ(run_cli("plan --L 6,5 --K 3,2 --procs 7").exit_code, 1); // no grid
  EXPECT_EQ(run_cli("plan --L 6,5 --K 3,2 --tree towers").exit_code, 1);
  EXPECT_EQ(run_cli("plan --L 6,5 --K 7,2").exit_code, 1);        // K above L
  EXPECT_EQ(run_cli("plan --L 6x5 --K 3,2").exit_code, 1);        // bad number
  EXPECT_EQ(run_cli("simulate --plan /nonexistent.json").exit_code, 1);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 1);
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(Cli, GeneratedTensorFeedsTheSweepRunner) {
  const std::string tensor_path = tmp_path("cli_input.tensor");
  ASSERT_EQ(run_cli("gen-tensor --L 12,10,8 --seed 7 --out " + tensor_path).exit_code,
            0);
  const tp::DenseTensor t = tp::read_tensor(tensor_path);
  EXPECT_EQ(t.dims, (std::vector<std::size_t>{12, 10, 8}));

  const RunResult r = run_cli("hooi --tensor " + tensor_path +
                              " --K 4,3,2 --sweeps 3 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const tp::json report = parse_output(r);
  const tp::json& sweeps = report.at("sweeps");
  ASSERT_EQ(sweeps.size(), 3u);
  double prev = 1e300;
  for (const tp::json& sweep : sweeps) {
    const double err = sweep.at("error").get<double>();
    EXPECT_LE(err, prev * (1.0 + tp::tol::kSweepMonotoneSlack));
    prev = err;
  }
  EXPECT_EQ(report.at("final_error").get<double>(), prev);
}
