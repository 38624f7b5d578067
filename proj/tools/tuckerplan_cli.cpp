// tuckerplan command line: plan, simulate, bench, gen-tensor, hooi.
//
// Exit codes: 0 success, 1 invalid input or infeasible request, 2 traced
// simulation disagreed with the volume model on a TTM count.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tuckerplan/tuckerplan.hpp"

namespace tp = tuckerplan;
using tp::u64;

namespace {

std::vector<u64> parse_u64_list(const std::string& text, const char* what) {
  std::vector<u64> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    u64 v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      tp::fail(tp::Errc::bad_argument, std::string(what) + ": bad number " + item);
    }
    if (pos != item.size())
      tp::fail(tp::Errc::bad_argument, std::string(what) + ": bad number " + item);
    values.push_back(v);
  }
  if (values.empty())
    tp::fail(tp::Errc::bad_argument, std::string(what) + ": empty list");
  return values;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) names.push_back(item);
  return names;
}

tp::TreeStrategy strategy_from_name(const std::string& name) {
  for (tp::TreeStrategy st :
       {tp::TreeStrategy::chain_input, tp::TreeStrategy::chain_by_cost,
        tp::TreeStrategy::chain_by_ratio, tp::TreeStrategy::balanced,
        tp::TreeStrategy::optimal})
    if (name == tp::strategy_name(st)) return st;
  tp::fail(tp::Errc::bad_argument, "unknown tree strategy: " + name);
}

tp::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) tp::fail(tp::Errc::bad_argument, "cannot open " + path);
  tp::json j = tp::json::parse(in, nullptr, false);
  if (j.is_discarded()) tp::fail(tp::Errc::bad_argument, "bad JSON in " + path);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) tp::fail(tp::Errc::bad_argument, "cannot open " + path);
  out << content;
  if (!out) tp::fail(tp::Errc::bad_argument, "write failed: " + path);
}

std::string join(const std::vector<u64>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string node_label(const tp::TtmTree& t, int id) {
  const tp::TreeNode& n = t.nodes[id];
  if (n.kind == tp::NodeKind::root) return "T";
  return (n.kind == tp::NodeKind::mode ? "M" : "F") + std::to_string(n.mode + 1);
}

// spec from --spec file or inline --L/--K; exactly one source
tp::ProblemSpec resolve_spec(const std::string& spec_path, const std::string& l_list,
                             const std::string& k_list) {
  const bool inline_given = !l_list.empty() || !k_list.empty();
  if (!spec_path.empty() && inline_given)
    tp::fail(tp::Errc::bad_argument, "give either --spec or --L/--K, not both");
  if (!spec_path.empty()) return tp::spec_from_json(load_json_file(spec_path));
  if (l_list.empty() || k_list.empty())
    tp::fail(tp::Errc::bad_argument, "need --spec or both --L and --K");
  tp::ProblemSpec s;
  s.L = parse_u64_list(l_list, "--L");
  s.K = parse_u64_list(k_list, "--K");
  tp::validate_spec(s);
  return s;
}

struct Plan {
  tp::ProblemSpec spec;
  std::string strategy;
  tp::TtmTree tree;
  u64 procs = 1;
  std::string grid_kind; // "static" or "dynamic": which scheme simulate replays
  tp::CostReport cost;
  tp::Grid static_grid;
  tp::VolumeReport static_volume;
  tp::DynamicGridScheme dynamic_scheme;
  tp::VolumeReport dynamic_volume;
};

Plan make_plan(const tp::ProblemSpec& spec, const std::string& strategy, u64 procs,
               const std::string& grid_kind, bool legacy_regrid) {
  if (procs < 1) tp::fail(tp::Errc::bad_argument, "--procs must be at least 1");
  if (grid_kind != "static" && grid_kind != "dynamic")
    tp::fail(tp::Errc::bad_argument, "--grid must be static or dynamic");
  Plan p;
  p.spec = spec;
  p.strategy = strategy;
  // round-trip through the label form so node ids match a reloaded plan
  p.tree = tp::tree_from_json(
      tp::tree_to_json(tp::build_tree(spec, strategy_from_name(strategy))));
  tp::validate_tree(p.tree, spec);
  p.procs = procs;
  p.grid_kind = grid_kind;
  p.cost = tp::tree_cost(p.tree, spec);

  const tp::StaticGridResult st = tp::optimal_static_grid(p.tree, spec, procs);
  p.static_grid = st.grid;
  p.static_volume = st.report;
  tp::DynamicOptions opts;
  opts.legacy_regrid_target = legacy_regrid;
  const tp::DynamicSchemeResult dyn =
      tp::optimal_dynamic_scheme(p.tree, spec, procs, opts);
  p.dynamic_scheme = dyn.scheme;
  p.dynamic_volume = dyn.report;
  return p;
}

tp::json plan_to_json(const Plan& p) {
  return tp::json{{"format", "tuckerplan-plan-v1"},
                  {"spec", tp::spec_to_json(p.spec)},
                  {"strategy", p.strategy},
                  {"procs", p.procs},
                  {"grid", p.grid_kind},
                  {"tree", tp::tree_to_json(p.tree)},
                  {"cost", tp::cost_to_json(p.cost)},
                  {"static_grid", tp::grid_to_json(p.static_grid)},
                  {"static_volume", tp::volume_to_json(p.static_volume)},
                  {"dynamic_scheme", tp::scheme_to_json(p.dynamic_scheme)},
                  {"dynamic_volume", tp::volume_to_json(p.dynamic_volume)}};
}

Plan plan_from_json(const tp::json& j) {
  for (const char* key : {"spec", "procs", "grid", "tree", "static_grid",
                          "dynamic_scheme"})
    if (!j.is_object() || !j.contains(key))
      tp::fail(tp::Errc::bad_argument, std::string("plan file lacks ") + key);
  Plan p;
  p.spec = tp::spec_from_json(j.at("spec"));
  p.strategy = j.value("strategy", std::string("custom"));
  p.tree = tp::tree_from_json(j.at("tree"));
  tp::validate_tree(p.tree, p.spec);
  p.procs = j.at("procs").get<u64>();
  p.grid_kind = j.at("grid").get<std::string>();
  p.cost = tp::tree_cost(p.tree, p.spec);
  p.static_grid = tp::grid_from_json(j.at("static_grid"));
  p.static_volume =
      tp::static_volume(p.tree, p.spec, p.static_grid, p.procs);
  p.dynamic_scheme = tp::scheme_from_json(j.at("dynamic_scheme"));
  p.dynamic_volume = tp::scheme_volume(p.tree, p.spec, p.dynamic_scheme, p.procs);
  return p;
}

std::string plan_to_text(const Plan& p) {
  std::string out;
  out += "spec      " + tp::spec_id(p.spec) + "\n";
  out += "tree      " + p.strategy + ": " + std::to_string(p.cost.total_macs) +
         " MACs over " + std::to_string(p.cost.n_internal) + " nodes, depth " +
         std::to_string(p.cost.depth) + "\n";
  out += "procs     " + std::to_string(p.procs) + "\n";
  out += "static    grid " + join(p.static_grid.q, "x") + ", volume " +
         std::to_string(p.static_volume.total) + "\n";
  out += "dynamic   volume " + std::to_string(p.dynamic_volume.total) +
         ", root grid " + join(p.dynamic_scheme.root.q, "x") + "\n";
  for (const tp::NodeVolume& nv : p.dynamic_volume.per_node)
    if (nv.regrid)
      out += "          node " + std::to_string(nv.node) + " [" +
             node_label(p.tree, nv.node) + "] regrids to " +
             join(p.dynamic_scheme.node_grids.at(nv.node).q, "x") + "\n";
  out += "selected  " + p.grid_kind + "\n";
  return out;
}

std::string ledger_to_text(const Plan& p, const tp::SimLedger& led) {
  std::string out;
  for (const tp::NodeTrace& nt : led.nodes) {
    out += "node " + std::to_string(nt.node) + " [" +
           node_label(p.tree, nt.node) + "]: flops " + std::to_string(nt.flops) +
           ", ttm " + std::to_string(nt.model_ttm) + ", regrid " +
           std::to_string(nt.model_regrid);
    if (led.traced)
      out += " (measured ttm " + std::to_string(nt.measured_ttm) + ", regrid " +
             std::to_string(nt.measured_regrid) + ")";
    out += "\n";
  }
  out += "totals: flops " + std::to_string(led.total_flops) + ", ttm " +
         std::to_string(led.total_model_ttm) + ", regrid " +
         std::to_string(led.total_model_regrid);
  if (led.traced)
    out += " (measured ttm " + std::to_string(led.total_measured_ttm) +
           ", regrid " + std::to_string(led.total_measured_regrid) + ")";
  out += ", peak live " + std::to_string(led.peak_live) + "\n";
  return out;
}

int cmd_plan(const Plan& plan, const std::string& out_path, const std::string& format) {
  const std::string body = plan_to_json(plan).dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, body);
  if (format == "json")
    std::fputs(body.c_str(), stdout);
  else
    std::fputs(plan_to_text(plan).c_str(), stdout);
  return 0;
}

int cmd_simulate(const Plan& plan, const std::string& grid_override, bool trace,
                 const std::string& out_path, const std::string& format) {
  const std::string kind = grid_override.empty() ? plan.grid_kind : grid_override;
  tp::DynamicGridScheme scheme;
  if (kind == "static") {
    scheme = tp::uniform_scheme(plan.tree, plan.static_grid);
  } else if (kind == "dynamic") {
    scheme = plan.dynamic_scheme;
  } else {
    tp::fail(tp::Errc::bad_argument, "--grid must be static or dynamic");
  }
  const tp::SimLedger led =
      tp::simulate_distribution(plan.tree, plan.spec, scheme, plan.procs, trace);

  const std::string body = tp::ledger_to_json(led).dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, body);
  if (format == "json")
    std::fputs(body.c_str(), stdout);
  else
    std::fputs(ledger_to_text(plan, led).c_str(), stdout);

  if (led.traced)
    for (const tp::NodeTrace& nt : led.nodes)
      if (nt.measured_ttm != nt.model_ttm) {
        std::fprintf(stderr,
                     "model violation: node %d measured ttm %llu != model %llu\n",
                     nt.node, static_cast<unsigned long long>(nt.measured_ttm),
                     static_cast<unsigned long long>(nt.model_ttm));
        return 2;
      }
  return 0;
}

int cmd_bench(const std::string& tensors, const std::string& mode_counts_list,
              u64 procs, const std::string& strategies_list, int threads,
              const std::string& out_path, const std::string& format) {
  const std::vector<std::string> names = split_names(strategies_list);
  if (names.empty()) tp::fail(tp::Errc::bad_argument, "empty strategy list");
  std::vector<tp::TreeStrategy> strategies;
  for (const std::string& n : names) strategies.push_back(strategy_from_name(n));

  const tp::BenchParams params;
  std::vector<tp::ProblemSpec> specs;
  std::vector<std::string> spec_names;
  std::vector<int> mode_counts;
  if (tensors == "real") {
    for (const tp::NamedSpec& r : tp::reference_datasets()) {
      specs.push_back(r.spec);
      spec_names.push_back(r.name);
    }
  } else if (tensors == "synthetic") {
    for (u64 n : parse_u64_list(mode_counts_list, "--mode-counts")) {
      mode_counts.push_back(static_cast<int>(n));
      for (tp::ProblemSpec& s : tp::generate_benchmark(params, static_cast<int>(n))) {
        spec_names.push_back(tp::spec_id(s));
        specs.push_back(std::move(s));
      }
    }
  } else {
    tp::fail(tp::Errc::bad_argument, "--tensors must be synthetic or real");
  }

  const tp::ComparisonTable table = tp::run_comparison(specs, procs, strategies, threads);

  std::string body;
  if (format == "csv") {
    body = "spec,strategy,flops,static_volume,dynamic_volume\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i)
      for (std::size_t j = 0; j < strategies.size(); ++j) {
        const tp::StrategyMetrics& m = table.rows[i].metrics[j];
        body += spec_names[i] + "," + tp::strategy_name(strategies[j]) + "," +
                std::to_string(m.flops) + "," + std::to_string(m.static_volume) +
                "," + std::to_string(m.dynamic_volume) + "\n";
      }
  } else if (format == "json") {
    // percentile summary: searched-tree gain over the best fixed tree, and
    // per-node-grid gain over the one-grid optimum, both on this run
    tp::json summary{{"procs", procs},
                     {"specs", specs.size()},
                     {"strategies", names}};
    const auto opt_at = std::find(strategies.begin(), strategies.end(),
                                  tp::TreeStrategy::optimal);
    if (opt_at != strategies.end()) {
      const std::size_t oi = static_cast<std::size_t>(opt_at - strategies.begin());
      std::vector<double> flops_ratio, volume_gain;
      u64 flops_strict = 0, volume_strict = 0;
      for (const tp::ComparisonRow& row : table.rows) {
        u64 best_fixed = tp::kSaturated;
        for (std::size_t j = 0; j < strategies.size(); ++j)
          if (j != oi) best_fixed = std::min(best_fixed, row.metrics[j].flops);
        const tp::StrategyMetrics& opt = row.metrics[oi];
        if (best_fixed != tp::kSaturated) {
          flops_ratio.push_back(static_cast<double>(best_fixed) /
                                static_cast<double>(opt.flops));
          if (opt.flops < best_fixed) ++flops_strict;
        }
        volume_gain.push_back(static_cast<double>(opt.static_volume) /
                              static_cast<double>(opt.dynamic_volume));
        if (opt.dynamic_volume < opt.static_volume) ++volume_strict;
      }
      if (!flops_ratio.empty())
        summary["flops_ratio"] = {
            {"p50", tp::percentile(flops_ratio, 50)},
            {"p90", tp::percentile(flops_ratio, 90)},
            {"strict_share", static_cast<double>(flops_strict) / specs.size()}};
      summary["volume_gain"] = {
          {"p50", tp::percentile(volume_gain, 50)},
          {"p90", tp::percentile(volume_gain, 90)},
          {"strict_share", static_cast<double>(volume_strict) / specs.size()}};
    }
    if (!mode_counts.empty()) {
      tp::json counts = tp::json::object();
      for (int n : mode_counts) {
        const tp::BenchCounts c = tp::count_benchmark(params, n);
        counts[std::to_string(n)] = {{"multiset", c.multiset},
                                     {"ordered", c.ordered}};
      }
      summary["corpus_counts"] = counts;
    }
    body = summary.dump(2) + "\n";
  } else {
    tp::fail(tp::Errc::bad_argument, "--format must be csv or json");
  }

  if (!out_path.empty())
    write_text_file(out_path, body);
  else
    std::fputs(body.c_str(), stdout);
  return 0;
}

int cmd_gen_tensor(const std::string& l_list, u64 seed, const std::string& out_path) {
  const std::vector<u64> lens = parse_u64_list(l_list, "--L");
  std::vector<std::size_t> dims(lens.begin(), lens.end());
  const tp::DenseTensor t = tp::random_tensor(dims, seed);
  tp::write_tensor(out_path, t);
  std::printf("wrote %s: dims %s, %zu elements\n", out_path.c_str(),
              join(lens, "x").c_str(), t.size());
  return 0;
}

int cmd_hooi(const std::string& tensor_path, const std::string& l_list,
             const std::string& k_list, u64 seed, const std::string& tree_name,
             const std::string& scheme_name, int sweeps,
             const std::string& out_path, const std::string& format) {
  if (tensor_path.empty() == l_list.empty())
    tp::fail(tp::Errc::bad_argument, "need exactly one of --tensor or --L");
  tp::DenseTensor t;
  if (!tensor_path.empty()) {
    t = tp::read_tensor(tensor_path);
  } else {
    const std::vector<u64> lens = parse_u64_list(l_list, "--L");
    t = tp::random_tensor(std::vector<std::size_t>(lens.begin(), lens.end()), seed);
  }
  tp::ProblemSpec s;
  for (std::size_t d : t.dims) s.L.push_back(d);
  s.K = parse_u64_list(k_list, "--K");
  tp::validate_spec(s);

  tp::SweepKind kind;
  std::string tree_choice = tree_name;
  if (scheme_name == "jacobi") {
    kind = tp::SweepKind::jacobi;
    if (tree_choice.empty()) tree_choice = "opt";
  } else if (scheme_name == "gauss-seidel") {
    kind = tp::SweepKind::gauss_seidel;
    if (tree_choice.empty()) tree_choice = "chain-input";
  } else {
    tp::fail(tp::Errc::bad_argument, "--scheme must be jacobi or gauss-seidel");
  }
  const tp::TtmTree tree = tp::build_tree(s, strategy_from_name(tree_choice));

  tp::Decomposition d = tp::random_decomposition(t, s, seed);
  tp::json steps = tp::json::array();
  std::string text;
  {
    char line[128];
    std::snprintf(line, sizeof line, "start: error %.12f\n",
                  tp::reconstruction_error(t, d));
    text += line;
  }
  for (int i = 0; i < sweeps; ++i) {
    tp::SweepStats stats;
    d = tp::hooi_sweep(t, s, d, tree, kind, &stats);
    const double err = tp::reconstruction_error(t, d);
    steps.push_back(tp::json{{"sweep", i + 1},
                             {"error", err},
                             {"tree_macs", stats.tree_macs},
                             {"core_macs", stats.core_macs},
                             {"peak_live", stats.peak_live},
                             {"degenerate", stats.degenerate}});
    char line[128];
    std::snprintf(line, sizeof line,
                  "sweep %d: error %.12f, tree macs %llu, peak live %d%s\n", i + 1,
                  err, static_cast<unsigned long long>(stats.tree_macs),
                  stats.peak_live, stats.degenerate ? " (degenerate cut)" : "");
    text += line;
  }
  const tp::json report{{"spec", tp::spec_to_json(s)},
                        {"tree", tree_choice},
                        {"scheme", scheme_name},
                        {"sweeps", steps},
                        {"final_error", tp::reconstruction_error(t, d)}};
  const std::string body = report.dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, body);
  if (format == "json")
    std::fputs(body.c_str(), stdout);
  else
    std::fputs(text.c_str(), stdout);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"planning and simulation for dense Tucker mode products"};
  app.require_subcommand(1);

  // one variable per option; CLI11 default_val writes through at setup time,
  // so subcommands must not share a variable unless the default is identical
  std::string spec_path, l_list, k_list, plan_path, out_path;
  std::string tree_name = "opt", plan_grid = "dynamic", sim_grid, format = "text";
  std::string bench_format = "csv";
  std::string tensors = "synthetic", mode_counts = "5,6";
  std::string strategies = "chain-k,chain-h,balanced,opt";
  std::string tensor_path, scheme_name = "gauss-seidel", hooi_tree;
  u64 procs = 1, bench_procs = 32, seed = 0;
  int threads = 1, sweeps = 5;
  bool trace = false, legacy = false;

  CLI::App* plan = app.add_subcommand("plan", "choose a tree and grids for a spec");
  plan->add_option("--spec", spec_path, "spec JSON file {\"L\":[...],\"K\":[...]}");
  plan->add_option("--L", l_list, "mode lengths, comma separated");
  plan->add_option("--K", k_list, "core lengths, comma separated");
  plan->add_option("--procs", procs, "processor count")->default_val(1);
  plan->add_option("--tree", tree_name,
                   "chain-input|chain-k|chain-h|balanced|opt")
      ->default_val("opt");
  plan->add_option("--grid", plan_grid, "scheme simulate replays: static|dynamic")
      ->default_val("dynamic");
  plan->add_flag("--legacy-regrid", legacy, "pick regrid targets by child sum alone");
  plan->add_option("--out", out_path, "write the plan JSON here");
  plan->add_option("--format", format, "stdout format: text|json")->default_val("text");

  CLI::App* sim = app.add_subcommand("simulate", "replay a plan over block layouts");
  sim->add_option("--plan", plan_path, "plan JSON from the plan command");
  sim->add_option("--spec", spec_path, "spec JSON file (instead of --plan)");
  sim->add_option("--L", l_list, "mode lengths, comma separated");
  sim->add_option("--K", k_list, "core lengths, comma separated");
  sim->add_option("--procs", procs, "processor count")->default_val(1);
  sim->add_option("--tree", tree_name, "tree strategy when not using --plan")
      ->default_val("opt");
  sim->add_option("--grid", sim_grid, "override: static|dynamic");
  sim->add_flag("--trace", trace, "count every element; exits 2 on TTM mismatch");
  sim->add_option("--out", out_path, "write the ledger JSON here");
  sim->add_option("--format", format, "stdout format: text|json")->default_val("text");

  CLI::App* bench = app.add_subcommand("bench", "compare strategies over a corpus");
  bench->add_option("--tensors", tensors, "synthetic|real")->default_val("synthetic");
  bench->add_option("--mode-counts", mode_counts, "corpus mode counts")
      ->default_val("5,6");
  bench->add_option("--procs", bench_procs, "processor count")->default_val(32);
  bench->add_option("--strategies", strategies, "comma separated strategy names")
      ->default_val("chain-k,chain-h,balanced,opt");
  bench->add_option("--threads", threads, "worker threads")->default_val(1);
  bench->add_option("--out", out_path, "write the report here");
  bench->add_option("--format", bench_format, "csv rows or json percentile summary")
      ->default_val("csv");

  CLI::App* gen = app.add_subcommand("gen-tensor", "write a seeded random tensor");
  gen->add_option("--L", l_list, "mode lengths, comma separated")->required();
  gen->add_option("--seed", seed, "generator seed")->default_val(0);
  gen->add_option("--out", out_path, "output path")->required();

  CLI::App* hooi = app.add_subcommand("hooi", "run alternating sweeps on dense data");
  hooi->add_option("--tensor", tensor_path, "tensor file from gen-tensor");
  hooi->add_option("--L", l_list, "generate the input instead: lengths");
  hooi->add_option("--K", k_list, "core lengths, comma separated")->required();
  hooi->add_option("--seed", seed, "seed for the input and the starting factors")
      ->default_val(0);
  hooi->add_option("--tree", hooi_tree, "tree strategy (default fits the scheme)");
  hooi->add_option("--scheme", scheme_name, "jacobi|gauss-seidel")
      ->default_val("gauss-seidel");
  hooi->add_option("--sweeps", sweeps, "sweep count")->default_val(5);
  hooi->add_option("--out", out_path, "write the sweep report JSON here");
  hooi->add_option("--format", format, "stdout format: text|json")->default_val("text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(plan)) {
      const tp::ProblemSpec spec = resolve_spec(spec_path, l_list, k_list);
      return cmd_plan(make_plan(spec, tree_name, procs, plan_grid, legacy), out_path,
                      format);
    }
    if (app.got_subcommand(sim)) {
      Plan p;
      if (!plan_path.empty()) {
        if (!spec_path.empty() || !l_list.empty() || !k_list.empty())
          tp::fail(tp::Errc::bad_argument, "give either --plan or a spec, not both");
        p = plan_from_json(load_json_file(plan_path));
      } else {
        p = make_plan(resolve_spec(spec_path, l_list, k_list), tree_name, procs,
                      sim_grid.empty() ? "dynamic" : sim_grid, false);
      }
      return cmd_simulate(p, plan_path.empty() ? "" : sim_grid, trace, out_path,
                          format);
    }
    if (app.got_subcommand(bench))
      return cmd_bench(tensors, mode_counts, bench_procs, strategies, threads,
                       out_path, bench_format);
    if (app.got_subcommand(gen)) return cmd_gen_tensor(l_list, seed, out_path);
    if (app.got_subcommand(hooi))
      return cmd_hooi(tensor_path, l_list, k_list, seed, hooi_tree, scheme_name,
                      sweeps, out_path, format);
  } catch (const tp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
