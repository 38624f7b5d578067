//
// tuckerplan : synthetic corpus and strategy comparison
//
// The corpus combines per-mode (length, rank) pairs built from a set of
// lengths and length-to-rank ratios, keeps the combinations whose element
// count fits the cap, and compares planning strategies on each spec. Two
// enumeration policies: "multiset" treats specs that differ only by mode
// order as one (modes are emitted largest first); "ordered" counts every
// arrangement separately and exists for count reconciliation only.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "tuckerplan/grid_dynamic.hpp"
#include "tuckerplan/grid_volume.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/tree_builders.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/tree_opt.hpp"

namespace tuckerplan {

struct BenchParams {
  std::vector<int> mode_counts{5, 6};
  std::vector<u64> lengths{20, 50, 100, 400};
  // length / rank, as exact rationals num/den
  std::vector<std::pair<u64, u64>> ratios{{5, 4}, {2, 1}, {5, 1}, {10, 1}};
  u64 max_elements = 8'000'000'000ULL;
};

// (length, rank) alphabet, largest length (then rank) first.
inline std::vector<std::pair<u64, u64>> length_rank_pairs(const BenchParams& p) {
  std::vector<std::pair<u64, u64>> pairs;
  for (u64 len : p.lengths) {
    for (const auto& [num, den] : p.ratios) {
      if ((len * den) % num != 0)
        fail(Errc::bad_argument, "ratio does not divide length " + std::to_string(len));
      pairs.push_back({len, len * den / num});
    }
  }
  std::sort(pairs.begin(), pairs.end(), std::greater<>());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

namespace detail {

template <class Fn>
inline void multisets_rec(const std::vector<std::pair<u64, u64>>& pairs, int n_modes,
                          std::size_t from, u64 elements, u64 cap,
                          std::vector<std::size_t>& picked, const Fn& fn) {
  if (static_cast<int>(picked.size()) == n_modes) {
    fn(picked);
    return;
  }
  for (std::size_t i = from; i < pairs.size(); ++i) {
    const u64 next = sat_mul(elements, pairs[i].first);
    if (next > cap) continue; // pairs are sorted descending, later ones may fit
    picked.push_back(i);
    multisets_rec(pairs, n_modes, i, next, cap, picked, fn);
    picked.pop_back();
  }
}

} // namespace detail

// All corpus specs for one mode count, multiset policy, deterministic order.
inline std::vector<ProblemSpec> generate_benchmark(const BenchParams& p, int n_modes) {
  const auto pairs = length_rank_pairs(p);
  std::vector<ProblemSpec> specs;
  std::vector<std::size_t> picked;
  detail::multisets_rec(pairs, n_modes, 0, 1, p.max_elements, picked,
                        [&](const std::vector<std::size_t>& sel) {
                          ProblemSpec s;
                          for (std::size_t i : sel) {
                            s.L.push_back(pairs[i].first);
                            s.K.push_back(pairs[i].second);
                          }
                          specs.push_back(std::move(s));
                        });
  return specs;
}

struct BenchCounts {
  u64 multiset = 0;
  u64 ordered = 0; // multisets weighted by their distinct arrangements
};

inline BenchCounts count_benchmark(const BenchParams& p, int n_modes) {
  const auto pairs = length_rank_pairs(p);
  BenchCounts counts;
  std::vector<std::size_t> picked;
  detail::multisets_rec(pairs, n_modes, 0, 1, p.max_elements, picked,
                        [&](const std::vector<std::size_t>& sel) {
                          ++counts.multiset;
                          u64 perms = 1, run = 1;
                          for (std::size_t i = 1; i <= sel.size(); ++i) {
                            perms = checked_mul(perms, i);
                            if (i < sel.size() && sel[i] == sel[i - 1]) {
                              ++run;
                            } else {
                              for (u64 d = 2; d <= run; ++d) perms /= d;
                              run = 1;
                            }
                          }
                          counts.ordered = checked_add(counts.ordered, perms);
                        });
  return counts;
}

enum class TreeStrategy { chain_input, chain_by_cost, chain_by_ratio, balanced, optimal };

inline const char* strategy_name(TreeStrategy s) {
  switch (s) {
    case TreeStrategy::chain_input: return "chain-input";
    case TreeStrategy::chain_by_cost: return "chain-k";
    case TreeStrategy::chain_by_ratio: return "chain-h";
    case TreeStrategy::balanced: return "balanced";
    case TreeStrategy::optimal: return "opt";
  }
  return "?";
}

inline TtmTree build_tree(const ProblemSpec& s, TreeStrategy strategy) {
  switch (strategy) {
    case TreeStrategy::chain_input: return chain_tree(s, ChainOrder::input);
    case TreeStrategy::chain_by_cost: return chain_tree(s, ChainOrder::by_cost);
    case TreeStrategy::chain_by_ratio: return chain_tree(s, ChainOrder::by_ratio);
    case TreeStrategy::balanced: return balanced_tree(s);
    case TreeStrategy::optimal: return optimal_tree(s).tree;
  }
  fail(Errc::bad_argument, "unknown strategy");
}

struct StrategyMetrics {
  u64 flops = 0;
  u64 static_volume = 0;
  u64 dynamic_volume = 0;
};

struct ComparisonRow {
  ProblemSpec spec;
  std::vector<StrategyMetrics> metrics; // parallel to table strategies
};

struct ComparisonTable {
  u64 procs = 0;
  std::vector<TreeStrategy> strategies;
  std::vector<ComparisonRow> rows;
};

inline StrategyMetrics evaluate_strategy(const ProblemSpec& s, TreeStrategy strategy,
                                         u64 procs) {
  const TtmTree tree = build_tree(s, strategy);
  StrategyMetrics m;
  m.flops = tree_cost(tree, s).total_macs;
  m.static_volume = optimal_static_grid(tree, s, procs).report.total;
  m.dynamic_volume = optimal_dynamic_scheme(tree, s, procs).report.total;
  return m;
}

// Rows keep spec order; spec evaluations are independent, so threading only
// shards the loop.
inline ComparisonTable run_comparison(const std::vector<ProblemSpec>& specs, u64 procs,
                                      const std::vector<TreeStrategy>& strategies,
                                      int threads = 1) {
  ComparisonTable table;
  table.procs = procs;
  table.strategies = strategies;
  table.rows.resize(specs.size());
  auto job = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      table.rows[i].spec = specs[i];
      for (TreeStrategy st : strategies)
        table.rows[i].metrics.push_back(evaluate_strategy(specs[i], st, procs));
    }
  };
  if (threads <= 1 || specs.size() < 2) {
    job(0, specs.size());
  } else {
    const std::size_t chunk = (specs.size() + threads - 1) / threads;
    std::vector<std::future<void>> parts;
    for (std::size_t lo = 0; lo < specs.size(); lo += chunk)
      parts.push_back(std::async(std::launch::async, job, lo,
                                 std::min(lo + chunk, specs.size())));
    for (auto& part : parts) part.get();
  }
  return table;
}

// Nearest-rank percentile of an unsorted sample (p in [0, 100]).
inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) fail(Errc::bad_argument, "percentile of an empty sample");
  std::sort(values.begin(), values.end());
  if (p >= 100.0) return values.back();
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(p / 100.0 * values.size()));
  return values[rank == 0 ? 0 : rank - 1];
}

struct NamedSpec {
  std::string name;
  ProblemSpec spec;
};

// Extents of three published combustion/simulation datasets, usable as
// planning inputs without the data itself.
inline std::vector<NamedSpec> reference_datasets() {
  return {
      {"HCCI", ProblemSpec{{672, 672, 627, 16}, {279, 279, 153, 14}}},
      {"TJLR", ProblemSpec{{460, 700, 360, 16, 4}, {306, 232, 239, 16, 4}}},
      {"SP", ProblemSpec{{500, 500, 500, 11, 10}, {81, 129, 127, 7, 6}}},
  };
}

inline std::string spec_id(const ProblemSpec& s) {
  std::string id = "L";
  for (std::size_t i = 0; i < s.L.size(); ++i)
    id += (i ? "x" : "") + std::to_string(s.L[i]);
  id += "-K";
  for (std::size_t i = 0; i < s.K.size(); ++i)
    id += (i ? "x" : "") + std::to_string(s.K[i]);
  return id;
}

} // namespace tuckerplan
