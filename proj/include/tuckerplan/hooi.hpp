//
// tuckerplan : alternating factor updates
//
// One sweep refreshes every factor from the leaves of a multiplication
// tree: the tensor at leaf F_n is complete in every mode but n, and its
// leading left singular vectors give the new mode-n factor. The basis comes
// from the Gram matrix's eigenvectors (the unfolding has few rows and many
// columns). Two schedules:
//   jacobi       - every multiply uses the sweep's starting factors, so the
//                  result is tree-independent up to the subspaces
//   gauss_seidel - factors update in mode order and later chains see the
//                  fresh ones; defined on chain trees only
//

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "tuckerplan/dense_tensor.hpp"
#include "tuckerplan/errors.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/ttm.hpp"
#include "tuckerplan/ttm_tree.hpp"

namespace tuckerplan {

// Guard for the dense Gram route; above this the eigensolve is no longer a
// desk-scale operation.
inline constexpr std::size_t kMaxGramRows = 2048;

// Spectrum gap below this (relative to the largest eigenvalue) means the
// truncated subspace is not unique.
inline constexpr double kDegenerateGap = 1e-10;

struct TruncatedBasis {
  Eigen::MatrixXd vectors; // rows x k, orthonormal, descending eigenvalues
  bool degenerate = false;
};

// Top-k eigenvectors of m * m^T. Column signs are fixed by making the
// largest-magnitude entry (first on ties) positive.
inline TruncatedBasis leading_left_factors(const Eigen::MatrixXd& m, int k) {
  const std::size_t rows = static_cast<std::size_t>(m.rows());
  if (rows == 0 || m.cols() == 0) fail(Errc::shape_mismatch, "empty matrix");
  if (rows > kMaxGramRows)
    fail(Errc::too_large, "unfolding has too many rows for the Gram route");
  if (k < 1 || static_cast<std::size_t>(k) > rows)
    fail(Errc::bad_argument, "need 1 <= k <= rows");

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m.rows(), m.rows());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success)
    fail(Errc::too_large, "eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues(); // ascending

  TruncatedBasis basis;
  basis.vectors.resize(m.rows(), k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd col = solver.eigenvectors().col(m.rows() - 1 - j);
    int arg = 0;
    for (int i = 1; i < col.size(); ++i)
      if (std::abs(col[i]) > std::abs(col[arg])) arg = i;
    if (col[arg] < 0.0) col = -col;
    basis.vectors.col(j) = col;
  }
  if (static_cast<std::size_t>(k) < rows) {
    const double top = std::max(ev[m.rows() - 1], 0.0);
    const double gap = ev[m.rows() - k] - ev[m.rows() - 1 - k];
    basis.degenerate = gap <= kDegenerateGap * std::max(top, 1e-300);
  }
  return basis;
}

struct Decomposition {
  DenseTensor core;                    // extents K
  std::vector<Eigen::MatrixXd> factors; // factors[n] is L_n x K_n
};

namespace detail {

inline void check_engine_shapes(const DenseTensor& t, const ProblemSpec& s) {
  if (t.n_modes() != s.n_modes())
    fail(Errc::shape_mismatch, "tensor and spec mode counts differ");
  for (int m = 0; m < s.n_modes(); ++m)
    if (t.dims[m] != s.L[m])
      fail(Errc::shape_mismatch, "tensor extent differs from L", m);
}

inline DenseTensor core_from_factors(const DenseTensor& t,
                                     const std::vector<Eigen::MatrixXd>& factors,
                                     u64* macs = nullptr) {
  DenseTensor z = t;
  for (std::size_t n = 0; n < factors.size(); ++n)
    z = ttm(z, factors[n].transpose(), static_cast<int>(n), macs);
  return z;
}

} // namespace detail

// Orthonormal starting factors drawn from seeded gaussians, with the core
// that makes the pair consistent with t.
inline Decomposition random_decomposition(const DenseTensor& t, const ProblemSpec& s,
                                          std::uint64_t seed) {
  validate_spec(s);
  detail::check_engine_shapes(t, s);
  Decomposition d;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int n = 0; n < s.n_modes(); ++n) {
    Eigen::MatrixXd g(s.L[n], s.K[n]);
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    d.factors.push_back(qr.householderQ() *
                        Eigen::MatrixXd::Identity(s.L[n], s.K[n]));
  }
  d.core = detail::core_from_factors(t, d.factors);
  return d;
}

struct SweepStats {
  u64 tree_macs = 0;  // mode products driven by the tree
  u64 core_macs = 0;  // final core contraction
  int peak_live = 0;  // tensors alive at once, tree input included
  bool degenerate = false;
};

enum class SweepKind { jacobi, gauss_seidel };

namespace detail {

struct JacobiWalk {
  const ProblemSpec& spec;
  const TtmTree& tree;
  const std::vector<Eigen::MatrixXd>& start; // sweep-start factors
  std::vector<Eigen::MatrixXd>& fresh;
  SweepStats& stats;

  void visit(int id, const DenseTensor& tensor, int live) {
    stats.peak_live = std::max(stats.peak_live, live);
    for (int c : tree.nodes[id].children) {
      const TreeNode& child = tree.nodes[c];
      if (child.kind == NodeKind::leaf) {
        const TruncatedBasis basis = leading_left_factors(
            unfold(tensor, child.mode), static_cast<int>(spec.K[child.mode]));
        stats.degenerate |= basis.degenerate;
        fresh[child.mode] = basis.vectors;
      } else {
        const DenseTensor next = ttm(tensor, start[child.mode].transpose(),
                                     child.mode, &stats.tree_macs);
        visit(c, next, live + 1);
      }
    }
  }
};

// Chain extraction: every root child must head a single-child path to a
// leaf. Returns, per leaf mode, the modes along its chain in order.
inline std::vector<std::vector<int>> chain_paths(const TtmTree& t) {
  std::vector<std::vector<int>> paths(t.n_modes);
  std::vector<bool> seen(t.n_modes, false);
  for (int c : t.nodes[0].children) {
    std::vector<int> modes;
    int at = c;
    while (t.nodes[at].kind == NodeKind::mode) {
      modes.push_back(t.nodes[at].mode);
      if (t.nodes[at].children.size() != 1)
        fail(Errc::needs_chain_tree, "tree is not a chain scheme");
      at = t.nodes[at].children[0];
    }
    if (t.nodes[at].kind != NodeKind::leaf || seen[t.nodes[at].mode])
      fail(Errc::needs_chain_tree, "tree is not a chain scheme");
    seen[t.nodes[at].mode] = true;
    paths[t.nodes[at].mode] = std::move(modes);
  }
  for (bool s : seen)
    if (!s) fail(Errc::needs_chain_tree, "tree is not a chain scheme");
  return paths;
}

} // namespace detail

// One full refresh of all factors plus the core. The input decomposition
// supplies the starting factors; the tensor t is the data being decomposed.
inline Decomposition hooi_sweep(const DenseTensor& t, const ProblemSpec& s,
                                const Decomposition& d, const TtmTree& tree,
                                SweepKind kind, SweepStats* stats = nullptr) {
  detail::check_engine_shapes(t, s);
  validate_tree(tree, s);
  if (d.factors.size() != static_cast<std::size_t>(s.n_modes()))
    fail(Errc::shape_mismatch, "factor count differs from mode count");
  SweepStats local;
  SweepStats& st = stats ? *stats : local;
  st = SweepStats{};

  Decomposition out;
  out.factors.assign(s.n_modes(), Eigen::MatrixXd());

  if (kind == SweepKind::jacobi) {
    detail::JacobiWalk walk{s, tree, d.factors, out.factors, st};
    walk.visit(0, t, 1);
  } else {
    const auto paths = detail::chain_paths(tree);
    std::vector<Eigen::MatrixXd> current = d.factors;
    st.peak_live = 1; // t itself
    for (int leaf = 0; leaf < s.n_modes(); ++leaf) {
      DenseTensor tensor;
      const DenseTensor* at = &t; // first product reads t in place
      for (int m : paths[leaf]) {
        const int live_before = at == &t ? 1 : 2;
        st.peak_live = std::max(st.peak_live, live_before + 1);
        tensor = ttm(*at, current[m].transpose(), m, &st.tree_macs);
        at = &tensor;
      }
      const TruncatedBasis basis = leading_left_factors(
          unfold(*at, leaf), static_cast<int>(s.K[leaf]));
      st.degenerate |= basis.degenerate;
      current[leaf] = basis.vectors;
    }
    out.factors = std::move(current);
  }

  out.core = detail::core_from_factors(t, out.factors, &st.core_macs);
  return out;
}

// || t - core x_1 F_1 ... x_N F_N ||_F / || t ||_F
inline double reconstruction_error(const DenseTensor& t, const Decomposition& d) {
  const double norm = frobenius_norm(t);
  if (norm == 0.0) fail(Errc::zero_tensor, "relative error undefined at zero");
  DenseTensor z = d.core;
  for (std::size_t n = 0; n < d.factors.size(); ++n)
    z = ttm(z, d.factors[n], static_cast<int>(n));
  if (z.dims != t.dims) fail(Errc::shape_mismatch, "reconstruction shape differs");
  double sum = 0.0;
  for (std::size_t i = 0; i < z.data.size(); ++i) {
    const double diff = t.data[i] - z.data[i];
    sum += diff * diff;
  }
  return std::sqrt(sum) / norm;
}

} // namespace tuckerplan
