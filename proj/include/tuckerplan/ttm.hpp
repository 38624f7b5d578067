//
// tuckerplan : mode products and unfoldings
//
// The mode-n unfolding puts fibers along mode n into columns: entry (i, j)
// with j = a * inner + b maps to the tensor element whose mode-n index is i,
// where a ranges over the modes before n and b over the modes after n, both
// row-major. A mode product multiplies every fiber by the same matrix; it
// runs slab-wise on the contiguous (dims[n] x inner) blocks.
//

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "tuckerplan/checked.hpp"
#include "tuckerplan/dense_tensor.hpp"
#include "tuckerplan/errors.hpp"

namespace tuckerplan {

namespace detail {

inline void mode_extents(const DenseTensor& t, int mode, std::size_t& outer,
                         std::size_t& inner) {
  if (mode < 0 || mode >= t.n_modes())
    fail(Errc::bad_mode, "mode out of range", mode);
  outer = 1;
  inner = 1;
  for (int m = 0; m < mode; ++m) outer *= t.dims[m];
  for (int m = mode + 1; m < t.n_modes(); ++m) inner *= t.dims[m];
}

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;
using MutableRowMajorMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>;

} // namespace detail

inline Eigen::MatrixXd unfold(const DenseTensor& t, int mode) {
  std::size_t outer, inner;
  detail::mode_extents(t, mode, outer, inner);
  const std::size_t len = t.dims[mode];
  Eigen::MatrixXd m(len, outer * inner);
  for (std::size_t a = 0; a < outer; ++a) {
    detail::RowMajorMap slab(t.data.data() + a * len * inner, len, inner);
    m.middleCols(a * inner, inner) = slab;
  }
  return m;
}

inline DenseTensor fold(const Eigen::MatrixXd& m, std::vector<std::size_t> dims,
                        int mode) {
  DenseTensor t = zeros(std::move(dims));
  std::size_t outer, inner;
  detail::mode_extents(t, mode, outer, inner);
  const std::size_t len = t.dims[mode];
  if (static_cast<std::size_t>(m.rows()) != len ||
      static_cast<std::size_t>(m.cols()) != outer * inner)
    fail(Errc::shape_mismatch, "matrix does not match the unfolding shape");
  for (std::size_t a = 0; a < outer; ++a) {
    detail::MutableRowMajorMap slab(t.data.data() + a * len * inner, len, inner);
    slab = m.middleCols(a * inner, inner);
  }
  return t;
}

// t x_mode m with m of shape (new_len x dims[mode]); accumulates the exact
// multiply-add count new_len * t.size() into macs when given.
inline DenseTensor ttm(const DenseTensor& t, const Eigen::MatrixXd& m, int mode,
                       u64* macs = nullptr) {
  std::size_t outer, inner;
  detail::mode_extents(t, mode, outer, inner);
  const std::size_t len = t.dims[mode];
  if (static_cast<std::size_t>(m.cols()) != len)
    fail(Errc::shape_mismatch, "matrix columns must match the mode extent");
  const std::size_t new_len = static_cast<std::size_t>(m.rows());
  if (new_len == 0) fail(Errc::shape_mismatch, "empty matrix");

  std::vector<std::size_t> out_dims = t.dims;
  out_dims[mode] = new_len;
  DenseTensor out = zeros(std::move(out_dims));
  for (std::size_t a = 0; a < outer; ++a) {
    detail::RowMajorMap src(t.data.data() + a * len * inner, len, inner);
    detail::MutableRowMajorMap dst(out.data.data() + a * new_len * inner,
                                   new_len, inner);
    dst.noalias() = m * src;
  }
  if (macs)
    *macs = checked_add(*macs, checked_mul(static_cast<u64>(new_len),
                                           static_cast<u64>(t.size())));
  return out;
}

} // namespace tuckerplan
