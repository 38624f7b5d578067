//
// tuckerplan : dense tensors
//
// Row-major storage, last index fastest. Meant for desk-scale experiments
// that exercise the cost model, not for production-size data.
//

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "tuckerplan/errors.hpp"

namespace tuckerplan {

struct DenseTensor {
  std::vector<std::size_t> dims;
  std::vector<double> data;

  int n_modes() const { return static_cast<int>(dims.size()); }

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t d : dims) s *= d;
    return s;
  }
};

inline DenseTensor zeros(std::vector<std::size_t> dims) {
  DenseTensor t;
  t.dims = std::move(dims);
  for (std::size_t d : t.dims)
    if (d == 0) fail(Errc::bad_dims, "zero extent");
  t.data.assign(t.size(), 0.0);
  return t;
}

// Standard normal entries from a fixed-width generator; identical dims and
// seed give identical tensors on every run.
inline DenseTensor random_tensor(std::vector<std::size_t> dims, std::uint64_t seed) {
  DenseTensor t = zeros(std::move(dims));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& x : t.data) x = normal(rng);
  return t;
}

inline double frobenius_norm(const DenseTensor& t) {
  double sum = 0.0;
  for (double x : t.data) sum += x * x;
  return std::sqrt(sum);
}

} // namespace tuckerplan
