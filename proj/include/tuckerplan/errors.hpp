//
// tuckerplan : error reporting
//
// All contract violations raise Error with a machine-checkable code.
// `mode` is the offending 0-based mode when a single mode is at fault,
// -1 otherwise.
//

#pragma once

#include <stdexcept>
#include <string>

namespace tuckerplan {

enum class Errc {
  bad_dims,           // empty spec, zero length, N > 16, L/K size mismatch
  k_too_large,        // K_n > L_n or K_n < 1
  overflow,           // product or cost not representable in 64 bits
  bad_tree,           // structural tree violation (paths, leaves, labels)
  bad_mode,           // mode index outside [0, N)
  shape_mismatch,     // tensor/matrix/tree dimensions disagree
  invalid_grid,       // grid violates q_n <= K_n or prod q_n != P
  no_valid_grid,      // P admits no factorization within the K bounds
  missing_assignment, // dynamic scheme lacks a grid for an internal node
  too_large,          // input exceeds a documented scale guard
  zero_tensor,        // relative error undefined for a zero tensor
  needs_chain_tree,   // in-place sweep is only defined on chain trees
  bad_argument        // malformed CLI or file input
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what, int mode = -1)
      : std::runtime_error(what), code_(code), mode_(mode) {}

  Errc code() const noexcept { return code_; }
  int mode() const noexcept { return mode_; }

private:
  Errc code_;
  int mode_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what, int mode = -1) {
  throw Error(code, what, mode);
}

} // namespace tuckerplan
