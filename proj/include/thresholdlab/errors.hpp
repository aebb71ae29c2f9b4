#pragma once

#include <stdexcept>

namespace tlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The level-set branch angle left [0, pi]; the chain has no solution here.
struct out_of_branch : error {
    using error::error;
};

// No sign change of the closure residual inside the band window.
struct no_root : error {
    using error::error;
};

// High-precision refinement stalled before the requested accuracy.
struct non_convergence : error {
    using error::error;
};

// Empty input or a non-positive gap fed to the rate regression.
struct degenerate_input : error {
    using error::error;
};

// The constraint matrix nullspace is not one-dimensional.
struct ambiguous_nullspace : error {
    using error::error;
};

// No integer relation passed the residual test up to the degree cap.
struct no_relation : error {
    using error::error;
};

// Unrecognized dataset tag.
struct unknown_source : error {
    using error::error;
};

}  // namespace tlab
