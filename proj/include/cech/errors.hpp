#pragma once

#include <stdexcept>
#include <string>

namespace cech {

// Input fails a geometric precondition (affinely dependent vertex set,
// duplicate points, pivot collapse in the circumsphere solve).
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value-sharing group of filtration entries is neither a singleton nor a
// reconstructible interval. Raised instead of silently repairing the step
// structure.
struct TieAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Combinatorial (step-partition) and geometric criticality disagree.
struct CrossCheckMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A filtration violates face-before-coface ordering or misses a face.
struct MalformedFiltration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested (N, k) outside the supported range.
struct UnsupportedDimension : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed CSV/JSON input or configuration.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cech
