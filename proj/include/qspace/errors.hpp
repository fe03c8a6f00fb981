#pragma once

#include <stdexcept>
#include <string>

namespace qspace {

// Base class for every domain error raised by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched multiplicity Q or ambient dimension n between operands.
struct dimension_mismatch : error {
    explicit dimension_mismatch(const std::string& what) : error(what) {}
};

// A stated hypothesis does not hold for the given inputs: brute-force cap
// exceeded, neighborhood membership, stratum closeness bound, chart radius.
struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

// Grouping or branch tracking cannot be decided at the given resolution.
struct ambiguity_error : error {
    explicit ambiguity_error(const std::string& what) : error(what) {}
};

// A quotient limit does not exist (components diverge or one-sided limits
// disagree as multisets), or the strong approximatability check fails.
struct not_differentiable : error {
    explicit not_differentiable(const std::string& what) : error(what) {}
};

}  // namespace qspace
