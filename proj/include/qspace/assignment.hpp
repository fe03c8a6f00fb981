#pragma once

#include <cstddef>
#include <vector>

namespace qspace {

// Min-cost perfect assignment on a dense n x n cost matrix (row-major) via
// shortest augmenting paths with potentials, O(n^3). Returns row -> column.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost,
                                          std::size_t n);

}  // namespace qspace
