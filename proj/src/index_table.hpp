#pragma once

#include <span>
#include <vector>

#include "entlock/linalg.hpp"

namespace entlock::detail {

/// Validates factor indices (in range, no repeats; all present if
/// `require_permutation`).
void check_factor_set(const DimList& dims, std::span<const int> factors, bool require_permutation);

/// For the flattening that lists factors in `order` (last fastest), maps each
/// flat position to the flat index of the original layout.
std::vector<Eigen::Index> index_table(const DimList& dims, std::span<const int> order);

}  // namespace entlock::detail
