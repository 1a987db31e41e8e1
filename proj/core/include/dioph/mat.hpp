#pragma once

#include <vector>

#include "dioph/rat.hpp"

namespace dioph {

using IntMat = std::vector<std::vector<Int>>;

// Exact determinant of a square integer matrix (Bareiss fraction-free elimination).
Int int_det(IntMat m);

// Exact rank over Q of an arbitrary integer matrix.
int int_rank(IntMat m);

}  // namespace dioph
