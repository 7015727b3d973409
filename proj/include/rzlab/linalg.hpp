#pragma once

// Dense linear algebra over F with valuation-aware pivoting.

#include <vector>

#include "rzlab/padic.hpp"

namespace rzlab {

using FMatrix = std::vector<std::vector<FElem>>;

/// Determinant by Gaussian elimination; the result is zero-to-precision when
/// no pivot can be resolved.
FElem determinant(FMatrix a);

/// Solves a x = b for square nonsingular a; raises SingularGramError otherwise.
std::vector<FElem> solve(FMatrix a, std::vector<FElem> b);

}  // namespace rzlab
