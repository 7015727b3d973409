#include "rzlab/linalg.hpp"

#include <utility>

namespace rzlab {

namespace {

// Row index of the entry of least valuation in column `col` at or below `from`,
// or -1 if all are zero to precision.
int pick_pivot(const FMatrix& a, std::size_t col, std::size_t from) {
  int best = -1;
  int best_val = 0;
  for (std::size_t r = from; r < a.size(); ++r) {
    const auto v = a[r][col].valuation();
    if (v && (best < 0 || *v < best_val)) {
      best = static_cast<int>(r);
      best_val = *v;
    }
  }
  return best;
}

}  // namespace

FElem determinant(FMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) throw SingularGramError("empty matrix");
  const Field& F = a[0][0].field();
  FElem det(F.one());
  for (std::size_t c = 0; c < n; ++c) {
    const int p = pick_pivot(a, c, c);
    if (p < 0) return FElem(F.zero());
    if (static_cast<std::size_t>(p) != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    const FElem inv = a[c][c].inverse();
    det = det * a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const FElem factor = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - factor * a[c][k];
    }
  }
  return det;
}

std::vector<FElem> solve(FMatrix a, std::vector<FElem> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    const int p = pick_pivot(a, c, c);
    if (p < 0) throw SingularGramError("matrix is singular to the working precision");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const FElem inv = a[c][c].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const FElem factor = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - factor * a[c][k];
      b[r] = b[r] - factor * b[c];
    }
  }
  std::vector<FElem> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace rzlab
