#include "dioph/mat.hpp"

namespace dioph {

Int int_det(IntMat m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw PreconditionViolation("determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num / prev;  // Bareiss: exact division
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

int int_rank(IntMat m) {
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw PreconditionViolation("ragged matrix");
  int rank = 0;
  size_t r = 0;
  Int prev = 1;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < rows; ++i)
      for (size_t j = c + 1; j < cols; ++j) {
        Int num = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        m[i][j] = num / prev;
      }
    for (size_t i = r + 1; i < rows; ++i) m[i][c] = 0;
    prev = m[r][c];
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace dioph
