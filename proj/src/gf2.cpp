#include "ssflip/gf2.hpp"

#include <algorithm>

namespace ssflip {

Gf2SparseMatrix Gf2SparseMatrix::from_row_supports(
    uint32_t rows, uint32_t cols, std::vector<std::vector<uint32_t>> row_supports) {
  if (row_supports.size() != rows)
    throw std::invalid_argument("Gf2SparseMatrix: row count mismatch");
  Gf2SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_supports_ = std::move(row_supports);
  m.col_supports_.assign(cols, {});
  for (uint32_t i = 0; i < rows; ++i) {
    const auto& support = m.row_supports_[i];
    for (size_t k = 0; k < support.size(); ++k) {
      const uint32_t j = support[k];
      if (j >= cols) throw std::invalid_argument("Gf2SparseMatrix: column index out of range");
      if (k > 0 && support[k - 1] >= j)
        throw std::invalid_argument("Gf2SparseMatrix: row support not sorted/duplicate-free");
      m.col_supports_[j].push_back(i);
    }
  }
  return m;
}

Gf2SparseMatrix Gf2SparseMatrix::transposed() const {
  return from_row_supports(cols_, rows_, col_supports_);
}

Gf2Vector mat_vec(const Gf2SparseMatrix& m, const Gf2Vector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
  Gf2Vector out(m.rows());
  for (uint32_t i = 0; i < m.rows(); ++i) {
    uint32_t parity = 0;
    for (uint32_t j : m.row(i)) parity ^= static_cast<uint32_t>(v.get(j));
    if (parity) out.set(i, true);
  }
  return out;
}

Gf2Vector Gf2Echelon::reduce(Gf2Vector v) const {
  if (v.size() != cols) throw std::invalid_argument("Gf2Echelon: dimension mismatch");
  for (size_t r = 0; r < rows.size(); ++r) {
    if (v.get(pivot_cols[r])) v ^= rows[r];
  }
  return v;
}

Gf2Echelon echelon_form(const Gf2SparseMatrix& m) {
  std::vector<Gf2Vector> work;
  work.reserve(m.rows());
  for (uint32_t i = 0; i < m.rows(); ++i) work.push_back(m.row_vector(i));

  Gf2Echelon e;
  e.cols = m.cols();
  size_t next = 0;  // first unprocessed work row
  for (uint32_t col = 0; col < m.cols() && next < work.size(); ++col) {
    // first row with a nonzero entry in this column
    size_t pivot = next;
    while (pivot < work.size() && !work[pivot].get(col)) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[next], work[pivot]);
    for (size_t r = next + 1; r < work.size(); ++r) {
      if (work[r].get(col)) work[r] ^= work[next];
    }
    e.rows.push_back(work[next]);
    e.pivot_cols.push_back(col);
    ++next;
  }
  return e;
}

uint32_t rank(const Gf2SparseMatrix& m) { return echelon_form(m).rank(); }

bool in_rowspace(const Gf2SparseMatrix& m, const Gf2Vector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("in_rowspace: dimension mismatch");
  return echelon_form(m).contains(v);
}

std::vector<Gf2Vector> nullspace_basis(const Gf2SparseMatrix& m) {
  Gf2Echelon e = echelon_form(m);
  // Reduce above the pivots too, so each pivot column appears in one row.
  for (size_t r = e.rows.size(); r-- > 0;) {
    for (size_t above = 0; above < r; ++above) {
      if (e.rows[above].get(e.pivot_cols[r])) e.rows[above] ^= e.rows[r];
    }
  }
  std::vector<bool> is_pivot(m.cols(), false);
  for (uint32_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<Gf2Vector> basis;
  for (uint32_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Gf2Vector v(m.cols());
    v.set(free, true);
    for (size_t r = 0; r < e.rows.size(); ++r) {
      if (e.rows[r].get(free)) v.set(e.pivot_cols[r], true);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ssflip
