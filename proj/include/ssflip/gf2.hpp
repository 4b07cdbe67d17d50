#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ssflip {

// Bit-packed binary vector. All external contracts are in bit indices;
// the 64-bit word packing is internal. Bits past `size()` in the last
// word are kept zero.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(size_t n_bits) : n_(n_bits), words_((n_bits + 63) / 64, 0) {}

  static Gf2Vector from_indices(size_t n_bits, const std::vector<uint32_t>& ones) {
    Gf2Vector v(n_bits);
    for (uint32_t i : ones) v.set(i, true);
    return v;
  }

  size_t size() const { return n_; }

  bool get(size_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(size_t i, bool b) {
    check_index(i);
    const uint64_t m = 1ull << (i & 63);
    if (b)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }

  void flip(size_t i) {
    check_index(i);
    words_[i >> 6] ^= 1ull << (i & 63);
  }

  size_t weight() const {
    size_t w = 0;
    for (uint64_t x : words_) w += static_cast<size_t>(std::popcount(x));
    return w;
  }

  bool any() const {
    for (uint64_t x : words_)
      if (x) return true;
    return false;
  }

  void clear() {
    for (uint64_t& x : words_) x = 0;
  }

  Gf2Vector& operator^=(const Gf2Vector& other) {
    check_same_size(other);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const Gf2Vector& a, const Gf2Vector& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const Gf2Vector& a, const Gf2Vector& b) { return !(a == b); }

  // Indices of set bits, ascending.
  std::vector<uint32_t> support() const {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t x = words_[w];
      while (x) {
        out.push_back(static_cast<uint32_t>((w << 6) + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  const std::vector<uint64_t>& words() const { return words_; }

 private:
  void check_index(size_t i) const {
    if (i >= n_) throw std::out_of_range("Gf2Vector: bit index out of range");
  }
  void check_same_size(const Gf2Vector& other) const {
    if (n_ != other.n_) throw std::invalid_argument("Gf2Vector: size mismatch");
  }

  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

// Hamming weight of the coordinatewise OR of two equal-length vectors.
inline size_t union_weight(const Gf2Vector& a, const Gf2Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("union_weight: size mismatch");
  size_t w = 0;
  for (size_t i = 0; i < a.words().size(); ++i)
    w += static_cast<size_t>(std::popcount(a.words()[i] | b.words()[i]));
  return w;
}

// FNV-1a over the sorted support; used for reproducible error-support ids.
inline uint64_t support_hash(const Gf2Vector& v) {
  uint64_t h = 1469598103934665603ull;
  for (uint32_t i : v.support()) {
    h ^= i;
    h *= 1099511628211ull;
  }
  return h;
}

// Sparse binary matrix held as sorted per-row and per-column support lists.
// The two directions always describe the same entry set.
class Gf2SparseMatrix {
 public:
  Gf2SparseMatrix() = default;

  // `row_supports[i]` lists the nonzero columns of row i. Lists must be
  // sorted, duplicate-free and in range.
  static Gf2SparseMatrix from_row_supports(uint32_t rows, uint32_t cols,
                                           std::vector<std::vector<uint32_t>> row_supports);

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }

  const std::vector<uint32_t>& row(uint32_t i) const { return row_supports_.at(i); }
  const std::vector<uint32_t>& col(uint32_t j) const { return col_supports_.at(j); }
  const std::vector<std::vector<uint32_t>>& row_supports() const { return row_supports_; }
  const std::vector<std::vector<uint32_t>>& col_supports() const { return col_supports_; }

  Gf2SparseMatrix transposed() const;

  // Row i as a packed vector.
  Gf2Vector row_vector(uint32_t i) const {
    return Gf2Vector::from_indices(cols_, row(i));
  }

 private:
  uint32_t rows_ = 0;
  uint32_t cols_ = 0;
  std::vector<std::vector<uint32_t>> row_supports_;
  std::vector<std::vector<uint32_t>> col_supports_;
};

// Row-echelon form of a matrix, reusable for repeated row-space queries.
struct Gf2Echelon {
  uint32_t cols = 0;
  std::vector<Gf2Vector> rows;        // one per pivot, echelon order
  std::vector<uint32_t> pivot_cols;   // pivot column of rows[i]

  uint32_t rank() const { return static_cast<uint32_t>(rows.size()); }

  // Reduce v against the echelon rows; returns the residual.
  Gf2Vector reduce(Gf2Vector v) const;

  // True iff v is a GF(2) combination of the original matrix rows.
  bool contains(const Gf2Vector& v) const { return !reduce(v).any(); }
};

Gf2Echelon echelon_form(const Gf2SparseMatrix& m);

// y = M v over GF(2); y[i] is the parity of v on row i's support.
Gf2Vector mat_vec(const Gf2SparseMatrix& m, const Gf2Vector& v);

uint32_t rank(const Gf2SparseMatrix& m);

// True iff v is a GF(2) linear combination of rows of m.
bool in_rowspace(const Gf2SparseMatrix& m, const Gf2Vector& v);

// Basis of {v : M v = 0}; size equals cols - rank.
std::vector<Gf2Vector> nullspace_basis(const Gf2SparseMatrix& m);

}  // namespace ssflip
