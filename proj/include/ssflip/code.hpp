#pragma once

#include <cstdint>
#include <vector>

#include "ssflip/gf2.hpp"
#include "ssflip/graph.hpp"

namespace ssflip {

// Which Pauli component an error/syndrome/decoding pass refers to.
enum class PauliSide { X, Z };

inline PauliSide other_side(PauliSide s) {
  return s == PauliSide::X ? PauliSide::Z : PauliSide::X;
}
inline const char* side_name(PauliSide s) { return s == PauliSide::X ? "X" : "Z"; }

// Qubits live on A^2 u B^2. AA qubits are pairs (alpha, a), BB qubits are
// pairs (b, beta). Flat layout: AA block first, row-major in (alpha, a);
// then the BB block, row-major in (b, beta), offset by n_A^2.
struct QubitIndex {
  enum Kind { AA, BB };
  Kind kind;
  uint32_t first;
  uint32_t second;
  uint32_t flat;
};

// CSS code built from a bipartite graph via the product construction:
//   h_x = (1_{n_A} (x) H | H^T (x) 1_{n_B})
//   h_z = (H (x) 1_{n_A} | 1_{n_B} (x) H^T)
// with H the n_B x n_A incidence matrix of the graph. Rows of h_x are
// X checks indexed by (alpha, beta) in A x B; rows of h_z are Z generators
// indexed by (b, a) in B x A. Immutable after construction.
struct CssCode {
  BipartiteGraph graph;
  Gf2SparseMatrix h_x;  // (n_a * n_b) x n
  Gf2SparseMatrix h_z;  // (n_b * n_a) x n
  uint32_t n = 0;       // n_a^2 + n_b^2

  uint32_t n_a() const { return graph.n_a; }
  uint32_t n_b() const { return graph.n_b; }
  uint32_t delta_a() const { return graph.delta_a; }
  uint32_t delta_b() const { return graph.delta_b; }
  uint32_t row_weight() const { return graph.delta_a + graph.delta_b; }

  uint32_t qubit_aa(uint32_t alpha, uint32_t a) const { return alpha * n_a() + a; }
  uint32_t qubit_bb(uint32_t b, uint32_t beta) const { return n_a() * n_a() + b * n_b() + beta; }
  QubitIndex qubit(uint32_t flat) const;

  uint32_t x_check_index(uint32_t alpha, uint32_t beta) const { return alpha * n_b() + beta; }
  uint32_t z_generator_index(uint32_t b, uint32_t a) const { return b * n_a() + a; }

  const Gf2SparseMatrix& syndrome_matrix(PauliSide side) const {
    return side == PauliSide::X ? h_x : h_z;
  }
  // Generators eligible for flips when decoding the given error side.
  const Gf2SparseMatrix& generator_matrix(PauliSide side) const {
    return side == PauliSide::X ? h_z : h_x;
  }
};

// Builds the code and asserts its structural invariants (row weights,
// n = n_A^2 + n_B^2). Rejects delta_a + delta_b > 20: every decoder flip
// search enumerates 2^(delta_a+delta_b) subsets of a generator support.
CssCode build_hypergraph_product(const BipartiteGraph& g);

// Support of Z generator g_ba: {(alpha,a): alpha ~ b} u {(b,beta): beta ~ a}.
std::vector<QubitIndex> z_generator_support(const CssCode& c, uint32_t b, uint32_t a);

// Support of X check g_{alpha beta}: {(alpha,a): a ~ beta} u {(b,beta): b ~ alpha}.
std::vector<QubitIndex> x_check_support(const CssCode& c, uint32_t alpha, uint32_t beta);

Gf2Vector syndrome_x(const CssCode& c, const Gf2Vector& e_x);
Gf2Vector syndrome_z(const CssCode& c, const Gf2Vector& e_z);
inline Gf2Vector syndrome(const CssCode& c, PauliSide side, const Gf2Vector& e) {
  return side == PauliSide::X ? syndrome_x(c, e) : syndrome_z(c, e);
}

// k = n - rank(h_x) - rank(h_z), computed exactly; throws std::logic_error
// if the structural bound k >= (n_a - n_b)^2 fails.
uint32_t code_dimension(const CssCode& c);

// Pair of X/Z error vectors over the n qubits.
struct ErrorPattern {
  Gf2Vector e_x;
  Gf2Vector e_z;

  // Number of positions where at least one component is set.
  size_t weight() const { return union_weight(e_x, e_z); }
};

}  // namespace ssflip
