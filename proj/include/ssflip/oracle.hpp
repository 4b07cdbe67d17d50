#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssflip/code.hpp"
#include "ssflip/decoder.hpp"

namespace ssflip {
namespace oracle {

// Deliberately naive reference implementations. Everything here is
// exhaustive and size-gated: infeasible requests throw InfeasibleError
// rather than approximating.

// Distance value with an explicit infinity (no subset sums to zero).
struct Distance {
  bool finite = false;
  uint64_t value = 0;

  static Distance infinity() { return {false, 0}; }
  static Distance of(uint64_t v) { return {true, v}; }

  friend bool operator==(const Distance&, const Distance&) = default;
  // infinity compares greater than every finite value
  bool less_than(const Distance& o) const {
    if (!finite) return false;
    if (!o.finite) return true;
    return value < o.value;
  }
  std::string str() const { return finite ? std::to_string(value) : "inf"; }
};

inline Distance min_distance_pair(Distance a, Distance b) { return b.less_than(a) ? b : a; }

// Minimum weight of a nonzero vector v with Hv = 0, or infinity if the
// nullspace is trivial. Enumerates the full nullspace when its dimension
// is at most 24; otherwise, with weight_cap > 0, searches all supports of
// weight <= weight_cap (returning infinity if none works, i.e. "none in
// the search space"). Throws InfeasibleError beyond those budgets.
Distance classical_min_distance(const Gf2SparseMatrix& h, uint32_t weight_cap = 0,
                                uint64_t enumeration_ceiling = 100000000ull);

// Minimum number of rows of H summing to zero.
Distance transpose_min_distance(const Gf2SparseMatrix& h, uint32_t weight_cap = 0,
                                uint64_t enumeration_ceiling = 100000000ull);

struct QuantumDistance {
  Distance distance;                   // min over the two sides
  Distance d_x, d_z;                   // per-side minima
  std::optional<Gf2Vector> witness;    // a minimum-weight logical, if any
  PauliSide witness_side = PauliSide::X;
};

// Minimum weight over {v : h_x v = 0, v not in rowspace(h_z)} and the
// symmetric Z-side set; infinity when k = 0. Full kernel enumeration,
// gated at kernel dimension 24 per side; beyond that, weight_cap in [1,3]
// switches to a bounded search (infinity then means "none within the
// searched weights").
QuantumDistance quantum_min_distance(const CssCode& c, uint32_t weight_cap = 0);

// Smallest Hamming weight in the coset e + rowspace(generator matrix of
// the opposite side): for side X this is e + <rows of h_z>. Enumerates all
// 2^m generator combinations; requires m <= 20.
uint64_t reduced_weight(const CssCode& c, const Gf2Vector& e, PauliSide side);

// Correct-decoding criterion: the output differs from the error by a sum
// of opposite-side generator rows. Polynomial; usable at any scale.
bool is_correctly_decoded(const CssCode& c, const Gf2Vector& e, const Gf2Vector& correction,
                          PauliSide side);
// Same, with a precomputed echelon form of the generator matrix.
bool is_correctly_decoded(const Gf2Echelon& generator_rowspace, const Gf2Vector& e,
                          const Gf2Vector& correction);

// --- critical generators -------------------------------------------------

// Partition classes of a generator support relative to an error set E.
enum PartClass : uint32_t {
  kError = 0,     // in E, kept
  kClean = 1,     // not in E, kept
  kExcluded = 2,  // removed from the analysis (multiple-neighbor slack)
};

// A generator is critical for E when its support splits, on each of its
// two blocks, into error / clean / excluded parts such that every check
// seen only by kept parts has no error neighbors outside the generator,
// the excluded parts respect the expansion slack caps
// |excluded_a| <= 2 * delta_b * Delta_B and |excluded_b| <= 2 * delta_a * Delta_A
// (sides mirrored for Z), and at least one kept error qubit exists.
struct CriticalDecomposition {
  PauliSide side = PauliSide::X;
  uint32_t generator = 0;      // row id in the generator matrix
  uint32_t gen_first = 0;      // (b, a) for side X; (alpha, beta) for side Z
  uint32_t gen_second = 0;
  // part_a: the A^2 block of the generator (size Delta_B for side X);
  // part_b: the B^2 block (size Delta_A). Sorted flat qubit ids per class.
  std::array<std::vector<uint32_t>, 3> part_a;
  std::array<std::vector<uint32_t>, 3> part_b;
  Gf2Vector error;  // the error set E the decomposition is relative to
  double gamma_a = 0, delta_a = 0, gamma_b = 0, delta_b = 0;

  uint32_t block_a_size() const;  // |g ∩ A^2-block|
  uint32_t block_b_size() const;
};

// Verifies every requirement of the decomposition against the code's
// adjacency; returns an error description or nullopt if valid.
std::optional<std::string> check_critical_decomposition(const CssCode& c,
                                                        const CriticalDecomposition& d);

// Scans generators intersecting E in row order; for each, searches the
// excluded-part choices (smallest total size first) for a valid
// decomposition and returns the first one found. E must be nonempty.
std::optional<CriticalDecomposition> find_critical_generator(
    const CssCode& c, const Gf2Vector& error, double gamma_a, double delta_a, double gamma_b,
    double delta_b, PauliSide side = PauliSide::X);

// The 3x3 grid of check sets induced by a decomposition: cell (i, j) holds
// the checks adjacent to a part-a qubit of class i and a part-b qubit of
// class j. Cells are pairwise disjoint and cover the generator's checks.
struct SyndromePartition {
  std::array<std::array<std::vector<uint32_t>, 3>, 3> cells;
  const std::vector<uint32_t>& cell(PartClass a, PartClass b) const {
    return cells[a][b];
  }
};

// Builds the partition and verifies the forced syndrome values: 0 on the
// error/error and clean/clean cells, 1 on the mixed kept cells. Throws
// std::invalid_argument if the decomposition is not valid.
SyndromePartition syndrome_partition(const CssCode& c, const CriticalDecomposition& d);

// Diagnostics from the guaranteed-progress flip construction.
struct FlipAnalysis {
  int case_index = 0;          // 1..4, mirroring the proof's case split
  int64_t decrease_error = 0;  // syndrome decrease when flipping the kept error parts
  int64_t decrease_alt = 0;    // decrease for the clean parts (or their complement)
};

// Picks a flip inside the critical generator that decreases the syndrome
// weight by at least |flip|/3 and does not increase the reduced weight.
// Requires delta_a, delta_b < 1/6 and |E ∩ g| <= (Delta_A + Delta_B)/2
// (the half-weight consequence of e being a minimum-weight coset
// representative); throws HypothesisError otherwise. The exact flip
// accounting lower bounds are re-verified internally.
FlipCandidate progress_flip(const CssCode& c, const Gf2Vector& error,
                            const CriticalDecomposition& d, FlipAnalysis* analysis = nullptr);

// Decodes by iterating find_critical_generator + progress_flip until the
// syndrome is zero. Follows the robustness proof's path; unlike the
// production decoder it flips guaranteed-progress patterns, not max-ratio
// ones. Returns the applied flips and per-step syndrome weights.
struct CriticalDecodeResult {
  bool success = false;
  Gf2Vector correction;
  uint64_t sum_flip_sizes = 0;
  uint32_t iterations = 0;
  uint32_t initial_syndrome_weight = 0;
};
CriticalDecodeResult decode_by_critical_flips(const CssCode& c, const Gf2Vector& error,
                                              double gamma_a, double delta_a, double gamma_b,
                                              double delta_b, PauliSide side = PauliSide::X,
                                              uint32_t max_iterations = 10000);

// --- classical baseline ---------------------------------------------------

// Serial bit-flip decoding of the classical code with parity-check matrix
// H = incidence(G): repeatedly flips the first A-bit whose flip strictly
// decreases the syndrome weight. Returns the correction or nullopt when
// stuck with a nonzero syndrome.
std::optional<Gf2Vector> classical_flip_decode(const BipartiteGraph& g, const Gf2Vector& s);

// Nonzero kernel vectors of M with weight <= cap (cap <= 3), found by
// column matching. Used to rule out low-weight stabilizers at scales where
// coset enumeration is infeasible.
std::vector<Gf2Vector> kernel_vectors_up_to_weight(const Gf2SparseMatrix& m, uint32_t cap);

}  // namespace oracle
}  // namespace ssflip
