#include "ssflip/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ssflip/errors.hpp"

namespace ssflip {
namespace oracle {

namespace {

// Lexicographic next k-combination over [0, n).
bool next_combination(std::vector<uint32_t>& c, uint32_t n) {
  const uint32_t k = static_cast<uint32_t>(c.size());
  for (uint32_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (uint32_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

uint64_t combination_total(uint32_t n, uint32_t cap, uint64_t limit) {
  uint64_t total = 0, binom = 1;
  for (uint32_t s = 1; s <= cap && s <= n; ++s) {
    binom = binom * (n - s + 1) / s;
    if (binom > limit || (total += binom) > limit) return limit + 1;
  }
  return total;
}

// Minimum weight over nonzero combinations of `basis`, skipping vectors
// accepted by `skip`. Gray-code walk, one basis XOR per step.
template <typename SkipFn>
Distance min_weight_in_span(const std::vector<Gf2Vector>& basis, size_t n_bits, SkipFn skip,
                            Gf2Vector* witness_out) {
  const uint32_t dim = static_cast<uint32_t>(basis.size());
  if (dim == 0) return Distance::infinity();
  if (dim > 24) throw InfeasibleError("min_weight_in_span: span dimension " +
                                      std::to_string(dim) + " exceeds 24");
  Gf2Vector current(n_bits);
  Distance best = Distance::infinity();
  const uint64_t count = 1ull << dim;
  for (uint64_t i = 1; i < count; ++i) {
    current ^= basis[static_cast<size_t>(std::countr_zero(i))];
    if (skip(current)) continue;
    const uint64_t w = current.weight();
    if (!best.finite || w < best.value) {
      best = Distance::of(w);
      if (witness_out) *witness_out = current;
    }
  }
  return best;
}

}  // namespace

Distance classical_min_distance(const Gf2SparseMatrix& h, uint32_t weight_cap,
                                uint64_t enumeration_ceiling) {
  const Gf2Echelon ech = echelon_form(h);
  if (ech.rank() == h.cols()) return Distance::infinity();  // trivial nullspace, exact

  const uint32_t dim = h.cols() - ech.rank();
  if (dim <= 24 && (1ull << dim) <= enumeration_ceiling) {
    return min_weight_in_span(nullspace_basis(h), h.cols(),
                              [](const Gf2Vector&) { return false; }, nullptr);
  }
  if (weight_cap > 0) {
    if (combination_total(h.cols(), weight_cap, enumeration_ceiling) > enumeration_ceiling)
      throw InfeasibleError("classical_min_distance: weight-bounded search over ceiling");
    for (uint32_t w = 1; w <= weight_cap && w <= h.cols(); ++w) {
      std::vector<uint32_t> support(w);
      for (uint32_t i = 0; i < w; ++i) support[i] = i;
      do {
        Gf2Vector parity(h.rows());
        for (uint32_t j : support)
          for (uint32_t i : h.col(j)) parity.flip(i);
        if (!parity.any()) return Distance::of(w);
      } while (next_combination(support, h.cols()));
    }
    return Distance::infinity();  // none within the searched weights
  }
  throw InfeasibleError("classical_min_distance: nullspace dimension " + std::to_string(dim) +
                        " too large and no weight cap given");
}

Distance transpose_min_distance(const Gf2SparseMatrix& h, uint32_t weight_cap,
                                uint64_t enumeration_ceiling) {
  return classical_min_distance(h.transposed(), weight_cap, enumeration_ceiling);
}

QuantumDistance quantum_min_distance(const CssCode& c, uint32_t weight_cap) {
  QuantumDistance out;
  const Gf2Echelon ech_z = echelon_form(c.h_z);
  const Gf2Echelon ech_x = echelon_form(c.h_x);

  // One decoding side: the full kernel when enumerable, otherwise a
  // weight-bounded scan for kernel vectors outside the opposite row space.
  auto one_side = [&](const Gf2SparseMatrix& kernel_of, const Gf2Echelon& modulo,
                      Gf2Vector* witness) {
    const uint32_t dim = c.n - echelon_form(kernel_of).rank();
    if (dim <= 24) {
      return min_weight_in_span(nullspace_basis(kernel_of), c.n,
                                [&](const Gf2Vector& v) { return modulo.contains(v); },
                                witness);
    }
    if (weight_cap >= 1 && weight_cap <= 3) {
      Distance best = Distance::infinity();
      for (const auto& v : kernel_vectors_up_to_weight(kernel_of, weight_cap)) {
        if (modulo.contains(v)) continue;
        if (!best.finite || v.weight() < best.value) {
          best = Distance::of(v.weight());
          *witness = v;
        }
      }
      return best;  // infinity here means "none within the searched weights"
    }
    throw InfeasibleError("quantum_min_distance: kernel dimension " + std::to_string(dim) +
                          " exceeds 24 and no usable weight cap given");
  };

  Gf2Vector witness_x, witness_z;
  out.d_x = one_side(c.h_x, ech_z, &witness_x);
  out.d_z = one_side(c.h_z, ech_x, &witness_z);
  out.distance = min_distance_pair(out.d_x, out.d_z);
  if (out.d_z.finite && (!out.d_x.finite || out.d_z.value < out.d_x.value)) {
    out.witness = witness_z;
    out.witness_side = PauliSide::Z;
  } else if (out.d_x.finite) {
    out.witness = witness_x;
    out.witness_side = PauliSide::X;
  }
  return out;
}

uint64_t reduced_weight(const CssCode& c, const Gf2Vector& e, PauliSide side) {
  if (e.size() != c.n) throw std::invalid_argument("reduced_weight: vector length mismatch");
  const Gf2SparseMatrix& gens = c.generator_matrix(side);
  if (gens.rows() > 20)
    throw InfeasibleError("reduced_weight: " + std::to_string(gens.rows()) +
                          " generators; coset enumeration requires at most 20");
  // Gray-code over all generator subsets, tracking the weight incrementally.
  Gf2Vector current = e;
  uint64_t weight = current.weight();
  uint64_t best = weight;
  const uint64_t count = 1ull << gens.rows();
  for (uint64_t i = 1; i < count; ++i) {
    const auto& row = gens.row(static_cast<uint32_t>(std::countr_zero(i)));
    for (uint32_t q : row) {
      if (current.get(q)) {
        current.set(q, false);
        --weight;
      } else {
        current.set(q, true);
        ++weight;
      }
    }
    best = std::min(best, weight);
  }
  return best;
}

bool is_correctly_decoded(const CssCode& c, const Gf2Vector& e, const Gf2Vector& correction,
                          PauliSide side) {
  if (e.size() != c.n || correction.size() != c.n)
    throw std::invalid_argument("is_correctly_decoded: vector length mismatch");
  return in_rowspace(c.generator_matrix(side), e ^ correction);
}

bool is_correctly_decoded(const Gf2Echelon& generator_rowspace, const Gf2Vector& e,
                          const Gf2Vector& correction) {
  return generator_rowspace.contains(e ^ correction);
}

// --- critical generators ----------------------------------------------------

namespace {

// A generator's support as a grid: the A^2 block (one qubit per grid
// "a-line") against the B^2 block, with cell (i, j) the unique check
// adjacent to both a_qubits[i] and b_qubits[j], and to no other support
// qubit. For side X the generator is g_ba with grid Gamma(b) x Gamma(a);
// for side Z it is g_{alpha beta} with grid Gamma(alpha) x Gamma(beta).
struct GeneratorView {
  uint32_t gen = 0;
  uint32_t first = 0, second = 0;  // (b, a) or (alpha, beta)
  std::vector<uint32_t> a_qubits;  // A^2 block, size Delta_B
  std::vector<uint32_t> b_qubits;  // B^2 block, size Delta_A
  std::vector<uint32_t> grid;      // check ids, a-major: grid[i * |b| + j]

  uint32_t a_count() const { return static_cast<uint32_t>(a_qubits.size()); }
  uint32_t b_count() const { return static_cast<uint32_t>(b_qubits.size()); }
  uint32_t cell(uint32_t i, uint32_t j) const { return grid[i * b_count() + j]; }
};

GeneratorView make_view(const CssCode& c, PauliSide side, uint32_t gen) {
  GeneratorView v;
  v.gen = gen;
  const BipartiteGraph& g = c.graph;
  if (side == PauliSide::X) {
    const uint32_t b = gen / c.n_a(), a = gen % c.n_a();
    v.first = b;
    v.second = a;
    for (uint32_t alpha : g.adj_b[b]) v.a_qubits.push_back(c.qubit_aa(alpha, a));
    for (uint32_t beta : g.adj_a[a]) v.b_qubits.push_back(c.qubit_bb(b, beta));
    v.grid.reserve(v.a_count() * v.b_count());
    for (uint32_t alpha : g.adj_b[b])
      for (uint32_t beta : g.adj_a[a]) v.grid.push_back(c.x_check_index(alpha, beta));
  } else {
    const uint32_t alpha = gen / c.n_b(), beta = gen % c.n_b();
    v.first = alpha;
    v.second = beta;
    for (uint32_t a : g.adj_b[beta]) v.a_qubits.push_back(c.qubit_aa(alpha, a));
    for (uint32_t b : g.adj_a[alpha]) v.b_qubits.push_back(c.qubit_bb(b, beta));
    v.grid.reserve(v.a_count() * v.b_count());
    for (uint32_t a : g.adj_b[beta])
      for (uint32_t b : g.adj_a[alpha]) v.grid.push_back(c.z_generator_index(b, a));
  }
  return v;
}

uint32_t count_error_neighbors(const Gf2SparseMatrix& syn_mat, uint32_t check,
                               const Gf2Vector& error) {
  uint32_t count = 0;
  for (uint32_t q : syn_mat.row(check)) count += static_cast<uint32_t>(error.get(q));
  return count;
}

// Slack caps from the expansion deficiencies: the A^2 block may exclude at
// most 2 * delta_b * Delta_B qubits, the B^2 block at most
// 2 * delta_a * Delta_A (block sizes are Delta_B and Delta_A respectively,
// on both decoding sides).
uint32_t slack_cap(double delta, uint32_t block_size) {
  const double bound = 2.0 * delta * static_cast<double>(block_size);
  if (!(bound > 0)) return 0;
  const uint32_t cap = static_cast<uint32_t>(bound + 1e-9);
  return std::min(cap, block_size);
}

std::vector<std::vector<uint32_t>> masks_by_popcount(uint32_t width, uint32_t cap) {
  std::vector<std::vector<uint32_t>> out(cap + 1);
  for (uint32_t m = 0; m < (1u << width); ++m) {
    const uint32_t p = static_cast<uint32_t>(std::popcount(m));
    if (p <= cap) out[p].push_back(m);
  }
  return out;
}

}  // namespace

uint32_t CriticalDecomposition::block_a_size() const {
  return static_cast<uint32_t>(part_a[0].size() + part_a[1].size() + part_a[2].size());
}
uint32_t CriticalDecomposition::block_b_size() const {
  return static_cast<uint32_t>(part_b[0].size() + part_b[1].size() + part_b[2].size());
}

std::optional<std::string> check_critical_decomposition(const CssCode& c,
                                                        const CriticalDecomposition& d) {
  const Gf2SparseMatrix& gen_mat = c.generator_matrix(d.side);
  const Gf2SparseMatrix& syn_mat = c.syndrome_matrix(d.side);
  if (d.generator >= gen_mat.rows()) return "generator id out of range";
  if (d.error.size() != c.n) return "error vector length mismatch";
  const GeneratorView view = make_view(c, d.side, d.generator);

  // The six parts must partition the two blocks.
  auto classify = [](const std::array<std::vector<uint32_t>, 3>& parts,
                     const std::vector<uint32_t>& block,
                     std::vector<PartClass>& klass) -> std::optional<std::string> {
    klass.assign(block.size(), kClean);
    std::vector<bool> seen(block.size(), false);
    size_t total = 0;
    for (uint32_t cls = 0; cls < 3; ++cls) {
      for (uint32_t q : parts[cls]) {
        const auto it = std::lower_bound(block.begin(), block.end(), q);
        if (it == block.end() || *it != q) return "part qubit not in the generator block";
        const size_t idx = static_cast<size_t>(it - block.begin());
        if (seen[idx]) return "parts overlap";
        seen[idx] = true;
        klass[idx] = static_cast<PartClass>(cls);
        ++total;
      }
    }
    if (total != block.size()) return "parts do not cover the block";
    return std::nullopt;
  };

  std::vector<PartClass> class_a, class_b;
  if (auto err = classify(d.part_a, view.a_qubits, class_a)) return err;
  if (auto err = classify(d.part_b, view.b_qubits, class_b)) return err;

  // Error membership: kept-error parts inside E, kept-clean parts outside.
  for (uint32_t i = 0; i < view.a_count(); ++i) {
    const bool in_e = d.error.get(view.a_qubits[i]);
    if (class_a[i] == kError && !in_e) return "error part contains a non-error qubit";
    if (class_a[i] == kClean && in_e) return "clean part contains an error qubit";
  }
  for (uint32_t j = 0; j < view.b_count(); ++j) {
    const bool in_e = d.error.get(view.b_qubits[j]);
    if (class_b[j] == kError && !in_e) return "error part contains a non-error qubit";
    if (class_b[j] == kClean && in_e) return "clean part contains an error qubit";
  }

  if (d.part_a[kError].empty() && d.part_b[kError].empty())
    return "no kept error qubit (x_a and x_b both empty)";
  if (d.part_a[kExcluded].size() >
      static_cast<size_t>(slack_cap(d.delta_b, view.a_count())))
    return "excluded A-block part exceeds its slack cap";
  if (d.part_b[kExcluded].size() >
      static_cast<size_t>(slack_cap(d.delta_a, view.b_count())))
    return "excluded B-block part exceeds its slack cap";

  // Neighbor-count conditions on every kept grid cell.
  for (uint32_t i = 0; i < view.a_count(); ++i) {
    if (class_a[i] == kExcluded) continue;
    for (uint32_t j = 0; j < view.b_count(); ++j) {
      if (class_b[j] == kExcluded) continue;
      const uint32_t expected = static_cast<uint32_t>(class_a[i] == kError) +
                                static_cast<uint32_t>(class_b[j] == kError);
      if (count_error_neighbors(syn_mat, view.cell(i, j), d.error) != expected)
        return "kept check at grid (" + std::to_string(i) + "," + std::to_string(j) +
               ") violates its neighbor-count condition";
    }
  }
  return std::nullopt;
}

std::optional<CriticalDecomposition> find_critical_generator(
    const CssCode& c, const Gf2Vector& error, double gamma_a, double delta_a, double gamma_b,
    double delta_b, PauliSide side) {
  if (error.size() != c.n)
    throw std::invalid_argument("find_critical_generator: error length mismatch");
  if (!error.any()) throw std::invalid_argument("find_critical_generator: error set is empty");

  const Gf2SparseMatrix& gen_mat = c.generator_matrix(side);
  const Gf2SparseMatrix& syn_mat = c.syndrome_matrix(side);

  // Only generators meeting the error can be critical (a kept error qubit
  // must exist inside the generator).
  std::vector<uint32_t> candidates;
  for (uint32_t q : error.support())
    for (uint32_t g : gen_mat.col(q)) candidates.push_back(g);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (uint32_t gen : candidates) {
    const GeneratorView view = make_view(c, side, gen);
    const uint32_t na = view.a_count(), nb = view.b_count();
    const uint32_t cap_a = slack_cap(delta_b, na);
    const uint32_t cap_b = slack_cap(delta_a, nb);

    std::vector<bool> in_e_a(na), in_e_b(nb);
    for (uint32_t i = 0; i < na; ++i) in_e_a[i] = error.get(view.a_qubits[i]);
    for (uint32_t j = 0; j < nb; ++j) in_e_b[j] = error.get(view.b_qubits[j]);

    // bad(i,j): the cell check has an error neighbor outside the generator,
    // so row i or column j must be excluded.
    std::vector<uint32_t> bad_cells;
    for (uint32_t i = 0; i < na; ++i) {
      for (uint32_t j = 0; j < nb; ++j) {
        const uint32_t in_gen = static_cast<uint32_t>(in_e_a[i]) +
                                static_cast<uint32_t>(in_e_b[j]);
        if (count_error_neighbors(syn_mat, view.cell(i, j), error) != in_gen)
          bad_cells.push_back(i * nb + j);
      }
    }

    const auto masks_a = masks_by_popcount(na, cap_a);
    const auto masks_b = masks_by_popcount(nb, cap_b);
    const uint32_t all_e_a = [&] {
      uint32_t m = 0;
      for (uint32_t i = 0; i < na; ++i) m |= static_cast<uint32_t>(in_e_a[i]) << i;
      return m;
    }();
    const uint32_t all_e_b = [&] {
      uint32_t m = 0;
      for (uint32_t j = 0; j < nb; ++j) m |= static_cast<uint32_t>(in_e_b[j]) << j;
      return m;
    }();

    // Smallest excluded sets first, then lexicographic masks.
    for (uint32_t total = 0; total <= cap_a + cap_b; ++total) {
      for (uint32_t sa = (total > cap_b ? total - cap_b : 0); sa <= std::min(total, cap_a);
           ++sa) {
        for (uint32_t exc_a : masks_a[sa]) {
          for (uint32_t exc_b : masks_b[total - sa]) {
            // kept error qubit must remain
            if ((all_e_a & ~exc_a) == 0 && (all_e_b & ~exc_b) == 0) continue;
            bool covered = true;
            for (uint32_t cell : bad_cells) {
              const uint32_t i = cell / nb, j = cell % nb;
              if (!((exc_a >> i) & 1) && !((exc_b >> j) & 1)) {
                covered = false;
                break;
              }
            }
            if (!covered) continue;

            CriticalDecomposition d;
            d.side = side;
            d.generator = gen;
            d.gen_first = view.first;
            d.gen_second = view.second;
            d.error = error;
            d.gamma_a = gamma_a;
            d.delta_a = delta_a;
            d.gamma_b = gamma_b;
            d.delta_b = delta_b;
            for (uint32_t i = 0; i < na; ++i) {
              const PartClass cls =
                  ((exc_a >> i) & 1) ? kExcluded : (in_e_a[i] ? kError : kClean);
              d.part_a[cls].push_back(view.a_qubits[i]);
            }
            for (uint32_t j = 0; j < nb; ++j) {
              const PartClass cls =
                  ((exc_b >> j) & 1) ? kExcluded : (in_e_b[j] ? kError : kClean);
              d.part_b[cls].push_back(view.b_qubits[j]);
            }
            if (auto err = check_critical_decomposition(c, d))
              throw std::logic_error("find_critical_generator: constructed decomposition "
                                     "failed verification: " + *err);
            return d;
          }
        }
      }
    }
  }
  return std::nullopt;
}

SyndromePartition syndrome_partition(const CssCode& c, const CriticalDecomposition& d) {
  if (auto err = check_critical_decomposition(c, d))
    throw std::invalid_argument("syndrome_partition: invalid decomposition: " + *err);

  const GeneratorView view = make_view(c, d.side, d.generator);
  auto class_of = [](const std::array<std::vector<uint32_t>, 3>& parts, uint32_t q) {
    for (uint32_t cls = 0; cls < 3; ++cls)
      if (std::binary_search(parts[cls].begin(), parts[cls].end(), q))
        return static_cast<PartClass>(cls);
    throw std::logic_error("syndrome_partition: qubit not classified");
  };

  SyndromePartition p;
  for (uint32_t i = 0; i < view.a_count(); ++i) {
    const PartClass ca = class_of(d.part_a, view.a_qubits[i]);
    for (uint32_t j = 0; j < view.b_count(); ++j) {
      const PartClass cb = class_of(d.part_b, view.b_qubits[j]);
      p.cells[ca][cb].push_back(view.cell(i, j));
    }
  }

  // Forced syndrome values on the kept cells.
  const Gf2Vector s = syndrome(c, d.side, d.error);
  auto expect = [&](PartClass ca, PartClass cb, bool value) {
    for (uint32_t chk : p.cells[ca][cb]) {
      if (s.get(chk) != value)
        throw std::logic_error("syndrome_partition: kept cell has unexpected syndrome value");
    }
  };
  expect(kError, kError, false);
  expect(kClean, kClean, false);
  expect(kError, kClean, true);
  expect(kClean, kError, true);
  return p;
}

FlipCandidate progress_flip(const CssCode& c, const Gf2Vector& error,
                            const CriticalDecomposition& d, FlipAnalysis* analysis) {
  if (auto err = check_critical_decomposition(c, d))
    throw std::invalid_argument("progress_flip: invalid decomposition: " + *err);
  if (error != d.error)
    throw std::invalid_argument("progress_flip: error differs from the decomposition's");
  if (!(d.delta_a < 1.0 / 6.0) || !(d.delta_b < 1.0 / 6.0))
    throw HypothesisError("progress_flip: requires delta_A, delta_B < 1/6");

  const GeneratorView view = make_view(c, d.side, d.generator);
  const int64_t block_a = view.a_count();  // Delta_B
  const int64_t block_b = view.b_count();  // Delta_A

  // Half-weight consequence of e being a minimum-weight coset
  // representative: |E ∩ g| <= (Delta_A + Delta_B) / 2.
  int64_t in_gen = 0;
  for (uint32_t q : view.a_qubits) in_gen += error.get(q);
  for (uint32_t q : view.b_qubits) in_gen += error.get(q);
  if (2 * in_gen > block_a + block_b)
    throw HypothesisError("progress_flip: more than half the generator is in error; the "
                          "error is not a minimum-weight coset representative");

  const int64_t err_a = static_cast<int64_t>(d.part_a[kError].size());
  const int64_t clean_a = static_cast<int64_t>(d.part_a[kClean].size());
  const int64_t exc_a = static_cast<int64_t>(d.part_a[kExcluded].size());
  const int64_t err_b = static_cast<int64_t>(d.part_b[kError].size());
  const int64_t clean_b = static_cast<int64_t>(d.part_b[kClean].size());
  const int64_t exc_b = static_cast<int64_t>(d.part_b[kExcluded].size());

  // Integrality upgrade of the slack bounds under delta < 1/6:
  // excluded fractions are at most 1/3 - 1/(3 * block).
  if (3 * exc_a > block_a - 1 || 3 * exc_b > block_b - 1)
    throw std::logic_error("progress_flip: slack bounds violate their strict thirds");

  const Gf2Vector s0 = syndrome(c, d.side, error);
  const int64_t w0 = static_cast<int64_t>(s0.weight());
  auto decrease_for = [&](const std::vector<uint32_t>& qubits) {
    Gf2Vector flipped = error;
    for (uint32_t q : qubits) flipped.flip(q);
    return w0 - static_cast<int64_t>(syndrome(c, d.side, flipped).weight());
  };
  auto concat = [](std::initializer_list<const std::vector<uint32_t>*> lists) {
    std::vector<uint32_t> out;
    for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    std::sort(out.begin(), out.end());
    return out;
  };

  const std::vector<uint32_t> err_flip = concat({&d.part_a[kError], &d.part_b[kError]});
  const std::vector<uint32_t> clean_flip = concat({&d.part_a[kClean], &d.part_b[kClean]});
  const std::vector<uint32_t> comp_flip =
      concat({&d.part_a[kError], &d.part_b[kError], &d.part_a[kExcluded], &d.part_b[kExcluded]});

  const int64_t dec_err = decrease_for(err_flip);
  const int64_t dec_clean = clean_flip.empty() ? decrease_for(comp_flip)
                                               : decrease_for(clean_flip);
  // Flipping a set or its complement within the generator changes the
  // syndrome identically (the full generator's syndrome is zero).
  if (!clean_flip.empty() && decrease_for(comp_flip) != dec_clean)
    throw std::logic_error("progress_flip: complement flip decrease mismatch");

  // Exact lower bounds on the two decreases from the partition accounting.
  const int64_t lower_err = err_a * clean_b + clean_a * err_b - err_a * exc_b - err_b * exc_a;
  const int64_t lower_clean =
      err_a * clean_b + clean_a * err_b - clean_a * exc_b - clean_b * exc_a;
  if (dec_err < lower_err || dec_clean < lower_clean)
    throw std::logic_error("progress_flip: exact decrease below its accounting lower bound");

  int case_index;
  const std::vector<uint32_t>* chosen;
  int64_t chosen_decrease;
  if (3 * (err_a * block_b + err_b * block_a) <= 2 * block_a * block_b) {
    case_index = 1;  // small error fractions: flip the kept error parts
    chosen = &err_flip;
    chosen_decrease = dec_err;
  } else if (err_a <= clean_a && err_b <= clean_b) {
    case_index = 2;
    chosen = &err_flip;
    chosen_decrease = dec_err;
  } else if (err_a > clean_a && err_b > clean_b) {
    case_index = 3;  // flip the clean parts instead
    if (clean_flip.empty())
      throw std::logic_error("progress_flip: clean parts empty despite the half-weight bound");
    chosen = &clean_flip;
    chosen_decrease = dec_clean;
  } else {
    case_index = 4;  // mixed: take whichever decrease is larger
    if (dec_err >= dec_clean) {
      chosen = &err_flip;
      chosen_decrease = dec_err;
    } else if (2 * (clean_a + clean_b) <= block_a + block_b) {
      chosen = &clean_flip;
      chosen_decrease = dec_clean;
    } else {
      chosen = &comp_flip;
      chosen_decrease = dec_clean;
    }
  }

  if (chosen->empty() || chosen_decrease < 1 ||
      3 * chosen_decrease < static_cast<int64_t>(chosen->size()))
    throw std::logic_error("progress_flip: chosen flip misses the one-third guarantee");

  if (analysis) {
    analysis->case_index = case_index;
    analysis->decrease_error = dec_err;
    analysis->decrease_alt = dec_clean;
  }

  // Express the flip as a mask over the generator's sorted support.
  const auto& support = c.generator_matrix(d.side).row(d.generator);
  uint32_t mask = 0;
  for (uint32_t q : *chosen) {
    const auto it = std::lower_bound(support.begin(), support.end(), q);
    if (it == support.end() || *it != q)
      throw std::logic_error("progress_flip: flip qubit outside the generator support");
    mask |= 1u << static_cast<uint32_t>(it - support.begin());
  }
  return FlipCandidate{d.generator, mask, static_cast<int32_t>(chosen_decrease),
                       static_cast<uint32_t>(chosen->size())};
}

CriticalDecodeResult decode_by_critical_flips(const CssCode& c, const Gf2Vector& error,
                                              double gamma_a, double delta_a, double gamma_b,
                                              double delta_b, PauliSide side,
                                              uint32_t max_iterations) {
  CriticalDecodeResult out;
  Gf2Vector current = error;
  out.initial_syndrome_weight = static_cast<uint32_t>(syndrome(c, side, current).weight());
  uint32_t weight = out.initial_syndrome_weight;
  while (weight > 0 && out.iterations < max_iterations) {
    auto d = find_critical_generator(c, current, gamma_a, delta_a, gamma_b, delta_b, side);
    if (!d) break;
    const FlipCandidate flip = progress_flip(c, current, *d);
    const auto qubits = flip_qubits(c, side, flip);
    for (uint32_t q : qubits) current.flip(q);
    out.sum_flip_sizes += flip.size;
    ++out.iterations;
    weight = static_cast<uint32_t>(syndrome(c, side, current).weight());
  }
  out.success = (weight == 0);
  out.correction = error ^ current;
  return out;
}

// --- classical baseline -------------------------------------------------------

std::optional<Gf2Vector> classical_flip_decode(const BipartiteGraph& g, const Gf2Vector& s) {
  if (s.size() != g.n_b) throw std::invalid_argument("classical_flip_decode: syndrome length");
  Gf2Vector residual = s;
  Gf2Vector correction(g.n_a);
  size_t weight = residual.weight();
  bool improved = true;
  while (weight > 0 && improved) {
    improved = false;
    for (uint32_t a = 0; a < g.n_a && !improved; ++a) {
      int32_t gain = 0;
      for (uint32_t b : g.adj_a[a]) gain += residual.get(b) ? 1 : -1;
      if (gain >= 1) {
        for (uint32_t b : g.adj_a[a]) residual.flip(b);
        correction.flip(a);
        weight -= static_cast<size_t>(gain);
        improved = true;
      }
    }
  }
  if (weight > 0) return std::nullopt;
  return correction;
}

// Degenerate triples built from a duplicate pair plus a zero column are not
// re-listed (their halves already appear), so emptiness of the result is
// still exact: some vector of weight <= cap exists iff the list is nonempty.
std::vector<Gf2Vector> kernel_vectors_up_to_weight(const Gf2SparseMatrix& m, uint32_t cap) {
  if (cap > 3) throw InfeasibleError("kernel_vectors_up_to_weight: cap above 3");
  std::vector<Gf2Vector> out;
  if (cap >= 1) {
    for (uint32_t j = 0; j < m.cols(); ++j) {
      if (m.col(j).empty()) out.push_back(Gf2Vector::from_indices(m.cols(), {j}));
    }
  }
  if (cap >= 2) {
    std::map<std::vector<uint32_t>, std::vector<uint32_t>> by_column;
    for (uint32_t j = 0; j < m.cols(); ++j) by_column[m.col(j)].push_back(j);
    for (const auto& [support, cols] : by_column) {
      if (support.empty()) continue;
      for (size_t i = 0; i < cols.size(); ++i)
        for (size_t k = i + 1; k < cols.size(); ++k)
          out.push_back(Gf2Vector::from_indices(m.cols(), {cols[i], cols[k]}));
    }
    if (cap >= 3) {
      const auto& map = by_column;
      std::vector<uint32_t> merged;
      for (uint32_t j = 0; j < m.cols(); ++j) {
        for (uint32_t k = j + 1; k < m.cols(); ++k) {
          merged.clear();
          std::set_symmetric_difference(m.col(j).begin(), m.col(j).end(), m.col(k).begin(),
                                        m.col(k).end(), std::back_inserter(merged));
          if (merged.empty()) continue;  // already counted as a pair
          const auto it = map.find(merged);
          if (it == map.end()) continue;
          for (uint32_t l : it->second) {
            if (l > k) out.push_back(Gf2Vector::from_indices(m.cols(), {j, k, l}));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
}  // namespace ssflip
