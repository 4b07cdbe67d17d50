#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssflip/gf2.hpp"

namespace ssflip {

enum class GraphSide { Left, Right };  // Left = A, Right = B

// Biregular bipartite graph G = (A u B, E). Vertex ids are dense
// integers 0..n_side-1 per side. Adjacency lists are sorted and the two
// directions agree; `validate()` enforces this plus biregularity.
struct BipartiteGraph {
  uint32_t n_a = 0;
  uint32_t n_b = 0;
  uint32_t delta_a = 0;  // degree of every A vertex
  uint32_t delta_b = 0;  // degree of every B vertex
  std::vector<std::vector<uint32_t>> adj_a;  // A vertex -> sorted B neighbors
  std::vector<std::vector<uint32_t>> adj_b;  // B vertex -> sorted A neighbors

  static BipartiteGraph from_adjacency(uint32_t n_a, uint32_t n_b, uint32_t delta_a,
                                       uint32_t delta_b,
                                       std::vector<std::vector<uint32_t>> adj_a);

  void validate() const;  // throws std::invalid_argument with a witness

  uint32_t side_size(GraphSide s) const { return s == GraphSide::Left ? n_a : n_b; }
  uint32_t side_degree(GraphSide s) const { return s == GraphSide::Left ? delta_a : delta_b; }
  const std::vector<std::vector<uint32_t>>& adjacency(GraphSide s) const {
    return s == GraphSide::Left ? adj_a : adj_b;
  }

  // n_b x n_a incidence matrix H (rows = B, columns = A).
  Gf2SparseMatrix incidence() const;
};

struct ExpansionReport {
  GraphSide side = GraphSide::Left;
  double gamma = 0;
  double delta = 0;
  enum class Mode { Exhaustive, Sampled } mode = Mode::Exhaustive;
  uint32_t max_subset_size = 0;
  bool verified = false;
  std::optional<std::vector<uint32_t>> witness;  // violating subset, if any
  uint64_t subsets_checked = 0;
};

// Configuration-model sample: uniform random matching of edge stubs with
// whole-graph resampling until simple, capped at `max_attempts`.
// Deterministic for a given seed.
BipartiteGraph generate_biregular(uint32_t n_a, uint32_t n_b, uint32_t delta_a,
                                  uint32_t delta_b, uint64_t seed,
                                  uint32_t max_attempts = 1000);

const std::vector<uint32_t>& neighbors(const BipartiteGraph& g, GraphSide side, uint32_t v);

// Neighbors of S split by induced degree: `unique` have exactly one
// neighbor in S, `multiple` have at least two. Both sorted.
struct NeighborSplit {
  std::vector<uint32_t> unique;
  std::vector<uint32_t> multiple;
};
NeighborSplit unique_and_multiple_neighbors(const BipartiteGraph& g,
                                            const std::vector<uint32_t>& subset,
                                            GraphSide side);

// Checks |Gamma(S)| >= (1-delta) * Delta * |S| for all subsets S of the
// given side with |S| <= min(gamma * n_side, max_subset_size).
// Exhaustive mode enumerates subsets in increasing size (lexicographic
// within a size), so a reported witness has minimum size. Sampled mode
// draws `samples` random subsets per size; verified=true then only means
// no counterexample was found.
ExpansionReport check_expansion(const BipartiteGraph& g, GraphSide side, double gamma,
                                double delta, uint32_t max_subset_size,
                                ExpansionReport::Mode mode, uint32_t samples, uint64_t seed,
                                uint64_t enumeration_ceiling = 100000000ull);

// Worst expansion ratio min |Gamma(S)| / (Delta |S|) over all subsets with
// |S| <= size_cap, as an exact fraction, with a minimizing subset.
struct ExpansionScan {
  uint64_t min_num = 1;   // |Gamma(S)| at the minimum
  uint64_t min_den = 1;   // Delta * |S| at the minimum
  std::vector<uint32_t> argmin;
  uint64_t subsets_checked = 0;
};
ExpansionScan scan_expansion(const BipartiteGraph& g, GraphSide side, uint32_t size_cap,
                             uint64_t enumeration_ceiling = 100000000ull);

// Largest s <= size_cap such that every subset of size <= s expands at the
// given delta; 0 if even singletons fail (cannot happen on a simple graph).
uint32_t max_certified_subset_size(const BipartiteGraph& g, GraphSide side, double delta,
                                   uint32_t size_cap,
                                   uint64_t enumeration_ceiling = 100000000ull);

// Text format: line 1 "n_A n_B delta_A delta_B", then n_A lines with the
// sorted B-neighbors of each A vertex. LF newlines. Writing then reading
// is byte-identical for sorted adjacency.
void write_graph(std::ostream& out, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& in);
void write_graph_file(const std::string& path, const BipartiteGraph& g);
BipartiteGraph read_graph_file(const std::string& path);

}  // namespace ssflip
