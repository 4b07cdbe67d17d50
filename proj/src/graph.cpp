#include "ssflip/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ssflip/errors.hpp"
#include "ssflip/rng.hpp"

namespace ssflip {

namespace {

// floor(gamma * n) with a guard against values like 1/3 * 3 rounding to
// 0.999... in binary.
uint32_t gamma_cap(double gamma, uint32_t n) {
  return static_cast<uint32_t>(std::floor(gamma * n + 1e-9));
}

// Number of distinct neighbors of `subset`, using a stamp buffer.
uint32_t neighborhood_size(const std::vector<std::vector<uint32_t>>& adj,
                           const std::vector<uint32_t>& subset, std::vector<uint32_t>& stamp,
                           uint32_t epoch) {
  uint32_t count = 0;
  for (uint32_t v : subset) {
    for (uint32_t u : adj[v]) {
      if (stamp[u] != epoch) {
        stamp[u] = epoch;
        ++count;
      }
    }
  }
  return count;
}

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

// Saturating sum of C(n, 1..cap), for feasibility gates.
uint64_t subset_count(uint32_t n, uint32_t cap, uint64_t limit) {
  uint64_t total = 0;
  uint64_t binom = 1;
  for (uint32_t s = 1; s <= cap && s <= n; ++s) {
    binom = binom * (n - s + 1) / s;
    if (binom > limit) return limit + 1;
    total += binom;
    if (total > limit) return limit + 1;
  }
  return total;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_adjacency(uint32_t n_a, uint32_t n_b, uint32_t delta_a,
                                              uint32_t delta_b,
                                              std::vector<std::vector<uint32_t>> adj_a) {
  BipartiteGraph g;
  g.n_a = n_a;
  g.n_b = n_b;
  g.delta_a = delta_a;
  g.delta_b = delta_b;
  g.adj_a = std::move(adj_a);
  g.adj_b.assign(n_b, {});
  for (uint32_t a = 0; a < g.adj_a.size() && a < n_a; ++a) {
    for (uint32_t b : g.adj_a[a]) {
      if (b < n_b) g.adj_b[b].push_back(a);
    }
  }
  g.validate();
  return g;
}

void BipartiteGraph::validate() const {
  if (static_cast<uint64_t>(n_a) * delta_a != static_cast<uint64_t>(n_b) * delta_b)
    throw std::invalid_argument("BipartiteGraph: n_A*delta_A != n_B*delta_B");
  if (adj_a.size() != n_a || adj_b.size() != n_b)
    throw std::invalid_argument("BipartiteGraph: adjacency size mismatch");
  for (uint32_t a = 0; a < n_a; ++a) {
    const auto& nb = adj_a[a];
    if (nb.size() != delta_a)
      throw std::invalid_argument("BipartiteGraph: A vertex " + std::to_string(a) +
                                  " has degree " + std::to_string(nb.size()));
    for (size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] >= n_b)
        throw std::invalid_argument("BipartiteGraph: neighbor out of range at A vertex " +
                                    std::to_string(a));
      if (k > 0 && nb[k - 1] >= nb[k])
        throw std::invalid_argument("BipartiteGraph: unsorted or repeated neighbor at A vertex " +
                                    std::to_string(a));
    }
  }
  for (uint32_t b = 0; b < n_b; ++b) {
    const auto& nb = adj_b[b];
    if (nb.size() != delta_b)
      throw std::invalid_argument("BipartiteGraph: B vertex " + std::to_string(b) +
                                  " has degree " + std::to_string(nb.size()));
    for (size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] >= n_a)
        throw std::invalid_argument("BipartiteGraph: neighbor out of range at B vertex " +
                                    std::to_string(b));
      if (k > 0 && nb[k - 1] >= nb[k])
        throw std::invalid_argument("BipartiteGraph: unsorted or repeated neighbor at B vertex " +
                                    std::to_string(b));
    }
  }
  // The two directions must describe the same edge set.
  uint64_t edges_a = 0;
  for (uint32_t a = 0; a < n_a; ++a) {
    for (uint32_t b : adj_a[a]) {
      if (!std::binary_search(adj_b[b].begin(), adj_b[b].end(), a))
        throw std::invalid_argument("BipartiteGraph: edge (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") missing from B-side adjacency");
      ++edges_a;
    }
  }
  if (edges_a != static_cast<uint64_t>(n_a) * delta_a)
    throw std::invalid_argument("BipartiteGraph: edge count mismatch");
}

Gf2SparseMatrix BipartiteGraph::incidence() const {
  return Gf2SparseMatrix::from_row_supports(n_b, n_a, adj_b);
}

BipartiteGraph generate_biregular(uint32_t n_a, uint32_t n_b, uint32_t delta_a,
                                  uint32_t delta_b, uint64_t seed, uint32_t max_attempts) {
  if (n_a == 0 || n_b == 0 || delta_a == 0 || delta_b == 0)
    throw std::invalid_argument("generate_biregular: empty side or zero degree");
  if (static_cast<uint64_t>(n_a) * delta_a != static_cast<uint64_t>(n_b) * delta_b)
    throw std::invalid_argument("generate_biregular: degree equation n_A*delta_A == n_B*delta_B violated");
  if (delta_a > delta_b || n_b > n_a)
    throw std::invalid_argument("generate_biregular: requires delta_A <= delta_B and n_B <= n_A");
  if (delta_a > n_b || delta_b > n_a)
    throw std::invalid_argument("generate_biregular: degree exceeds opposite side size");

  const uint64_t edges = static_cast<uint64_t>(n_a) * delta_a;
  Rng rng(splitmix64(seed));
  std::vector<uint32_t> right_stubs(edges);
  for (uint64_t k = 0; k < edges; ++k)
    right_stubs[k] = static_cast<uint32_t>(k / delta_b);

  for (uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    rng.shuffle(right_stubs);
    std::vector<std::vector<uint32_t>> adj(n_a);
    bool simple = true;
    uint64_t k = 0;
    for (uint32_t a = 0; a < n_a && simple; ++a) {
      auto& nb = adj[a];
      nb.reserve(delta_a);
      for (uint32_t d = 0; d < delta_a; ++d) nb.push_back(right_stubs[k++]);
      std::sort(nb.begin(), nb.end());
      for (size_t i = 1; i < nb.size(); ++i) {
        if (nb[i] == nb[i - 1]) {
          simple = false;
          break;
        }
      }
    }
    if (!simple) continue;
    return BipartiteGraph::from_adjacency(n_a, n_b, delta_a, delta_b, std::move(adj));
  }
  throw GenerationError("generate_biregular: no simple graph after " +
                        std::to_string(max_attempts) + " attempts (n_A=" + std::to_string(n_a) +
                        ", n_B=" + std::to_string(n_b) + ", delta_A=" + std::to_string(delta_a) +
                        ", delta_B=" + std::to_string(delta_b) + ")");
}

const std::vector<uint32_t>& neighbors(const BipartiteGraph& g, GraphSide side, uint32_t v) {
  if (v >= g.side_size(side)) throw std::invalid_argument("neighbors: vertex id out of range");
  return g.adjacency(side)[v];
}

NeighborSplit unique_and_multiple_neighbors(const BipartiteGraph& g,
                                            const std::vector<uint32_t>& subset,
                                            GraphSide side) {
  const uint32_t n_opposite = g.side_size(side == GraphSide::Left ? GraphSide::Right
                                                                  : GraphSide::Left);
  std::vector<uint32_t> degree_in_subset(n_opposite, 0);
  for (uint32_t v : subset) {
    if (v >= g.side_size(side))
      throw std::invalid_argument("unique_and_multiple_neighbors: vertex not on stated side");
    for (uint32_t u : g.adjacency(side)[v]) degree_in_subset[u]++;
  }
  NeighborSplit out;
  for (uint32_t u = 0; u < n_opposite; ++u) {
    if (degree_in_subset[u] == 1)
      out.unique.push_back(u);
    else if (degree_in_subset[u] >= 2)
      out.multiple.push_back(u);
  }
  return out;
}

ExpansionReport check_expansion(const BipartiteGraph& g, GraphSide side, double gamma,
                                double delta, uint32_t max_subset_size,
                                ExpansionReport::Mode mode, uint32_t samples, uint64_t seed,
                                uint64_t enumeration_ceiling) {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("check_expansion: gamma not in (0,1]");
  if (!(delta >= 0 && delta < 1)) throw std::invalid_argument("check_expansion: delta not in [0,1)");

  const uint32_t n = g.side_size(side);
  const uint32_t degree = g.side_degree(side);
  const auto& adj = g.adjacency(side);
  const uint32_t cap = std::min(max_subset_size, std::min(n, gamma_cap(gamma, n)));

  ExpansionReport report;
  report.side = side;
  report.gamma = gamma;
  report.delta = delta;
  report.mode = mode;
  report.max_subset_size = cap;
  report.verified = true;

  std::vector<uint32_t> stamp(g.side_size(side == GraphSide::Left ? GraphSide::Right
                                                                  : GraphSide::Left),
                              0);
  uint32_t epoch = 0;

  auto expands = [&](const std::vector<uint32_t>& subset) {
    const uint32_t gamma_size = neighborhood_size(adj, subset, stamp, ++epoch);
    return static_cast<double>(gamma_size) >=
           (1.0 - delta) * static_cast<double>(degree) * static_cast<double>(subset.size());
  };

  if (mode == ExpansionReport::Mode::Exhaustive) {
    if (subset_count(n, cap, enumeration_ceiling) > enumeration_ceiling)
      throw InfeasibleError("check_expansion: exhaustive enumeration over ceiling of " +
                            std::to_string(enumeration_ceiling) + " subsets");
    for (uint32_t s = 1; s <= cap; ++s) {
      std::vector<uint32_t> subset(s);
      for (uint32_t i = 0; i < s; ++i) subset[i] = i;
      do {
        ++report.subsets_checked;
        if (!expands(subset)) {
          report.verified = false;
          report.witness = subset;
          return report;
        }
      } while (next_combination(subset, n));
    }
  } else {
    Rng rng(splitmix64(seed));
    for (uint32_t s = 1; s <= cap; ++s) {
      for (uint32_t t = 0; t < samples; ++t) {
        std::vector<uint32_t> subset = rng.sample_sorted(n, s);
        ++report.subsets_checked;
        if (!expands(subset)) {
          report.verified = false;
          report.witness = subset;
          return report;
        }
      }
    }
  }
  return report;
}

ExpansionScan scan_expansion(const BipartiteGraph& g, GraphSide side, uint32_t size_cap,
                             uint64_t enumeration_ceiling) {
  const uint32_t n = g.side_size(side);
  const uint32_t degree = g.side_degree(side);
  const auto& adj = g.adjacency(side);
  const uint32_t cap = std::min(size_cap, n);
  if (subset_count(n, cap, enumeration_ceiling) > enumeration_ceiling)
    throw InfeasibleError("scan_expansion: enumeration over ceiling");

  ExpansionScan scan;
  std::vector<uint32_t> stamp(g.side_size(side == GraphSide::Left ? GraphSide::Right
                                                                  : GraphSide::Left),
                              0);
  uint32_t epoch = 0;
  bool first = true;
  for (uint32_t s = 1; s <= cap; ++s) {
    std::vector<uint32_t> subset(s);
    for (uint32_t i = 0; i < s; ++i) subset[i] = i;
    do {
      ++scan.subsets_checked;
      const uint64_t num = neighborhood_size(adj, subset, stamp, ++epoch);
      const uint64_t den = static_cast<uint64_t>(degree) * s;
      // num/den < min_num/min_den, by cross-multiplication
      if (first || num * scan.min_den < scan.min_num * den) {
        first = false;
        scan.min_num = num;
        scan.min_den = den;
        scan.argmin = subset;
      }
    } while (next_combination(subset, n));
  }
  return scan;
}

uint32_t max_certified_subset_size(const BipartiteGraph& g, GraphSide side, double delta,
                                   uint32_t size_cap, uint64_t enumeration_ceiling) {
  const uint32_t n = g.side_size(side);
  const uint32_t cap = std::min(size_cap, n);
  for (uint32_t s = 1; s <= cap; ++s) {
    ExpansionReport r = check_expansion(g, side, 1.0, delta, s, ExpansionReport::Mode::Exhaustive,
                                        0, 0, enumeration_ceiling);
    if (!r.verified) return s - 1;
  }
  return cap;
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << g.n_a << ' ' << g.n_b << ' ' << g.delta_a << ' ' << g.delta_b << '\n';
  for (uint32_t a = 0; a < g.n_a; ++a) {
    const auto& nb = g.adj_a[a];
    for (size_t k = 0; k < nb.size(); ++k) {
      if (k) out << ' ';
      out << nb[k];
    }
    out << '\n';
  }
}

BipartiteGraph read_graph(std::istream& in) {
  uint32_t n_a, n_b, delta_a, delta_b;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("graph file: missing header line");
  {
    std::istringstream header(line);
    if (!(header >> n_a >> n_b >> delta_a >> delta_b))
      throw std::invalid_argument("graph file: bad header line");
    std::string extra;
    if (header >> extra) throw std::invalid_argument("graph file: trailing data in header");
  }
  std::vector<std::vector<uint32_t>> adj(n_a);
  for (uint32_t a = 0; a < n_a; ++a) {
    if (!std::getline(in, line))
      throw std::invalid_argument("graph file: missing adjacency line for A vertex " +
                                  std::to_string(a));
    std::istringstream row(line);
    uint32_t b;
    while (row >> b) adj[a].push_back(b);
    if (!row.eof())
      throw std::invalid_argument("graph file: bad token on adjacency line for A vertex " +
                                  std::to_string(a));
  }
  while (std::getline(in, line)) {
    if (!line.empty())
      throw std::invalid_argument("graph file: trailing content after the adjacency lines");
  }
  return BipartiteGraph::from_adjacency(n_a, n_b, delta_a, delta_b, std::move(adj));
}

void write_graph_file(const std::string& path, const BipartiteGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_graph(out, g);
}

BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_graph(in);
}

}  // namespace ssflip
