#pragma once

// Named graphs used across the test and acceptance suites. The incidence
// constructions (projective/affine planes, Pappus configuration) give
// C4-free biregular graphs whose exhaustive expansion certificates reach
// subset size 2 — the strongest certificates available at desk scale.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "ssflip/graph.hpp"

namespace fixtures {

using ssflip::BipartiteGraph;

// The unique simple 2/2-biregular graph on 2+2 vertices.
inline BipartiteGraph four_cycle() {
  return BipartiteGraph::from_adjacency(2, 2, 2, 2, {{0, 1}, {0, 1}});
}

// Complete bipartite K_{3,2}.
inline BipartiteGraph k32() {
  return BipartiteGraph::from_adjacency(3, 2, 2, 3, {{0, 1}, {0, 1}, {0, 1}});
}

// 6-cycle as a 2/2-biregular graph on 3+3.
inline BipartiteGraph six_cycle() {
  return BipartiteGraph::from_adjacency(3, 3, 2, 2, {{0, 1}, {1, 2}, {0, 2}});
}

// Perfect matching on 2+2 (k = 0 code; both classical distances infinite).
inline BipartiteGraph matching_2_2() {
  return BipartiteGraph::from_adjacency(2, 2, 1, 1, {{0}, {1}});
}

// Two disjoint stars: 4 degree-1 left vertices onto 2 right vertices.
// The transpose distance is infinite, the classical distance is 2.
inline BipartiteGraph double_star() {
  return BipartiteGraph::from_adjacency(4, 2, 1, 2, {{0}, {0}, {1}, {1}});
}

// Single check over two bits.
inline BipartiteGraph two_bits_one_check() {
  return BipartiteGraph::from_adjacency(2, 1, 1, 2, {{0}, {0}});
}

// Three bits, one check containing all of them.
inline BipartiteGraph star_3_1() {
  return BipartiteGraph::from_adjacency(3, 1, 1, 3, {{0}, {0}, {0}});
}

// Point-line incidence of the projective plane over F_p (p prime):
// (p^2+p+1) + (p^2+p+1) vertices, (p+1)-regular, girth 6. p = 2 gives the
// Heawood graph; p = 3 the 13+13 4-regular incidence graph.
inline BipartiteGraph projective_plane(uint32_t p) {
  // Normalized homogeneous coordinates: first nonzero entry equals 1.
  std::vector<std::array<uint32_t, 3>> points;
  points.push_back({0, 0, 1});
  for (uint32_t z = 0; z < p; ++z) points.push_back({0, 1, z});
  for (uint32_t y = 0; y < p; ++y)
    for (uint32_t z = 0; z < p; ++z) points.push_back({1, y, z});

  const uint32_t n = static_cast<uint32_t>(points.size());  // p^2 + p + 1
  std::vector<std::vector<uint32_t>> adj(n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t dot = 0;
      for (int c = 0; c < 3; ++c) dot += points[i][c] * points[j][c];
      if (dot % p == 0) adj[i].push_back(j);  // point i on line j
    }
  }
  return BipartiteGraph::from_adjacency(n, n, p + 1, p + 1, std::move(adj));
}

inline BipartiteGraph heawood() { return projective_plane(2); }

// Pappus configuration (9 points, 9 lines, 3-regular, girth 6).
inline BipartiteGraph pappus() {
  const std::vector<std::array<uint32_t, 3>> lines = {
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
      {0, 4, 8}, {1, 5, 6}, {2, 3, 7},  // diagonals
  };
  std::vector<std::vector<uint32_t>> adj(9);  // point -> lines through it
  for (uint32_t l = 0; l < lines.size(); ++l)
    for (uint32_t pt : lines[l]) adj[pt].push_back(l);
  return BipartiteGraph::from_adjacency(9, 9, 3, 3, std::move(adj));
}

// Point-line incidence of the affine plane over GF(4): 20 lines of degree 4
// against 16 points of degree 5, C4-free. A-side = lines (so that
// n_B <= n_A and delta_A <= delta_B).
inline BipartiteGraph affine_plane_gf4() {
  // GF(4) as bit pairs with x^2 = x + 1.
  auto mul = [](uint32_t a, uint32_t b) {
    const uint32_t a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
    const uint32_t c0 = a0 & b0, c1 = (a1 & b0) ^ (a0 & b1), c2 = a1 & b1;
    // reduce c2 * x^2 = c2 * (x + 1)
    return ((c1 ^ c2) << 1) | (c0 ^ c2);
  };
  auto point_id = [](uint32_t x, uint32_t y) { return 4 * x + y; };

  std::vector<std::vector<uint32_t>> lines;  // line -> sorted point ids
  for (uint32_t m = 0; m < 4; ++m) {
    for (uint32_t c = 0; c < 4; ++c) {
      std::vector<uint32_t> pts;
      for (uint32_t x = 0; x < 4; ++x) pts.push_back(point_id(x, mul(m, x) ^ c));
      std::sort(pts.begin(), pts.end());
      lines.push_back(std::move(pts));
    }
  }
  for (uint32_t c = 0; c < 4; ++c) {  // vertical lines x = c
    std::vector<uint32_t> pts;
    for (uint32_t y = 0; y < 4; ++y) pts.push_back(point_id(c, y));
    std::sort(pts.begin(), pts.end());
    lines.push_back(std::move(pts));
  }
  return BipartiteGraph::from_adjacency(20, 16, 4, 5, std::move(lines));
}

}  // namespace fixtures
