#include "ssflip/code.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssflip {

QubitIndex CssCode::qubit(uint32_t flat) const {
  const uint32_t aa_count = n_a() * n_a();
  if (flat < aa_count) return {QubitIndex::AA, flat / n_a(), flat % n_a(), flat};
  const uint32_t rest = flat - aa_count;
  if (rest >= n_b() * n_b()) throw std::out_of_range("CssCode::qubit: flat index out of range");
  return {QubitIndex::BB, rest / n_b(), rest % n_b(), flat};
}

CssCode build_hypergraph_product(const BipartiteGraph& g) {
  g.validate();
  if (g.delta_a + g.delta_b > 20)
    throw std::invalid_argument(
        "build_hypergraph_product: delta_A + delta_B > 20; flip search enumerates "
        "2^(delta_A+delta_B) subsets per generator");

  CssCode c;
  c.graph = g;
  c.n = g.n_a * g.n_a + g.n_b * g.n_b;
  const uint32_t aa = g.n_a * g.n_a;

  // h_x rows: X check (alpha, beta) touches {(alpha,a): a ~ beta} and
  // {(b,beta): b ~ alpha}.
  std::vector<std::vector<uint32_t>> x_rows(g.n_a * g.n_b);
  for (uint32_t alpha = 0; alpha < g.n_a; ++alpha) {
    for (uint32_t beta = 0; beta < g.n_b; ++beta) {
      auto& row = x_rows[alpha * g.n_b + beta];
      row.reserve(g.delta_a + g.delta_b);
      for (uint32_t a : g.adj_b[beta]) row.push_back(alpha * g.n_a + a);
      for (uint32_t b : g.adj_a[alpha]) row.push_back(aa + b * g.n_b + beta);
      std::sort(row.begin(), row.end());
    }
  }

  // h_z rows: Z generator (b, a) touches {(alpha,a): alpha ~ b} and
  // {(b,beta): beta ~ a}.
  std::vector<std::vector<uint32_t>> z_rows(g.n_b * g.n_a);
  for (uint32_t b = 0; b < g.n_b; ++b) {
    for (uint32_t a = 0; a < g.n_a; ++a) {
      auto& row = z_rows[b * g.n_a + a];
      row.reserve(g.delta_a + g.delta_b);
      for (uint32_t alpha : g.adj_b[b]) row.push_back(alpha * g.n_a + a);
      for (uint32_t beta : g.adj_a[a]) row.push_back(aa + b * g.n_b + beta);
      std::sort(row.begin(), row.end());
    }
  }

  c.h_x = Gf2SparseMatrix::from_row_supports(g.n_a * g.n_b, c.n, std::move(x_rows));
  c.h_z = Gf2SparseMatrix::from_row_supports(g.n_b * g.n_a, c.n, std::move(z_rows));

  for (uint32_t i = 0; i < c.h_x.rows(); ++i) {
    if (c.h_x.row(i).size() != c.row_weight())
      throw std::logic_error("build_hypergraph_product: X row weight mismatch");
  }
  for (uint32_t i = 0; i < c.h_z.rows(); ++i) {
    if (c.h_z.row(i).size() != c.row_weight())
      throw std::logic_error("build_hypergraph_product: Z row weight mismatch");
  }
  return c;
}

std::vector<QubitIndex> z_generator_support(const CssCode& c, uint32_t b, uint32_t a) {
  if (b >= c.n_b() || a >= c.n_a())
    throw std::invalid_argument("z_generator_support: index out of range");
  std::vector<QubitIndex> out;
  out.reserve(c.row_weight());
  for (uint32_t flat : c.h_z.row(c.z_generator_index(b, a))) out.push_back(c.qubit(flat));
  return out;
}

std::vector<QubitIndex> x_check_support(const CssCode& c, uint32_t alpha, uint32_t beta) {
  if (alpha >= c.n_a() || beta >= c.n_b())
    throw std::invalid_argument("x_check_support: index out of range");
  std::vector<QubitIndex> out;
  out.reserve(c.row_weight());
  for (uint32_t flat : c.h_x.row(c.x_check_index(alpha, beta))) out.push_back(c.qubit(flat));
  return out;
}

Gf2Vector syndrome_x(const CssCode& c, const Gf2Vector& e_x) { return mat_vec(c.h_x, e_x); }
Gf2Vector syndrome_z(const CssCode& c, const Gf2Vector& e_z) { return mat_vec(c.h_z, e_z); }

uint32_t code_dimension(const CssCode& c) {
  const uint32_t k = c.n - rank(c.h_x) - rank(c.h_z);
  const int64_t diff = static_cast<int64_t>(c.n_a()) - static_cast<int64_t>(c.n_b());
  if (static_cast<int64_t>(k) < diff * diff)
    throw std::logic_error("code_dimension: k below the structural bound (n_A - n_B)^2");
  return k;
}

}  // namespace ssflip
