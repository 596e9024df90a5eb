#pragma once

// Degree-by-degree construction of the free mock-Lie algebra on r generators
// truncated by per-generator multidegree caps: the quotient of the free
// commutative magma algebra by (i) the ideal of words exceeding a cap and
// (ii) all Jacobi instances.
//
// At total degree n the candidate spanning set is every product u o v of
// lower-degree basis words with admissible multidegree.  The relations are
// the Jacobi expansions J(u,v,w) over basis triples with degree sum n; since
// the algebra is commutative and J is symmetric in its three arguments,
// unordered triples suffice.  Candidate columns are ordered LARGEST word
// first, so echelon pivots eliminate the large words and the surviving free
// columns — the small words — become the degree-n basis.  The result is
// independent of row generation order because the reduced echelon basis of
// the relation span is unique.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mocklie/algebra.hpp"
#include "mocklie/matrix.hpp"
#include "mocklie/parallel.hpp"
#include "mocklie/words.hpp"

namespace mocklie {

template <class F>
struct FreeQuotientResult {
  AlgebraTable<F> algebra;  // labels are the basis word strings
  WordPool pool;
  std::vector<std::string> generators;
  std::vector<int> caps;
  std::vector<int> basis_words;     // basis index -> word id, graded order
  std::vector<int> dims_by_degree;  // [d] = number of basis words of degree d

  int generator_index(int g) const { return g; }  // degree-1 words come first
};

template <class F>
FreeQuotientResult<F> build_free_quotient(const std::vector<std::string>& gens,
                                          const std::vector<int>& caps, int jobs = 1) {
  if (gens.empty()) throw std::invalid_argument("free quotient: no generators");
  if (gens.size() != caps.size())
    throw std::invalid_argument("free quotient: need one cap per generator");
  for (int c : caps)
    if (c < 1) throw std::invalid_argument("free quotient: caps must be >= 1");

  FreeQuotientResult<F> R{AlgebraTable<F>(), WordPool(gens), gens, caps, {}, {}};
  WordPool& pool = R.pool;
  const int r = pool.num_generators();
  int maxdeg = 0;
  for (int c : caps) maxdeg += c;

  std::vector<int>& basis = R.basis_words;       // global index -> word id
  std::vector<int> degree_of;                    // global index -> total degree
  std::vector<std::vector<int>> by_degree(maxdeg + 1);  // degree -> global indices
  // product expression for admissible basis pairs, keyed by sorted global pair
  std::unordered_map<std::uint64_t, SparseRow<F>> expr;
  auto pair_key = [](int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
  };

  // degree 1: generators in word order (their generator order)
  R.dims_by_degree.assign(maxdeg + 1, 0);
  for (int g = 0; g < r; ++g) {
    basis.push_back(pool.generator(g));
    degree_of.push_back(1);
    by_degree[1].push_back(g);
  }
  R.dims_by_degree[1] = r;

  auto md_sum_ok = [&](int w1, int w2) {
    const auto& m1 = pool.multidegree(w1);
    const auto& m2 = pool.multidegree(w2);
    for (int g = 0; g < r; ++g)
      if (m1[g] + m2[g] > caps[g]) return false;
    return true;
  };

  for (int n = 2; n <= maxdeg; ++n) {
    // ---- candidate columns: admissible products of lower-degree basis words
    struct Cand {
      int word;
      int gi, gj;  // global indices of the factors
    };
    std::vector<Cand> cands;
    for (int p = 1; 2 * p <= n; ++p) {
      int q = n - p;
      for (int gi : by_degree[p])
        for (int gj : by_degree[q]) {
          if (p == q && gj < gi) continue;
          if (!md_sum_ok(basis[gi], basis[gj])) continue;
          cands.push_back({pool.product(basis[gi], basis[gj]), gi, gj});
        }
    }
    // largest word first
    std::sort(cands.begin(), cands.end(),
              [&](const Cand& a, const Cand& b) { return pool.less(b.word, a.word); });
    std::unordered_map<int, int> col_of;  // word id -> column
    for (std::size_t c = 0; c < cands.size(); ++c) col_of.emplace(cands[c].word, static_cast<int>(c));

    // ---- relation rows: Jacobi instances over basis triples of degree sum n
    std::vector<std::array<int, 3>> triples;
    const int total = static_cast<int>(basis.size());
    for (int g1 = 0; g1 < total; ++g1) {
      if (degree_of[g1] + 2 > n) break;
      for (int g2 = g1; g2 < total; ++g2) {
        int d12 = degree_of[g1] + degree_of[g2];
        if (d12 + 1 > n) break;
        for (int g3 = g2; g3 < total; ++g3) {
          if (d12 + degree_of[g3] != n) continue;
          const auto& m1 = pool.multidegree(basis[g1]);
          const auto& m2 = pool.multidegree(basis[g2]);
          const auto& m3 = pool.multidegree(basis[g3]);
          bool ok = true;
          for (int g = 0; g < r; ++g)
            if (m1[g] + m2[g] + m3[g] > caps[g]) {
              ok = false;
              break;
            }
          if (ok) triples.push_back({g1, g2, g3});
        }
      }
    }

    std::vector<SparseRow<F>> rows(triples.size());
    auto expand = [&](std::int64_t t, int) {
      const auto [u, v, w] = triples[t];
      std::unordered_map<int, F> acc;  // column -> coefficient
      auto add_term = [&](int a, int b, int c) {
        // (e_a o e_b) o e_c
        if (!md_sum_ok(basis[a], basis[b])) return;
        auto it = expr.find(pair_key(a, b));
        if (it == expr.end()) return;  // zero product
        for (const auto& [g, coef] : it->second) {
          if (!md_sum_ok(basis[g], basis[c])) continue;
          int col = col_of.at(pool.product(basis[g], basis[c]));
          acc[col] += coef;
        }
      };
      add_term(u, v, w);
      add_term(w, u, v);
      add_term(v, w, u);
      SparseRow<F> row;
      row.reserve(acc.size());
      for (const auto& [c, coef] : acc)
        if (!coef.is_zero()) row.emplace_back(c, coef);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows[t] = std::move(row);
    };
    par::for_each(static_cast<std::int64_t>(triples.size()), jobs, expand);

    RowReducer<F> red;
    for (auto& row : rows) red.add_row(std::move(row));
    red.finish();

    // ---- free columns become the degree-n basis, smallest word first
    std::vector<bool> pivotal(cands.size(), false);
    for (int c : red.pivot_cols()) pivotal[c] = true;
    std::vector<int> free_cols;
    for (int c = static_cast<int>(cands.size()) - 1; c >= 0; --c)
      if (!pivotal[c]) free_cols.push_back(c);  // reverse column order = ascending word order
    std::vector<int> col_to_global(cands.size(), -1);
    for (int c : free_cols) {
      int gid = static_cast<int>(basis.size());
      basis.push_back(cands[c].word);
      degree_of.push_back(n);
      by_degree[n].push_back(gid);
      col_to_global[c] = gid;
    }
    R.dims_by_degree[n] = static_cast<int>(free_cols.size());

    // ---- record product expressions for every candidate pair
    const auto& pivot_rows = red.rows();
    for (std::size_t c = 0; c < cands.size(); ++c) {
      SparseRow<F> e;
      if (!pivotal[c]) {
        e.emplace_back(col_to_global[c], F(1));
      } else {
        const SparseRow<F>& row = pivot_rows.at(static_cast<int>(c));
        for (std::size_t t = 1; t < row.size(); ++t)
          e.emplace_back(col_to_global[row[t].first], -row[t].second);
        std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      expr.emplace(pair_key(cands[c].gi, cands[c].gj), std::move(e));
    }
  }

  // ---- assemble the structure-constant table
  const int dim = static_cast<int>(basis.size());
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (int w : basis) labels.push_back(pool.str(w));
  AlgebraTable<F> A(dim, labels);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      auto it = expr.find(pair_key(i, j));
      if (it != expr.end() && !it->second.empty()) A.set_product(i, j, it->second);
    }
  R.algebra = std::move(A);
  return R;
}

}  // namespace mocklie
