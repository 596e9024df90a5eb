#pragma once

// Finite-dimensional commutative (in general nonassociative) algebras given
// by structure constants, plus the predicates and subspace machinery used
// throughout: commutativity / Jacobi / Jordan / 3-Engel / cube-nilpotency
// sweeps, centers, lower central series, ideals, quotients, direct sums.
//
// Degree>1 identities are checked through their full linearizations, which
// are multilinear and symmetric in each group of linearization slots, so
// sweeping sorted basis tuples decides them whenever the characteristic
// exceeds the identity degree (char 0 or p >= 5 for everything here).

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mocklie/matrix.hpp"
#include "mocklie/parallel.hpp"

namespace mocklie {

template <class F>
class AlgebraTable {
 public:
  AlgebraTable() : dim_(0) {}
  explicit AlgebraTable(int dim, std::vector<std::string> labels = {})
      : dim_(dim), labels_(std::move(labels)), prod_(static_cast<std::size_t>(dim) * dim) {
    if (labels_.empty())
      for (int i = 1; i <= dim; ++i) labels_.push_back("e" + std::to_string(i));
    if (static_cast<int>(labels_.size()) != dim) throw std::invalid_argument("label count != dim");
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) {
    if (static_cast<int>(l.size()) != dim_) throw std::invalid_argument("label count != dim");
    labels_ = std::move(l);
  }

  const SparseRow<F>& product(int i, int j) const {
    return prod_[static_cast<std::size_t>(i) * dim_ + j];
  }
  // store e_i o e_j (and by default e_j o e_i as well)
  void set_product(int i, int j, SparseRow<F> value, bool both_orders = true) {
    prod_[static_cast<std::size_t>(i) * dim_ + j] = value;
    if (both_orders && i != j) prod_[static_cast<std::size_t>(j) * dim_ + i] = std::move(value);
  }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> out(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j].is_zero()) continue;
        F c = x[i] * y[j];
        for (const auto& [k, q] : product(i, j)) out[k] += c * q;
      }
    }
    return out;
  }

  // matrix of v -> x o v in the basis
  Mat<F> left_mult_matrix(const Vec<F>& x) const {
    Mat<F> m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (const auto& [k, q] : product(i, j)) m(k, j) += x[i] * q;
      }
    return m;
  }
  Mat<F> left_mult_matrix(int i) const {
    Mat<F> m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, q] : product(i, j)) m(k, j) = q;
    return m;
  }

  Vec<F> basis_vec(int i) const {
    Vec<F> v(dim_);
    v[i] = F(1);
    return v;
  }

  std::string format_element(const Vec<F>& v) const {
    std::string out;
    for (int i = 0; i < dim_; ++i) {
      if (v[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string l = labels_[i].find('*') == std::string::npos ? labels_[i] : "(" + labels_[i] + ")";
      out += v[i].is_one() ? l : v[i].to_string() + "*" + l;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const AlgebraTable& a, const AlgebraTable& b) {
    return a.dim_ == b.dim_ && a.labels_ == b.labels_ && a.prod_ == b.prod_;
  }

 private:
  int dim_;
  std::vector<std::string> labels_;
  std::vector<SparseRow<F>> prod_;
};

// ---------------------------------------------------------------------------
// scratch accumulator for sparse products in hot sweeps

template <class F>
struct DenseAcc {
  Vec<F> val;
  std::vector<char> mark;
  std::vector<int> touched;

  explicit DenseAcc(int dim = 0) : val(dim), mark(dim, 0) {}

  void reset(int dim) {
    val.assign(dim, F());
    mark.assign(dim, 0);
    touched.clear();
  }
  void clear() {
    for (int k : touched) {
      val[k] = F();
      mark[k] = 0;
    }
    touched.clear();
  }
  void add(int k, const F& c) {
    if (!mark[k]) {
      mark[k] = 1;
      touched.push_back(k);
    }
    val[k] += c;
  }
  bool is_zero() const {
    for (int k : touched)
      if (!val[k].is_zero()) return false;
    return true;
  }
  SparseRow<F> take_sorted() {
    std::sort(touched.begin(), touched.end());
    SparseRow<F> out;
    for (int k : touched)
      if (!val[k].is_zero()) out.emplace_back(k, val[k]);
    clear();
    return out;
  }
};

// acc += c * (row o e_j)
template <class F>
void mul_row_basis(const AlgebraTable<F>& A, const SparseRow<F>& row, int j, const F& c,
                   DenseAcc<F>& acc) {
  for (const auto& [b, cb] : row) {
    F cc = c * cb;
    for (const auto& [k, q] : A.product(b, j)) acc.add(k, cc * q);
  }
}

// out = row1 o row2 (sparse), using acc as scratch
template <class F>
SparseRow<F> mul_rows(const AlgebraTable<F>& A, const SparseRow<F>& r1, const SparseRow<F>& r2,
                      DenseAcc<F>& acc) {
  acc.clear();
  for (const auto& [i, ci] : r1)
    for (const auto& [j, cj] : r2) {
      F c = ci * cj;
      for (const auto& [k, q] : A.product(i, j)) acc.add(k, c * q);
    }
  return acc.take_sorted();
}

// ---------------------------------------------------------------------------
// axiom sweeps

template <class F>
std::optional<std::array<int, 2>> commutativity_witness(const AlgebraTable<F>& A) {
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i + 1; j < A.dim(); ++j)
      if (A.product(i, j) != A.product(j, i)) return std::array<int, 2>{i, j};
  return std::nullopt;
}
template <class F>
bool is_commutative(const AlgebraTable<F>& A) {
  return !commutativity_witness(A).has_value();
}

inline std::vector<std::array<int, 3>> sorted_triples(int dim) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) out.push_back({i, j, k});
  return out;
}

// J(x,y,z) = (x o y) o z + (z o x) o y + (y o z) o x on basis triples.  For a
// commutative table J is symmetric in its three slots, so sorted triples
// suffice; otherwise all triples are swept.
template <class F>
std::optional<std::array<int, 3>> jacobi_witness(const AlgebraTable<F>& A) {
  const int n = A.dim();
  DenseAcc<F> acc(n);
  auto check = [&](int i, int j, int k) {
    acc.clear();
    mul_row_basis(A, A.product(i, j), k, F(1), acc);
    mul_row_basis(A, A.product(k, i), j, F(1), acc);
    mul_row_basis(A, A.product(j, k), i, F(1), acc);
    return acc.is_zero();
  };
  if (is_commutative(A)) {
    for (const auto& [i, j, k] : sorted_triples(n))
      if (!check(i, j, k)) return std::array<int, 3>{i, j, k};
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (!check(i, j, k)) return std::array<int, 3>{i, j, k};
  }
  return std::nullopt;
}
template <class F>
bool jacobi_holds(const AlgebraTable<F>& A) {
  return !jacobi_witness(A).has_value();
}

template <class F>
bool is_mock_lie(const AlgebraTable<F>& A) {
  return is_commutative(A) && jacobi_holds(A);
}

template <class F>
std::optional<std::array<int, 3>> associator_witness(const AlgebraTable<F>& A) {
  const int n = A.dim();
  DenseAcc<F> acc(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        acc.clear();
        mul_row_basis(A, A.product(i, j), k, F(1), acc);
        for (const auto& [b, cb] : A.product(j, k))
          for (const auto& [t, q] : A.product(i, b)) acc.add(t, -cb * q);
        if (!acc.is_zero()) return std::array<int, 3>{i, j, k};
      }
  return std::nullopt;
}
template <class F>
bool is_associative(const AlgebraTable<F>& A) {
  return !associator_witness(A).has_value();
}

// Full linearization of (x o x) o x: sum over placements of (x1,x2,x3).
template <class F>
std::optional<std::array<int, 3>> nil3_witness(const AlgebraTable<F>& A) {
  const int n = A.dim();
  DenseAcc<F> acc(n);
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& t : sorted_triples(n)) {
    acc.clear();
    for (const auto& p : perms)
      mul_row_basis(A, A.product(t[p[0]], t[p[1]]), t[p[2]], F(1), acc);
    if (!acc.is_zero()) return t;
  }
  return std::nullopt;
}
template <class F>
bool nil3_holds(const AlgebraTable<F>& A) {
  return !nil3_witness(A).has_value();
}

// Full linearization of the Jordan identity (x o y) o (x o x) =
// x o (y o (x o x)) in the degree-3 variable x; slots (x1,x2,x3) sorted,
// y free.  Witness packs (x1,x2,x3,y).
template <class F>
std::optional<std::array<int, 4>> jordan_witness(const AlgebraTable<F>& A, int jobs = 1) {
  const int n = A.dim();
  if (n == 0) return std::nullopt;
  if (!is_commutative(A)) throw std::invalid_argument("jordan_witness: table not commutative");
  const auto triples = sorted_triples(n);
  const std::int64_t total = static_cast<std::int64_t>(triples.size()) * n;
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<DenseAcc<F>> scratch(std::max(jobs, 1), DenseAcc<F>(n));
  std::vector<DenseAcc<F>> scratch2(std::max(jobs, 1), DenseAcc<F>(n));
  auto pred = [&](std::int64_t idx, int tid) {
    const auto& t = triples[idx / n];
    const int y = static_cast<int>(idx % n);
    DenseAcc<F>& acc = scratch[tid];
    DenseAcc<F>& tmp = scratch2[tid];
    acc.clear();
    for (const auto& p : perms) {
      const int x1 = t[p[0]], x2 = t[p[1]], x3 = t[p[2]];
      const SparseRow<F>& sq = A.product(x2, x3);
      // (x1 o y) o (x2 o x3)
      const SparseRow<F>& xy = A.product(x1, y);
      for (const auto& [b, cb] : xy)
        for (const auto& [d, cd] : sq)
          for (const auto& [k, q] : A.product(b, d)) acc.add(k, cb * cd * q);
      // - x1 o (y o (x2 o x3))
      tmp.clear();
      mul_row_basis(A, sq, y, F(1), tmp);  // (x2 o x3) o y, commutative order irrelevant here
      for (int k : tmp.touched) {
        if (tmp.val[k].is_zero()) continue;
        for (const auto& [r, q] : A.product(x1, k)) acc.add(r, -tmp.val[k] * q);
      }
    }
    return !acc.is_zero();
  };
  std::int64_t hit = par::first_hit(total, jobs, pred);
  if (hit < 0) return std::nullopt;
  const auto& t = triples[hit / n];
  return std::array<int, 4>{t[0], t[1], t[2], static_cast<int>(hit % n)};
}
template <class F>
bool is_jordan(const AlgebraTable<F>& A, int jobs = 1) {
  return !jordan_witness(A, jobs).has_value();
}

// Full linearization of ((x o y) o y) o y in the degree-3 variable y; slots
// (y1,y2,y3) sorted, x free.  Witness packs (x,y1,y2,y3).
template <class F>
std::optional<std::array<int, 4>> engel3_witness(const AlgebraTable<F>& A, int jobs = 1) {
  const int n = A.dim();
  if (n == 0) return std::nullopt;
  const auto triples = sorted_triples(n);
  const std::int64_t total = static_cast<std::int64_t>(triples.size()) * n;
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<DenseAcc<F>> scratch(std::max(jobs, 1), DenseAcc<F>(n));
  std::vector<DenseAcc<F>> scratch2(std::max(jobs, 1), DenseAcc<F>(n));
  auto pred = [&](std::int64_t idx, int tid) {
    const auto& t = triples[idx / n];
    const int x = static_cast<int>(idx % n);
    DenseAcc<F>& acc = scratch[tid];
    DenseAcc<F>& tmp = scratch2[tid];
    acc.clear();
    for (const auto& p : perms) {
      tmp.clear();
      mul_row_basis(A, A.product(x, t[p[0]]), t[p[1]], F(1), tmp);
      for (int k : tmp.touched) {
        if (tmp.val[k].is_zero()) continue;
        for (const auto& [r, q] : A.product(k, t[p[2]])) acc.add(r, tmp.val[k] * q);
      }
    }
    return !acc.is_zero();
  };
  std::int64_t hit = par::first_hit(total, jobs, pred);
  if (hit < 0) return std::nullopt;
  const auto& t = triples[hit / n];
  return std::array<int, 4>{static_cast<int>(hit % n), t[0], t[1], t[2]};
}
template <class F>
bool engel3_holds(const AlgebraTable<F>& A, int jobs = 1) {
  return !engel3_witness(A, jobs).has_value();
}

// ---------------------------------------------------------------------------
// subspaces

template <class F>
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  static Subspace zero(int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat<F>(0, ambient);
    return s;
  }
  static Subspace full(int ambient) {
    std::vector<Vec<F>> rows;
    for (int i = 0; i < ambient; ++i) {
      Vec<F> v(ambient);
      v[i] = F(1);
      rows.push_back(std::move(v));
    }
    return span(ambient, rows);
  }
  static Subspace span(int ambient, const std::vector<Vec<F>>& vecs) {
    Mat<F> m(0, ambient);
    for (const auto& v : vecs) m.append_row(v);
    return from_rows(ambient, std::move(m));
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Mat<F>& basis() const { return basis_; }
  const std::vector<int>& pivot_cols() const { return pivots_; }

  Vec<F> basis_vec(int r) const { return basis_.row(r); }

  // normal form of v modulo the subspace (pivot coordinates eliminated)
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const F& c = v[pivots_[r]];
      if (c.is_zero()) continue;
      F f = c;
      for (int j = 0; j < ambient_; ++j) v[j] -= f * basis_(static_cast<int>(r), j);
    }
    return v;
  }
  bool contains(const Vec<F>& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& o) const {
    for (int r = 0; r < o.dim(); ++r)
      if (!contains(o.basis_.row(r))) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    Mat<F> m = basis_;
    for (int r = 0; r < o.dim(); ++r) m.append_row(o.basis_.row(r));
    return from_rows(ambient_, std::move(m));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  static Subspace from_rows(int ambient, Mat<F> m) {
    Subspace s;
    s.ambient_ = ambient;
    s.pivots_ = m.rref();
    Mat<F> clean(0, ambient);
    for (std::size_t r = 0; r < s.pivots_.size(); ++r) clean.append_row(m.row(static_cast<int>(r)));
    s.basis_ = std::move(clean);
    return s;
  }
  int ambient_;
  Mat<F> basis_;  // rref rows, zero rows dropped
  std::vector<int> pivots_;
};

// span of { u o v : u in U basis, v in V basis }
template <class F>
Subspace<F> subspace_product(const AlgebraTable<F>& A, const Subspace<F>& U, const Subspace<F>& V) {
  std::vector<Vec<F>> vecs;
  for (int r = 0; r < U.dim(); ++r)
    for (int s = 0; s < V.dim(); ++s) vecs.push_back(A.multiply(U.basis_vec(r), V.basis_vec(s)));
  return Subspace<F>::span(A.dim(), vecs);
}

// L^1 = L, L^k = L^{k-1} o L; returned until the series stabilizes (the last
// entry repeats or is zero).
template <class F>
std::vector<Subspace<F>> lower_central_series(const AlgebraTable<F>& A) {
  std::vector<Subspace<F>> series{Subspace<F>::full(A.dim())};
  while (series.back().dim() > 0) {
    Subspace<F> next = subspace_product(A, series.back(), series.front());
    if (next == series.back()) break;  // stabilized, not nilpotent
    series.push_back(std::move(next));
  }
  return series;
}

// least n with L^n = 0, or 0 if the series stabilizes above zero; the zero
// algebra gets 1, a nonzero abelian algebra 2.
template <class F>
int nil_index(const AlgebraTable<F>& A) {
  if (A.dim() == 0) return 1;
  auto series = lower_central_series(A);
  if (series.back().dim() > 0) return 0;
  return static_cast<int>(series.size());
}

// {z : z o e_i = 0 for all i}
template <class F>
Subspace<F> center(const AlgebraTable<F>& A) {
  const int n = A.dim();
  if (n == 0) return Subspace<F>::zero(0);
  Mat<F> sys(n * n, n);  // row (i*n+k): coefficient of e_k in (z o e_i)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, q] : A.product(j, i)) sys(i * n + k, j) += q;
  return Subspace<F>::span(n, sys.nullspace());
}

template <class F>
bool is_ideal(const AlgebraTable<F>& A, const Subspace<F>& S) {
  for (int r = 0; r < S.dim(); ++r)
    for (int i = 0; i < A.dim(); ++i)
      if (!S.contains(A.multiply(S.basis_vec(r), A.basis_vec(i)))) return false;
  return true;
}

template <class F>
Subspace<F> ideal_generated_by(const AlgebraTable<F>& A, const std::vector<Vec<F>>& gens) {
  Subspace<F> S = Subspace<F>::span(A.dim(), gens);
  for (;;) {
    Subspace<F> grown = S.sum(subspace_product(A, S, Subspace<F>::full(A.dim())));
    if (grown == S) return S;
    S = std::move(grown);
  }
}

template <class F>
Subspace<F> subalgebra_generated_by(const AlgebraTable<F>& A, const std::vector<Vec<F>>& gens) {
  Subspace<F> S = Subspace<F>::span(A.dim(), gens);
  for (;;) {
    Subspace<F> grown = S.sum(subspace_product(A, S, S));
    if (grown == S) return S;
    S = std::move(grown);
  }
}

// Quotient by a (verified) ideal.  The quotient basis is the set of ambient
// coordinates NOT pivotal in the ideal's echelon basis; products are reduced
// modulo the ideal and read off on those coordinates.
template <class F>
struct QuotientResult {
  AlgebraTable<F> algebra;
  std::vector<int> coords;  // quotient basis index -> ambient coordinate
};

template <class F>
QuotientResult<F> quotient(const AlgebraTable<F>& A, const Subspace<F>& I) {
  if (I.ambient() != A.dim()) throw std::invalid_argument("quotient: ambient mismatch");
  if (!is_ideal(A, I)) throw std::invalid_argument("quotient: subspace is not an ideal");
  std::vector<bool> pivotal(A.dim(), false);
  for (int c : I.pivot_cols()) pivotal[c] = true;
  std::vector<int> coords;
  std::vector<std::string> labels;
  for (int c = 0; c < A.dim(); ++c)
    if (!pivotal[c]) {
      coords.push_back(c);
      labels.push_back(A.labels()[c]);
    }
  const int m = static_cast<int>(coords.size());
  std::vector<int> coord_pos(A.dim(), -1);
  for (int t = 0; t < m; ++t) coord_pos[coords[t]] = t;
  AlgebraTable<F> Q(m, labels);
  for (int s = 0; s < m; ++s)
    for (int t = s; t < m; ++t) {
      Vec<F> p = I.reduce(A.multiply(A.basis_vec(coords[s]), A.basis_vec(coords[t])));
      SparseRow<F> row;
      for (int k = 0; k < A.dim(); ++k)
        if (!p[k].is_zero()) row.emplace_back(coord_pos[k], p[k]);
      Q.set_product(s, t, std::move(row));
    }
  return {std::move(Q), std::move(coords)};
}

// A subspace closed under multiplication, as a standalone table; basis
// element r of the result is the r-th reduced-echelon basis vector of S.
template <class F>
AlgebraTable<F> restricted_table(const AlgebraTable<F>& A, const Subspace<F>& S) {
  if (S.ambient() != A.dim()) throw std::invalid_argument("restricted_table: ambient mismatch");
  const int n = S.dim();
  AlgebraTable<F> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec<F> w = A.multiply(S.basis_vec(i), S.basis_vec(j));
      if (!S.contains(w))
        throw std::invalid_argument("restricted_table: subspace is not closed under products");
      SparseRow<F> row;
      for (int r = 0; r < n; ++r)
        if (!w[S.pivot_cols()[r]].is_zero()) row.emplace_back(r, w[S.pivot_cols()[r]]);
      out.set_product(i, j, std::move(row));
    }
  return out;
}

template <class F>
AlgebraTable<F> direct_sum(const AlgebraTable<F>& A, const AlgebraTable<F>& B) {
  const int n = A.dim(), m = B.dim();
  std::vector<std::string> labels = A.labels();
  for (const std::string& l : B.labels()) labels.push_back(l);
  // disambiguate duplicate labels deterministically: second copy of l
  // becomes l.2, then l.3, skipping names already taken
  std::set<std::string> used;
  for (std::string& l : labels) {
    if (used.insert(l).second) continue;
    int k = 2;
    std::string cand;
    do {
      cand = l + "." + std::to_string(k++);
    } while (!used.insert(cand).second);
    l = cand;
  }
  AlgebraTable<F> S(n + m, labels);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) S.set_product(i, j, A.product(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      SparseRow<F> row = B.product(i, j);
      for (auto& [k, c] : row) k += n;
      S.set_product(n + i, n + j, std::move(row));
    }
  return S;
}

}  // namespace mocklie
