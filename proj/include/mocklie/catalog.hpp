#pragma once

// Built-in algebra families, name resolution (including '+' direct sums and
// "abelianN"), and the structure-constant file format:
//
//   # comment
//   dim N
//   labels l1 ... lN          (optional, defaults to e1..eN)
//   i j k q                   (1-based: e_i o e_j = ... + q*e_k; only i <= j,
//                              the symmetric entry is implied)
//
// Readers report line numbers on every error; the writer refuses tables
// whose two product orders disagree, so a round-tripped file always encodes
// a commutative algebra.

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mocklie/algebra.hpp"
#include "mocklie/field.hpp"
#include "mocklie/free_quotient.hpp"

namespace mocklie {

template <class F>
AlgebraTable<F> read_algebra(std::istream& in) {
  auto fail = [](int line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
  };
  int dim = -1;
  std::vector<std::string> labels;
  std::map<std::tuple<int, int, int>, bool> seen;
  std::vector<std::map<int, F>> acc;  // (i*dim+j) -> k -> q, i <= j
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;  // blank or comment
    if (head == "dim") {
      if (dim >= 0) fail(lineno, "duplicate dim line");
      if (!(ss >> dim) || dim < 0) fail(lineno, "dim expects a nonnegative integer");
      std::string extra;
      if (ss >> extra) fail(lineno, "trailing content after dim");
      acc.assign(static_cast<std::size_t>(dim) * dim, {});
    } else if (head == "labels") {
      if (dim < 0) fail(lineno, "labels before dim");
      if (!labels.empty()) fail(lineno, "duplicate labels line");
      std::string l;
      while (ss >> l) labels.push_back(l);
      if (static_cast<int>(labels.size()) != dim)
        fail(lineno, "expected " + std::to_string(dim) + " labels, got " +
                         std::to_string(labels.size()));
    } else {
      if (dim < 0) fail(lineno, "product entry before dim");
      int i, j, k;
      std::string q;
      std::istringstream ts(line);
      if (!(ts >> i >> j >> k >> q)) fail(lineno, "expected 'i j k q'");
      std::string extra;
      if (ts >> extra) fail(lineno, "trailing content after entry");
      if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
        fail(lineno, "index out of range 1.." + std::to_string(dim));
      if (i > j) fail(lineno, "entries must have i <= j (symmetry is implied)");
      if (!seen.emplace(std::make_tuple(i, j, k), true).second)
        fail(lineno, "duplicate entry for (i,j,k)");
      F coeff;
      try {
        coeff = F::from_mpq(parse_rational(q));
      } catch (const std::exception& e) {
        fail(lineno, e.what());
      }
      if (!coeff.is_zero()) acc[static_cast<std::size_t>(i - 1) * dim + (j - 1)][k - 1] = coeff;
    }
  }
  if (dim < 0) throw std::runtime_error("missing dim line");
  AlgebraTable<F> A(dim, labels.empty() ? std::vector<std::string>{} : labels);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const auto& m = acc[static_cast<std::size_t>(i) * dim + j];
      if (m.empty()) continue;
      SparseRow<F> row(m.begin(), m.end());
      A.set_product(i, j, std::move(row));
    }
  return A;
}

template <class F>
AlgebraTable<F> read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_algebra<F>(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

template <class F>
void write_algebra(std::ostream& out, const AlgebraTable<F>& A, const std::string& comment = "") {
  if (auto w = commutativity_witness(A))
    throw std::runtime_error("refusing to write non-commutative table (e" +
                             std::to_string((*w)[0] + 1) + ", e" + std::to_string((*w)[1] + 1) +
                             ")");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "dim " << A.dim() << "\n";
  if (A.dim() > 0) {
    out << "labels";
    for (const auto& l : A.labels()) out << " " << l;
    out << "\n";
  }
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i; j < A.dim(); ++j)
      for (const auto& [k, q] : A.product(i, j))
        out << i + 1 << " " << j + 1 << " " << k + 1 << " " << q.to_string() << "\n";
}

template <class F>
void write_algebra_file(const std::string& path, const AlgebraTable<F>& A,
                        const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_algebra(out, A, comment);
}

// ---------------------------------------------------------------------------
// built-in families

template <class F>
AlgebraTable<F> abelian_algebra(int n) {
  return AlgebraTable<F>(n);
}

// 2-dim: a o a = b
template <class F>
AlgebraTable<F> algebra_A12() {
  AlgebraTable<F> A(2, {"a", "b"});
  A.set_product(0, 0, SparseRow<F>{{1, F(1)}});
  return A;
}

// 3-dim: a o b = c
template <class F>
AlgebraTable<F> algebra_A13() {
  AlgebraTable<F> A(3, {"a", "b", "c"});
  A.set_product(0, 1, SparseRow<F>{{2, F(1)}});
  return A;
}

// 3-dim: a o a = c, a o b = c (isomorphic to A13 when 2 is invertible)
template <class F>
AlgebraTable<F> algebra_AB3() {
  AlgebraTable<F> A(3, {"a", "b", "c"});
  A.set_product(0, 0, SparseRow<F>{{2, F(1)}});
  A.set_product(0, 1, SparseRow<F>{{2, F(1)}});
  return A;
}

// the degree-capped free mock-Lie algebra on a,b,c with caps (3,3,2)
template <class F>
const FreeQuotientResult<F>& m44_construction() {
  static std::map<std::string, FreeQuotientResult<F>> cache;  // keyed by field
  auto it = cache.find(F::name());
  if (it == cache.end())
    it = cache.emplace(F::name(), build_free_quotient<F>({"a", "b", "c"}, {3, 3, 2})).first;
  return it->second;
}

struct CatalogEntry {
  std::string name;
  std::string note;
};

inline std::vector<CatalogEntry> catalog_entries() {
  return {
      {"A01", "1-dim abelian"},
      {"A12", "2-dim, a*a = b"},
      {"A13", "3-dim, a*b = c"},
      {"AB3", "3-dim, a*a = c = a*b"},
      {"A12+A01", "direct sum"},
      {"A13+A01", "direct sum"},
      {"A12+A12", "direct sum"},
      {"A12+A01+A01", "direct sum"},
      {"A12+A12+A01", "direct sum"},
      {"A12+A13", "direct sum"},
      {"A12+A01+A01+A01", "direct sum"},
      {"A13+A01+A01", "direct sum"},
      {"M44", "44-dim free quotient, generators a,b,c with caps 3,3,2"},
  };
}

// Resolves catalog names: base families, "abelianN", "M44", and '+' sums.
template <class F>
AlgebraTable<F> catalog_algebra(const std::string& name) {
  if (name.find('+') != std::string::npos) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
      if (c == '+') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    AlgebraTable<F> sum = catalog_algebra<F>(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
      sum = direct_sum(sum, catalog_algebra<F>(parts[i]));
    return sum;
  }
  if (name == "A01") return AlgebraTable<F>(1, {"a"});
  if (name == "A12") return algebra_A12<F>();
  if (name == "A13") return algebra_A13<F>();
  if (name == "AB3") return algebra_AB3<F>();
  if (name == "M44") return m44_construction<F>().algebra;
  if (name.rfind("abelian", 0) == 0) {
    const std::string tail = name.substr(7);
    if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos)
      return abelian_algebra<F>(std::stoi(tail));
  }
  throw std::runtime_error("unknown catalog algebra: " + name);
}

}  // namespace mocklie
