#pragma once

// Polynomials in the free associative algebra on letters x1..xn, the raw
// material for Gröbner-basis computations over enveloping algebras.
//
// A word is a byte string, one letter index per byte (empty = the unit).
// Word order is degree-first, ties broken bytewise with the HIGHER letter
// index as the larger letter, so the leading word of x_i*x_j + x_j*x_i (i<j)
// is x_j*x_i and the words in normal form are the strictly increasing
// square-free products.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mocklie/algebra.hpp"

namespace mocklie {

using NCWord = std::string;

inline NCWord nc_letter(int i) { return NCWord(1, static_cast<char>(i)); }

// <0, 0, >0 in the word order (char_traits compares bytes as unsigned)
inline int nc_compare(const NCWord& a, const NCWord& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b);
}
inline bool nc_less(const NCWord& a, const NCWord& b) { return nc_compare(a, b) < 0; }

inline std::string nc_word_str(const NCWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += "x" + std::to_string(static_cast<unsigned char>(w[i]) + 1);
  }
  return out;
}

// Terms sorted descending (leading term first), no zero coefficients.
template <class F>
struct NCPoly {
  std::vector<std::pair<NCWord, F>> terms;

  bool zero() const { return terms.empty(); }
  const NCWord& lead() const { return terms.front().first; }
  const F& lead_coeff() const { return terms.front().second; }
  int degree() const { return terms.empty() ? 0 : static_cast<int>(terms.front().first.size()); }

  void make_monic() {
    if (terms.empty()) return;
    F inv = terms.front().second.inv();
    for (auto& [w, c] : terms) c = c * inv;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms == b.terms; }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& [w, c] = terms[t];
      std::string cs = c.to_string();
      bool neg = !cs.empty() && cs[0] == '-';
      if (t == 0)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (neg) cs = cs.substr(1);
      if (w.empty())
        out += cs;
      else if (cs == "1")
        out += nc_word_str(w);
      else
        out += cs + "*" + nc_word_str(w);
    }
    return out;
  }
};

// Canonicalize an unordered list of (word, coefficient) pairs.
template <class F>
NCPoly<F> nc_canonical(std::vector<std::pair<NCWord, F>> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return nc_less(b.first, a.first); });
  NCPoly<F> out;
  for (auto& [w, c] : raw) {
    if (!out.terms.empty() && out.terms.back().first == w) {
      out.terms.back().second = out.terms.back().second + c;
      if (out.terms.back().second.is_zero()) out.terms.pop_back();
    } else if (!c.is_zero()) {
      out.terms.emplace_back(std::move(w), c);
    }
  }
  return out;
}

// p -> a * p * b, term by term (order is preserved by multiplication)
template <class F>
NCPoly<F> nc_mul_word(const NCWord& a, const NCPoly<F>& p, const NCWord& b) {
  NCPoly<F> out;
  out.terms.reserve(p.terms.size());
  for (const auto& [w, c] : p.terms) out.terms.emplace_back(a + w + b, c);
  return out;
}

// element vector -> degree-1 polynomial (the canonical map into the envelope)
template <class F>
NCPoly<F> nc_element(const Vec<F>& v) {
  std::vector<std::pair<NCWord, F>> raw;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) raw.emplace_back(nc_letter(static_cast<int>(i)), v[i]);
  return nc_canonical(std::move(raw));
}

// The defining relations of the enveloping algebra of a commutative table:
//   x_i x_j + x_j x_i - 2 (x_i o x_j)   for i < j
//   x_i x_i -  (x_i o x_i)              for each i
// Letter k stands for the basis element with index k.
template <class F>
std::vector<NCPoly<F>> enveloping_relations(const AlgebraTable<F>& A) {
  if (auto w = commutativity_witness(A))
    throw std::invalid_argument("enveloping_relations: table is not commutative");
  std::vector<NCPoly<F>> rels;
  const int n = A.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<std::pair<NCWord, F>> raw;
      if (i == j) {
        raw.emplace_back(nc_letter(i) + nc_letter(i), F(1));
        for (const auto& [k, c] : A.product(i, i)) raw.emplace_back(nc_letter(k), -c);
      } else {
        raw.emplace_back(nc_letter(j) + nc_letter(i), F(1));
        raw.emplace_back(nc_letter(i) + nc_letter(j), F(1));
        for (const auto& [k, c] : A.product(i, j)) raw.emplace_back(nc_letter(k), -(c + c));
      }
      rels.push_back(nc_canonical(std::move(raw)));
    }
  return rels;
}

}  // namespace mocklie
