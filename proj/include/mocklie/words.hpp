#pragma once

// Canonical commutative nonassociative words over a generator set, interned
// in a pool so that structurally equal words (up to commutativity) share one
// id.  A product node places the factor of larger total degree on the left;
// equal degrees put the smaller word (in the global order) on the left, so
// a*b and b*a intern to the same node, printed "a*b".
//
// Global word order, used for basis sorting and for echelon column order:
//   1. smaller total degree first;
//   2. multidegree compared position by position, a LARGER exponent on an
//      earlier generator coming first (so a*a precedes a*b precedes b*b);
//   3. remaining ties resolved structurally, left child then right child.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mocklie {

class WordPool {
 public:
  explicit WordPool(std::vector<std::string> generator_names) : names_(std::move(generator_names)) {
    if (names_.empty()) throw std::invalid_argument("WordPool: no generators");
    for (std::size_t g = 0; g < names_.size(); ++g) {
      Node n;
      n.gen = static_cast<int>(g);
      n.deg = 1;
      n.md.assign(names_.size(), 0);
      n.md[g] = 1;
      nodes_.push_back(std::move(n));
    }
  }

  int num_generators() const { return static_cast<int>(names_.size()); }
  const std::string& generator_name(int g) const { return names_[g]; }
  int find_generator(const std::string& name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (names_[g] == name) return static_cast<int>(g);
    return -1;
  }

  // generator g has word id g
  int generator(int g) const { return g; }

  int product(int u, int v) {
    if (needs_swap(u, v)) std::swap(u, v);
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    Node n;
    n.left = u;
    n.right = v;
    n.deg = nodes_[u].deg + nodes_[v].deg;
    n.md = nodes_[u].md;
    for (std::size_t g = 0; g < n.md.size(); ++g) n.md[g] += nodes_[v].md[g];
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    interned_.emplace(key, id);
    return id;
  }

  bool is_generator(int w) const { return nodes_[w].gen >= 0; }
  int generator_index(int w) const { return nodes_[w].gen; }
  int left(int w) const { return nodes_[w].left; }
  int right(int w) const { return nodes_[w].right; }
  int degree(int w) const { return nodes_[w].deg; }
  const std::vector<int>& multidegree(int w) const { return nodes_[w].md; }
  std::size_t size() const { return nodes_.size(); }

  // <0, 0, >0 in the global word order
  int compare(int u, int v) const {
    if (u == v) return 0;
    const Node& a = nodes_[u];
    const Node& b = nodes_[v];
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t g = 0; g < a.md.size(); ++g)
      if (a.md[g] != b.md[g]) return a.md[g] > b.md[g] ? -1 : 1;
    // identical multidegree: both are products (distinct generators differ
    // in multidegree), compare structurally
    int c = compare(a.left, b.left);
    if (c != 0) return c;
    return compare(a.right, b.right);
  }
  bool less(int u, int v) const { return compare(u, v) < 0; }

  std::string str(int w) const {
    const Node& n = nodes_[w];
    if (n.gen >= 0) return names_[n.gen];
    return factor_str(n.left) + "*" + factor_str(n.right);
  }

 private:
  struct Node {
    int left = -1, right = -1;
    int gen = -1;
    int deg = 0;
    std::vector<int> md;
  };

  bool needs_swap(int u, int v) const {
    if (nodes_[u].deg != nodes_[v].deg) return nodes_[u].deg < nodes_[v].deg;
    return compare(v, u) < 0;
  }

  std::string factor_str(int w) const {
    return is_generator(w) ? names_[nodes_[w].gen] : "(" + str(w) + ")";
  }

  std::vector<std::string> names_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> interned_;
};

inline bool multidegree_within(const std::vector<int>& md, const std::vector<int>& caps) {
  for (std::size_t g = 0; g < md.size(); ++g)
    if (md[g] > caps[g]) return false;
  return true;
}

struct WordEnumeration {
  WordPool pool;
  // by_degree[d] = word ids of degree d (d from 1), each sorted in word order
  std::vector<std::vector<int>> by_degree;

  std::vector<int> all() const {
    std::vector<int> out;
    for (const auto& level : by_degree) out.insert(out.end(), level.begin(), level.end());
    return out;
  }
};

inline void sort_level(WordPool& pool, std::vector<int>& level) {
  std::sort(level.begin(), level.end(), [&](int a, int b) { return pool.less(a, b); });
  level.erase(std::unique(level.begin(), level.end()), level.end());
}

// All canonical words with multidegree bounded by caps (one cap per
// generator, each >= 1), grouped and sorted by the global order.
inline WordEnumeration enumerate_words(const std::vector<std::string>& gens,
                                       const std::vector<int>& caps) {
  if (gens.size() != caps.size()) throw std::invalid_argument("enumerate_words: caps/generator count mismatch");
  for (int c : caps)
    if (c < 1) throw std::invalid_argument("enumerate_words: caps must be >= 1");
  WordEnumeration e{WordPool(gens), {}};
  int maxdeg = 0;
  for (int c : caps) maxdeg += c;
  e.by_degree.assign(maxdeg + 1, {});
  for (int g = 0; g < e.pool.num_generators(); ++g) e.by_degree[1].push_back(g);
  sort_level(e.pool, e.by_degree[1]);
  for (int n = 2; n <= maxdeg; ++n) {
    std::vector<int>& level = e.by_degree[n];
    for (int p = 1; 2 * p <= n; ++p) {
      int q = n - p;
      for (int u : e.by_degree[p]) {
        for (int v : e.by_degree[q]) {
          if (p == q && e.pool.less(v, u)) continue;
          std::vector<int> md = e.pool.multidegree(u);
          for (std::size_t g = 0; g < md.size(); ++g) md[g] += e.pool.multidegree(v)[g];
          if (!multidegree_within(md, caps)) continue;
          level.push_back(e.pool.product(u, v));
        }
      }
    }
    sort_level(e.pool, level);
  }
  return e;
}

}  // namespace mocklie
