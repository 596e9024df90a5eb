#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mocklie/words.hpp"

using mocklie::enumerate_words;
using mocklie::WordPool;

TEST_CASE("products intern commutatively and print canonically") {
  WordPool pool({"a", "b", "c"});
  int a = 0, b = 1, c = 2;
  int ab = pool.product(a, b);
  CHECK(ab == pool.product(b, a));
  CHECK(pool.str(ab) == "a*b");
  int abc = pool.product(ab, c);
  CHECK(abc == pool.product(c, ab));
  CHECK(pool.str(abc) == "(a*b)*c");
  int abca = pool.product(abc, a);
  CHECK(pool.str(abca) == "((a*b)*c)*a");
  // larger factor goes left even when given the other way round
  CHECK(pool.str(pool.product(a, ab)) == "(a*b)*a");
  CHECK(pool.degree(abca) == 4);
  CHECK(pool.multidegree(abca) == std::vector<int>{2, 1, 1});
}

TEST_CASE("word order: degree, then early-generator weight, then structure") {
  WordPool pool({"a", "b", "c"});
  int a = 0, b = 1, c = 2;
  CHECK(pool.less(a, b));
  CHECK(pool.less(b, c));
  int aa = pool.product(a, a);
  CHECK(pool.less(c, aa));  // degree dominates
  // within degree 2: a*a < a*b < a*c < b*b < b*c < c*c
  std::vector<int> deg2 = {pool.product(a, a), pool.product(a, b), pool.product(a, c),
                           pool.product(b, b), pool.product(b, c), pool.product(c, c)};
  for (std::size_t i = 0; i + 1 < deg2.size(); ++i) CHECK(pool.less(deg2[i], deg2[i + 1]));
  // same multidegree, different shape: (a*a)*b vs (a*b)*a
  int s1 = pool.product(pool.product(a, a), b);
  int s2 = pool.product(pool.product(a, b), a);
  CHECK(s1 != s2);
  CHECK(pool.less(s1, s2));
  CHECK(pool.compare(s1, s1) == 0);
}

TEST_CASE("enumeration respects caps") {
  auto one = enumerate_words({"a"}, {3});
  CHECK(one.all().size() == 3);  // a, a*a, (a*a)*a
  CHECK(one.by_degree[1].size() == 1);
  CHECK(one.by_degree[2].size() == 1);
  CHECK(one.by_degree[3].size() == 1);
  CHECK(one.pool.str(one.by_degree[3][0]) == "(a*a)*a");

  auto two = enumerate_words({"a", "b"}, {1, 1});
  CHECK(two.all().size() == 3);  // a, b, a*b

  // caps (2,2): levels 2,3,4,6 by a short hand count
  auto mid = enumerate_words({"a", "b"}, {2, 2});
  CHECK(mid.by_degree[1].size() == 2);
  CHECK(mid.by_degree[2].size() == 3);
  CHECK(mid.by_degree[3].size() == 4);
  CHECK(mid.by_degree[4].size() == 6);
  CHECK(mid.all().size() == 15);

  CHECK_THROWS_AS(enumerate_words({"a"}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_words({"a", "b"}, {1}), std::invalid_argument);
}

TEST_CASE("enumeration output is sorted and duplicate-free") {
  auto e = enumerate_words({"a", "b", "c"}, {2, 1, 1});
  for (std::size_t d = 1; d < e.by_degree.size(); ++d) {
    const auto& level = e.by_degree[d];
    for (std::size_t i = 0; i + 1 < level.size(); ++i) CHECK(e.pool.less(level[i], level[i + 1]));
    for (int w : level) {
      CHECK(e.pool.degree(w) == static_cast<int>(d));
      CHECK(mocklie::multidegree_within(e.pool.multidegree(w), {2, 1, 1}));
    }
  }
}
