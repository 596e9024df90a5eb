#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mocklie/catalog.hpp"
#include "mocklie/field.hpp"
#include "mocklie/free_quotient.hpp"

using namespace mocklie;

TEST_CASE("one generator, cap 3: the square survives, the cube dies") {
  auto R = build_free_quotient<Rat>({"a"}, {3});
  CHECK(R.algebra.dim() == 2);
  CHECK(R.algebra.labels() == std::vector<std::string>{"a", "a*a"});
  // Jacobi at degree 3 forces (a*a)*a = 0
  CHECK(R.algebra.product(0, 1).empty());
  CHECK(is_mock_lie(R.algebra));
  CHECK(nil_index(R.algebra) == 3);
}

TEST_CASE("two generators, caps (1,1)") {
  auto R = build_free_quotient<Rat>({"a", "b"}, {1, 1});
  CHECK(R.algebra.dim() == 3);
  CHECK(R.algebra.labels() == std::vector<std::string>{"a", "b", "a*b"});
  CHECK(is_mock_lie(R.algebra));
  CHECK(nil_index(R.algebra) == 3);
}

TEST_CASE("degree caps must be positive") {
  CHECK_THROWS_AS(build_free_quotient<Rat>({"a", "b"}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_free_quotient<Rat>({"a"}, {}), std::invalid_argument);
}

TEST_CASE("caps (3,3,2): the 44-dimensional quotient") {
  const auto& R = m44_construction<Rat>();
  CHECK(R.algebra.dim() == 44);
  CHECK(R.dims_by_degree ==
        std::vector<int>{0, 3, 6, 8, 9, 8, 6, 3, 1});
  CHECK(is_mock_lie(R.algebra));
  CHECK_FALSE(is_associative(R.algebra));

  // graded basis: degree-1 words are the generators, in order
  CHECK(R.algebra.labels()[0] == "a");
  CHECK(R.algebra.labels()[1] == "b");
  CHECK(R.algebra.labels()[2] == "c");
  CHECK(R.algebra.labels()[3] == "a*a");

  // lower central series steps down through the graded components
  auto series = lower_central_series(R.algebra);
  std::vector<int> dims;
  for (const auto& s : series) dims.push_back(s.dim());
  CHECK(dims == std::vector<int>{44, 41, 35, 27, 18, 10, 4, 1, 0});
  CHECK(nil_index(R.algebra) == 9);

  // the center is the one-dimensional top graded component
  auto Z = center(R.algebra);
  CHECK(Z.dim() == 1);
  CHECK(Z.contains(R.algebra.basis_vec(43)));
  CHECK(R.pool.degree(R.basis_words[43]) == 8);
}

TEST_CASE("the 44-dim quotient over prime fields") {
  {
    FpScope guard(5);
    auto R = build_free_quotient<Fp>({"a", "b", "c"}, {3, 3, 2});
    CHECK(R.algebra.dim() == 44);
    CHECK(is_mock_lie(R.algebra));
  }
  {
    FpScope guard(251);
    auto R = build_free_quotient<Fp>({"a", "b", "c"}, {3, 3, 2});
    CHECK(R.algebra.dim() == 44);
  }
}

TEST_CASE("row-generation parallelism does not change the result") {
  auto serial = build_free_quotient<Rat>({"a", "b", "c"}, {3, 3, 2}, 1);
  auto parallel = build_free_quotient<Rat>({"a", "b", "c"}, {3, 3, 2}, 4);
  CHECK(serial.algebra == parallel.algebra);
  CHECK(serial.basis_words == parallel.basis_words);
}

TEST_CASE("free quotients are mock-Lie whatever the caps") {
  const std::vector<std::string> names{"a", "b", "c"};
  for (auto caps : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {2, 1, 1}}) {
    std::vector<std::string> gens(names.begin(), names.begin() + caps.size());
    auto R = build_free_quotient<Rat>(gens, caps);
    CAPTURE(caps.size());
    CHECK(is_mock_lie(R.algebra));
    CHECK(engel3_holds(R.algebra));
    CHECK(nil_index(R.algebra) > 0);
  }
}
