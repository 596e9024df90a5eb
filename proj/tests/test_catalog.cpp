#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "mocklie/catalog.hpp"
#include "mocklie/field.hpp"

using namespace mocklie;

TEST_CASE("file format round trip") {
  auto A = catalog_algebra<Rat>("A12+A13");
  std::stringstream buf;
  write_algebra(buf, A, "round trip");
  auto B = read_algebra<Rat>(buf);
  CHECK(A == B);
}

TEST_CASE("reading a hand-written table") {
  std::stringstream in(
      "# tiny example\n"
      "dim 2\n"
      "labels a b\n"
      "1 1 2 1\n");
  auto A = read_algebra<Rat>(in);
  CHECK(A == catalog_algebra<Rat>("A12"));
}

TEST_CASE("default labels and rational coefficients") {
  std::stringstream in("dim 2\n1 1 2 -3/2\n");
  auto A = read_algebra<Rat>(in);
  CHECK(A.labels() == std::vector<std::string>{"e1", "e2"});
  REQUIRE(A.product(0, 0).size() == 1);
  CHECK(A.product(0, 0)[0].second == Rat(-3, 2));
}

TEST_CASE("reader errors carry line numbers") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::stringstream in(text);
    try {
      read_algebra<Rat>(in);
      FAIL_CHECK("expected error containing '" << needle << "'");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("dim 2\n2 1 1 1\n", "line 2: entries must have i <= j");
  expect_error("dim 2\n1 1 2 1\n1 1 2 1\n", "line 3: duplicate entry");
  expect_error("dim 2\n1 3 1 1\n", "line 2: index out of range");
  expect_error("dim 2\n1 1 1 x\n", "line 2");
  expect_error("labels a\n", "line 1: labels before dim");
  expect_error("dim 2\nlabels a\n", "line 2: expected 2 labels");
  expect_error("1 1 1 1\n", "line 1: product entry before dim");
  expect_error("", "missing dim");
  expect_error("dim 2\n1 1 1\n", "expected 'i j k q'");
}

TEST_CASE("comments and blank lines are ignored") {
  std::stringstream in(
      "\n# header\n"
      "dim 1   # trailing comment\n"
      "   \n"
      "labels z\n");
  auto A = read_algebra<Rat>(in);
  CHECK(A.dim() == 1);
  CHECK(A.labels()[0] == "z");
}

TEST_CASE("writer refuses asymmetric tables") {
  AlgebraTable<Rat> A(2);
  A.set_product(0, 1, SparseRow<Rat>{{0, Rat(1)}}, /*both_orders=*/false);
  std::stringstream out;
  CHECK_THROWS(write_algebra(out, A));
}

TEST_CASE("catalog name resolution") {
  CHECK(catalog_algebra<Rat>("abelian6").dim() == 6);
  CHECK(catalog_algebra<Rat>("A12+A01+A01+A01").dim() == 5);
  CHECK_THROWS(catalog_algebra<Rat>("A99"));
  CHECK_THROWS(catalog_algebra<Rat>("abelianx"));
  for (const auto& entry : catalog_entries()) {
    if (entry.name == "M44") continue;  // covered by the free-quotient tests
    auto A = catalog_algebra<Rat>(entry.name);
    CAPTURE(entry.name);
    CHECK(is_mock_lie(A));
  }
}

TEST_CASE("prime field round trip reduces coefficients") {
  FpScope guard(7);
  std::stringstream in("dim 2\n1 1 2 10/3\n");  // 10/3 = 3*3^{-1}... = 10 * inv(3) mod 7
  auto A = read_algebra<Fp>(in);
  REQUIRE(A.product(0, 0).size() == 1);
  CHECK(A.product(0, 0)[0].second == Fp(10) / Fp(3));
  std::stringstream bad("dim 1\n1 1 1 1/7\n");
  CHECK_THROWS(read_algebra<Fp>(bad));
}
