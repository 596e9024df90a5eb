#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "mocklie/catalog.hpp"
#include "mocklie/groebner.hpp"

using namespace mocklie;

namespace {

template <class F>
std::vector<std::string> poly_strings(const std::vector<NCPoly<F>>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

template <class F>
bool same_gens(const GroebnerBasis<F>& a, const GroebnerBasis<F>& b) {
  if (a.gens.size() != b.gens.size()) return false;
  for (std::size_t i = 0; i < a.gens.size(); ++i)
    if (!(a.gens[i] == b.gens[i])) return false;
  return true;
}

template <class E, class Fn>
void check_throws_containing(Fn&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected an exception mentioning '" << needle << "'");
  } catch (const E& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

// relabel the basis of a table through a permutation (perm[i] = new index)
template <class F>
AlgebraTable<F> permuted_table(const AlgebraTable<F>& A, const std::vector<int>& perm) {
  AlgebraTable<F> B(A.dim());
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i; j < A.dim(); ++j) {
      SparseRow<F> row = A.product(i, j);
      for (auto& [k, c] : row) k = perm[k];
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      B.set_product(perm[i], perm[j], std::move(row));
    }
  return B;
}

}  // namespace

TEST_CASE("word order and formatting") {
  // degree first, then bytewise with higher letter index larger
  CHECK(nc_less(nc_letter(0), nc_letter(1)));
  CHECK(nc_less(nc_letter(100), nc_letter(200)));  // stays true past the signed-char range
  CHECK(nc_less(nc_letter(1) + nc_letter(1), nc_letter(0) + nc_letter(0) + nc_letter(0)));
  CHECK(nc_less(nc_letter(0) + nc_letter(1), nc_letter(1) + nc_letter(0)));
  CHECK(nc_compare(nc_letter(2), nc_letter(2)) == 0);
  CHECK(nc_word_str(NCWord()) == "1");
  CHECK(nc_word_str(nc_letter(0) + nc_letter(2)) == "x1*x3");
}

TEST_CASE("polynomial canonical form and printing") {
  using P = NCPoly<Rat>;
  NCWord a = nc_letter(0), b = nc_letter(1);
  P p = nc_canonical<Rat>({{a + b, Rat(1)}, {b + a, Rat(1)}, {a + b, Rat(2)}, {NCWord(), Rat(-1)}});
  CHECK(p.str() == "x2*x1 + 3*x1*x2 - 1");
  CHECK(p.lead() == b + a);
  CHECK(p.degree() == 2);
  P q = nc_canonical<Rat>({{a, Rat(1, 2)}, {a, Rat(-1, 2)}});
  CHECK(q.zero());
  CHECK(q.str() == "0");
  P r = nc_canonical<Rat>({{a, Rat(3)}, {b, Rat(-1)}});
  r.make_monic();
  CHECK(r.str() == "x2 - 3*x1");  // monic in the leading (larger) word
  P s = nc_mul_word(a, nc_canonical<Rat>({{b, Rat(2)}, {NCWord(), Rat(1)}}), b);
  CHECK(s.str() == "2*x1*x2*x2 + x1*x2");
}

TEST_CASE("defining relations of the envelope") {
  auto rels = enveloping_relations(abelian_algebra<Rat>(2));
  CHECK(poly_strings(rels) == std::vector<std::string>{"x1*x1", "x2*x1 + x1*x2", "x2*x2"});

  auto r13 = poly_strings(enveloping_relations(algebra_A13<Rat>()));
  REQUIRE(r13.size() == 6);
  // a o b = c turns into the mixed relation with the doubled image term
  CHECK(std::find(r13.begin(), r13.end(), "x2*x1 + x1*x2 - 2*x3") != r13.end());
  CHECK(std::find(r13.begin(), r13.end(), "x3*x1 + x1*x3") != r13.end());
  CHECK(std::find(r13.begin(), r13.end(), "x3*x2 + x2*x3") != r13.end());
  for (const char* sq : {"x1*x1", "x2*x2", "x3*x3"})
    CHECK(std::find(r13.begin(), r13.end(), sq) != r13.end());

  AlgebraTable<Rat> bad(2);
  bad.set_product(0, 1, SparseRow<Rat>{{0, Rat(1)}}, /*both_orders=*/false);
  CHECK_THROWS_AS(enveloping_relations(bad), std::invalid_argument);
}

TEST_CASE("reduced basis and normal words of the smallest nonabelian table") {
  auto res = envelope(algebra_A12<Rat>());
  REQUIRE(res.gb.complete);
  CHECK(poly_strings(res.gb.gens) ==
        std::vector<std::string>{"x1*x1 - x2", "x1*x2", "x2*x1", "x2*x2"});
  REQUIRE(res.normal_by_degree.size() == 2);
  CHECK(res.normal_by_degree[0] == std::vector<NCWord>{NCWord()});
  CHECK(res.normal_by_degree[1] == std::vector<NCWord>{nc_letter(0), nc_letter(1)});
  CHECK(res.dim_u == 3);
  CHECK(res.special);
}

TEST_CASE("envelope dimensions match the reference table") {
  const std::vector<std::pair<std::string, std::int64_t>> table = {
      {"A12", 3},          {"A12+A01", 5},          {"A13", 5},          {"A12+A12", 6},
      {"A12+A01+A01", 9},  {"A13+A01", 9},          {"A12+A12+A01", 10}, {"A12+A13", 10},
      {"A12+A01+A01+A01", 17}, {"A13+A01+A01", 17}, {"AB3", 5}};
  for (const auto& [name, want] : table) {
    CAPTURE(name);
    auto res = envelope(catalog_algebra<Rat>(name));
    REQUIRE(res.gb.complete);
    CHECK(res.dim_u == want);
  }
}

TEST_CASE("abelian envelopes are exterior-algebra sized") {
  for (int n = 0; n <= 6; ++n) {
    CAPTURE(n);
    auto res = envelope(abelian_algebra<Rat>(n));
    CHECK(res.dim_u == (std::int64_t{1} << n));
    CHECK(res.special);
    // every normal word is a strictly increasing product, so none is longer than n
    CHECK(static_cast<int>(res.normal_by_degree.size()) <= n + 1);
  }
}

TEST_CASE("nonabelian tables sharpen the dimension bound") {
  for (const char* name : {"A12", "A13", "AB3", "A12+A01", "A12+A12", "A13+A01",
                           "A12+A12+A01", "A12+A13", "A13+A01+A01"}) {
    CAPTURE(name);
    auto A = catalog_algebra<Rat>(name);
    auto res = envelope(A);
    CHECK(res.dim_u <= std::int64_t{3} << (A.dim() - 2));
  }
}

TEST_CASE("reduced basis is independent of relation order") {
  auto A = catalog_algebra<Rat>("A12+A13");
  auto rels = enveloping_relations(A);
  auto ref = complete_basis(rels, A.dim(), 2 * A.dim() + 4);
  REQUIRE(ref.complete);
  std::mt19937 rng(20260819);
  for (int round = 0; round < 4; ++round) {
    std::shuffle(rels.begin(), rels.end(), rng);
    auto gb = complete_basis(rels, A.dim(), 2 * A.dim() + 4);
    REQUIRE(gb.complete);
    CHECK(same_gens(ref, gb));
  }
}

TEST_CASE("dimension and speciality are relabeling-invariant") {
  auto A = catalog_algebra<Rat>("A12+A13");
  auto base = envelope(A);
  std::vector<int> perm = {4, 2, 0, 3, 1};
  auto B = permuted_table(A, perm);
  CHECK(is_commutative(B));
  CHECK(jacobi_holds(B));
  auto res = envelope(B);
  CHECK(res.dim_u == base.dim_u);
  CHECK(res.special == base.special);
  CHECK(res.gb.gens.size() == base.gb.gens.size());
}

TEST_CASE("the canonical map sends products to anticommutator halves") {
  auto A = catalog_algebra<Rat>("A12+A13");
  auto res = envelope(A);
  REQUIRE(res.gb.complete);
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i; j < A.dim(); ++j) {
      // x_i x_j + x_j x_i - 2 iota(e_i o e_j) must reduce to zero
      std::vector<std::pair<NCWord, Rat>> raw{{nc_letter(i) + nc_letter(j), Rat(1)},
                                              {nc_letter(j) + nc_letter(i), Rat(1)}};
      for (const auto& [w, c] : nc_element(A.multiply(A.basis_vec(i), A.basis_vec(j))).terms)
        raw.emplace_back(w, -(c + c));
      CHECK(normal_form(nc_canonical(std::move(raw)), res.gb).zero());
    }
  // normal words are their own normal forms
  for (const auto& level : res.normal_by_degree)
    for (const auto& w : level) {
      NCPoly<Rat> m = nc_canonical<Rat>({{w, Rat(1)}});
      CHECK(normal_form(m, res.gb) == m);
    }
}

TEST_CASE("cube-free tables embed into their envelopes") {
  // every catalog entry whose lower central series dies by the fourth step
  // must have a trivial envelope kernel
  for (const auto& entry : catalog_entries()) {
    if (entry.name == "M44") continue;
    CAPTURE(entry.name);
    auto A = catalog_algebra<Rat>(entry.name);
    auto series = lower_central_series(A);
    bool cube_free = series.size() <= 3 || series[3].dim() == 0;
    REQUIRE(cube_free);  // true for the whole small catalog
    auto res = envelope(A);
    CHECK(res.special);
    CHECK(res.kernel_basis.empty());
  }
}

TEST_CASE("quotient-times-ideal bounds the envelope dimension") {
  int pairs = 0;
  for (const auto& entry : catalog_entries()) {
    if (entry.name == "M44") continue;
    auto A = catalog_algebra<Rat>(entry.name);
    std::int64_t dim_full = envelope(A).dim_u;
    std::vector<Subspace<Rat>> ideals;
    auto add = [&](Subspace<Rat> s) {
      if (s.dim() == 0 || s.dim() == A.dim()) return;
      for (const auto& seen : ideals)
        if (seen == s) return;
      ideals.push_back(std::move(s));
    };
    auto series = lower_central_series(A);
    if (series.size() > 1) add(series[1]);
    add(center(A));
    for (int k = 0; k < A.dim(); ++k) add(ideal_generated_by(A, {A.basis_vec(k)}));
    for (const auto& I : ideals) {
      CAPTURE(entry.name);
      CAPTURE(I.dim());
      REQUIRE(is_ideal(A, I));
      auto Q = quotient(A, I);
      std::int64_t dq = envelope(Q.algebra).dim_u;
      std::int64_t di = envelope(restricted_table(A, I)).dim_u;
      CHECK(dim_full <= dq * di);
      ++pairs;
    }
  }
  CHECK(pairs >= 20);
}

TEST_CASE("a subspace that is not closed under products is rejected") {
  auto A = algebra_A12<Rat>();  // a o a = b
  auto S = Subspace<Rat>::span(2, {A.basis_vec(0)});
  check_throws_containing<std::invalid_argument>([&] { restricted_table(A, S); }, "not closed");
}

TEST_CASE("explicit degree budgets stop early and say so") {
  EnvelopeOptions o;
  o.maxdeg = 2;
  auto res = envelope(algebra_A13<Rat>(), o);
  CHECK(res.budget_exhausted);
  CHECK_FALSE(res.gb.complete);
  CHECK(res.gb.pending_degree == 3);
  CHECK(res.dim_u == 0);
  check_throws_containing<std::runtime_error>([&] { dim_envelope(res.gb); }, "incomplete");
  check_throws_containing<std::runtime_error>([&] { envelope_kernel_basis(res.gb); }, "incomplete");
}

TEST_CASE("infinite envelopes are detected instead of looping") {
  // one relation x2*x1 leaves all x1^a x2^b normal: not finite-dimensional
  std::vector<NCPoly<Rat>> rels{nc_canonical<Rat>({{nc_letter(1) + nc_letter(0), Rat(1)}})};
  auto gb = complete_basis(rels, 2, 10);
  REQUIRE(gb.complete);
  check_throws_containing<std::runtime_error>([&] { normal_words_by_degree(gb); }, "not finite");
}

TEST_CASE("parallel batches reproduce the serial basis") {
  for (const char* name : {"A13+A01+A01", "A12+A13"}) {
    CAPTURE(name);
    auto A = catalog_algebra<Rat>(name);
    EnvelopeOptions par;
    par.jobs = 4;
    auto s = envelope(A);
    auto p = envelope(A, par);
    CHECK(s.dim_u == p.dim_u);
    CHECK(same_gens(s.gb, p.gb));
  }
}

TEST_CASE("prime fields give the same small dimensions") {
  FpScope scope(7);
  for (const char* name : {"A12", "A13", "A12+A13"}) {
    CAPTURE(name);
    auto resq = envelope(catalog_algebra<Rat>(name));
    auto resp = envelope(catalog_algebra<Fp>(name));
    CHECK(resp.dim_u == resq.dim_u);
    CHECK(resp.special == resq.special);
  }
}

TEST_CASE("checkpoints resume and short-circuit") {
  const std::string path = "envelope_test.ckpt";
  std::remove(path.c_str());
  auto A = catalog_algebra<Rat>("A12+A13");
  auto fresh = envelope(A);

  SUBCASE("a partial run is picked up and finished") {
    EnvelopeOptions stage1;
    stage1.maxdeg = 2;
    stage1.checkpoint = path;
    auto partial = envelope(A, stage1);
    CHECK(partial.budget_exhausted);
    EnvelopeOptions stage2;
    stage2.checkpoint = path;
    auto resumed = envelope(A, stage2);
    REQUIRE(resumed.gb.complete);
    CHECK(resumed.dim_u == fresh.dim_u);
    CHECK(same_gens(resumed.gb, fresh.gb));
  }

  SUBCASE("a complete checkpoint is reloaded verbatim") {
    EnvelopeOptions o;
    o.checkpoint = path;
    auto first = envelope(A, o);
    auto second = envelope(A, o);  // reads the finished file, skips completion
    CHECK(same_gens(first.gb, second.gb));
    CHECK(second.dim_u == fresh.dim_u);
    CHECK(second.gb.complete);
  }

  SUBCASE("a checkpoint for a different table is refused") {
    EnvelopeOptions o;
    o.checkpoint = path;
    envelope(A, o);
    check_throws_containing<std::runtime_error>(
        [&] { envelope(catalog_algebra<Rat>("A13"), o); }, "fingerprint");
  }

  SUBCASE("a checkpoint from another field mode is refused") {
    EnvelopeOptions o;
    o.checkpoint = path;
    envelope(A, o);
    FpScope scope(7);
    check_throws_containing<std::runtime_error>(
        [&] { envelope(catalog_algebra<Fp>("A12+A13"), o); }, "field");
  }

  std::remove(path.c_str());
}

TEST_CASE("degenerate inputs") {
  auto res = envelope(AlgebraTable<Rat>(0));
  CHECK(res.dim_u == 1);  // just the unit
  CHECK(res.special);
  CHECK(res.gb.complete);
}
