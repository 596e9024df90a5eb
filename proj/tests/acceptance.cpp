// Acceptance gate: eleven go/no-go checks over the library's headline
// results, one [PASS]/[FAIL] line each.  Criterion 7 (the enveloping
// dimension of the 44-dimensional exceptional algebra) runs for hours, so it
// only executes under --long, where --checkpoint makes the completion
// resumable; without --long it prints [SKIP] and does not affect the exit
// code.  Exit status: 0 when every executed criterion passed.
//
// Usage: acceptance [--long] [--jobs N] [--checkpoint PATH]
#include <cstring>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mocklie/catalog.hpp"
#include "mocklie/groebner.hpp"
#include "mocklie/identity.hpp"
#include "mocklie/representation.hpp"

using namespace mocklie;

namespace {

bool all_ok = true;

void line(int k, bool pass, const std::string& text) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << k << ": " << text << "\n";
  all_ok = all_ok && pass;
}

void skip(int k, const std::string& text) { std::cout << "[SKIP] " << k << ": " << text << "\n"; }

std::string ipath(const std::string& stem) {
  return std::string(MOCKLIE_REPO_ROOT) + "/identities/" + stem + ".id";
}

// The ten small catalog algebras with published enveloping dimensions.
const std::vector<std::pair<std::string, std::int64_t>> golden = {
    {"A12", 3},           {"A12+A01", 5},         {"A13", 5},
    {"A12+A12", 6},       {"A12+A01+A01", 9},     {"A13+A01", 9},
    {"A12+A12+A01", 10},  {"A12+A13", 10},        {"A12+A01+A01+A01", 17},
    {"A13+A01+A01", 17},
};

// Representative antiderivation forms of t K[t]/(t^n) as dim V x dim L
// matrices over the self module (dim V = dim L = n-1); `which` is 1, 2, or 3.
Mat<Rat> trunc_form(int n, int which) {
  Mat<Rat> D(n - 1, n - 1);
  if (which == 1) {
    D(n - 2, 0) = Rat(1);  // t -> t^{n-1}
  } else if (which == 2) {
    D(n - 3, 0) = Rat(-1, 2);  // t -> -1/2 t^{n-2}
    D(n - 2, 1) = Rat(1);      // t^2 -> t^{n-1}
  } else {
    D(n - 4, 0) = Rat(1);   // t -> t^{n-3}
    D(n - 3, 1) = Rat(-2);  // t^2 -> -2 t^{n-2}
    D(n - 2, 2) = Rat(1);   // t^3 -> t^{n-1}
  }
  return D;
}

// Degree-1 elements of a (possibly incomplete) basis, as algebra elements.
// Any such element certifies a kernel vector even before completion closes,
// because everything in the basis lies in the defining ideal.
std::vector<Vec<Rat>> degree1_elements(const GroebnerBasis<Rat>& gb) {
  std::vector<Vec<Rat>> out;
  for (const auto& g : gb.gens) {
    if (g.lead().size() != 1) continue;
    Vec<Rat> v(gb.letters);
    for (const auto& [w, c] : g.terms) v[static_cast<unsigned char>(w[0])] = c;
    out.push_back(std::move(v));
  }
  return out;
}

Vec<Rat> random_element(int dim, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Vec<Rat> v(dim);
  for (auto& x : v) x = Rat(coeff(rng));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  bool run_long = false;
  int jobs = par::hardware_jobs();
  std::string checkpoint = "m44.checkpoint";
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--long") == 0)
      run_long = true;
    else if (std::strcmp(argv[a], "--jobs") == 0 && a + 1 < argc)
      jobs = std::max(1, std::atoi(argv[++a]));
    else if (std::strcmp(argv[a], "--checkpoint") == 0 && a + 1 < argc)
      checkpoint = argv[++a];
    else {
      std::cerr << "usage: acceptance [--long] [--jobs N] [--checkpoint PATH]\n";
      return 2;
    }
  }

  const AlgebraTable<Rat> M = catalog_algebra<Rat>("M44");

  // Envelopes of every small catalog entry, shared by criteria 1, 3, 6, 8.
  std::map<std::string, EnvelopeResult<Rat>> env;
  std::vector<std::string> small_names;
  for (const CatalogEntry& e : catalog_entries())
    if (e.name != "M44") small_names.push_back(e.name);
  EnvelopeOptions eo;
  eo.jobs = jobs;
  for (const std::string& name : small_names)
    env.emplace(name, envelope(catalog_algebra<Rat>(name), eo));

  // 1 — golden enveloping dimensions.
  {
    int okc = 0;
    int close_deg = 0;
    std::ostringstream bad;
    for (const auto& [name, want] : golden) {
      const auto& r = env.at(name);
      if (r.gb.complete && r.dim_u == want)
        ++okc;
      else
        bad << " " << name << "=" << r.dim_u;
      close_deg = std::max(close_deg, r.gb.processed_degree);
    }
    line(1, okc == static_cast<int>(golden.size()),
         "enveloping dimensions match the ten golden values (" + std::to_string(okc) + "/10, completion degree <= " +
             std::to_string(close_deg) + ")" + (bad.str().empty() ? "" : "; wrong:" + bad.str()));
  }

  // 2 — abelian algebras: exterior-algebra dimension 2^n.
  {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
      auto r = envelope(abelian_algebra<Rat>(n), eo);
      ok = ok && r.gb.complete && r.dim_u == (std::int64_t{1} << n);
    }
    line(2, ok, "abelian enveloping dimensions equal 2^n for n = 1..6");
  }

  // 3 — nonabelian bound: dim U <= 3 * 2^(dim - 2).
  {
    bool ok = true;
    int count = 0;
    for (const std::string& name : small_names) {
      AlgebraTable<Rat> A = catalog_algebra<Rat>(name);
      bool abelian = true;
      for (int i = 0; i < A.dim() && abelian; ++i)
        for (int j = i; j < A.dim() && abelian; ++j)
          if (!A.product(i, j).empty()) abelian = false;
      if (abelian) continue;
      ++count;
      const auto& r = env.at(name);
      ok = ok && r.gb.complete && r.dim_u <= std::int64_t{3} << (A.dim() - 2);
    }
    line(3, ok && count >= 10,
         "every nonabelian catalog envelope obeys dim U <= 3*2^(dim-2) (" + std::to_string(count) +
             " algebras)");
  }

  // 4 — the capped free quotient on three generators.
  {
    bool ok = M.dim() == 44 && is_mock_lie(M) && nil_index(M) == 9 && center(M).dim() == 1;
    line(4, ok, "free quotient with caps (3,3,2) has dim 44, nil index 9, center dim 1, axioms hold");
  }

  // 5 — the degree-8 exceptionality certificate at the generators.
  {
    IdentityPoly g8 = parse_identity_file(ipath("glennie8"));
    std::map<std::string, Vec<Rat>> at;
    for (std::size_t v = 0; v < g8.variables.size(); ++v)
      at[g8.variables[v]] = M.basis_vec(static_cast<int>(v));
    Vec<Rat> val = eval_identity(M, g8, at);
    int nonzero = 0, idx = -1;
    for (int i = 0; i < M.dim(); ++i)
      if (!val[i].is_zero()) {
        ++nonzero;
        idx = i;
      }
    Subspace<Rat> Z = center(M);
    bool ok = nonzero == 1 && Z.dim() == 1 && Z.contains(val);
    std::string coeff = idx >= 0 ? val[idx].to_string() : "0";
    for (std::uint64_t p : {5ull, 7ull, 251ull}) {
      FpScope scope(p);
      AlgebraTable<Fp> Mp = catalog_algebra<Fp>("M44");
      IdentityPoly g8p = parse_identity_file(ipath("glennie8"));
      std::map<std::string, Vec<Fp>> atp;
      for (std::size_t v = 0; v < g8p.variables.size(); ++v)
        atp[g8p.variables[v]] = Mp.basis_vec(static_cast<int>(v));
      Vec<Fp> vp = eval_identity(Mp, g8p, atp);
      bool nz = false;
      for (const auto& x : vp)
        if (!x.is_zero()) nz = true;
      ok = ok && nz;
    }
    line(5, ok,
         "degree-8 identity at the generators is a nonzero central value (coefficient " + coeff +
             " on the top word; nonzero mod 5, 7, 251)");
  }

  // 6 — speciality of the small algebras; exceptionality witness for the big one.
  GroebnerBasis<Rat> partial;  // capped completion over the 44-dim algebra, reused by criterion 8
  {
    bool small_ok = true;
    for (const std::string& name : small_names) {
      const auto& r = env.at(name);
      small_ok = small_ok && r.gb.complete && r.special;
    }
    partial = complete_basis(enveloping_relations(M), M.dim(), 4, jobs);
    std::vector<Vec<Rat>> wit = degree1_elements(partial);
    Subspace<Rat> span = Subspace<Rat>::span(M.dim(), wit);
    bool big_ok = !wit.empty() && span == center(M);
    line(6, small_ok && big_ok,
         "all dim <= 6 catalog algebras are special; the 44-dim algebra is not, and its degree-1 "
         "witness spans the center (" +
             std::to_string(wit.size()) + " witness element(s) by degree 4)");
  }

  // 7 — enveloping dimension of the exceptional algebra (hours-scale).
  if (run_long) {
    EnvelopeOptions lo;
    lo.jobs = jobs;
    lo.checkpoint = checkpoint;
    EnvelopeResult<Rat> r = envelope(M, lo);
    bool ok = r.gb.complete && r.dim_u == 157 && !r.special;
    line(7, ok,
         "enveloping dimension of the 44-dim algebra is 157 (got " + std::to_string(r.dim_u) +
             ", completion degree " + std::to_string(r.gb.processed_degree) + ")");
  } else {
    skip(7, "enveloping dimension 157 of the 44-dim algebra (run with --long)");
  }

  // 8 — kernel bound: L^4 = 0 forces an embedding; kernel elements lie in L^4.
  {
    bool ok = true;
    int embedded = 0;
    for (const std::string& name : small_names) {
      AlgebraTable<Rat> A = catalog_algebra<Rat>(name);
      int nil = nil_index(A);
      if (nil == 0 || nil > 4) continue;
      ++embedded;
      ok = ok && env.at(name).kernel_basis.empty();
    }
    auto series = lower_central_series(M);
    bool have_l4 = series.size() >= 4;
    Subspace<Rat> l4 = have_l4 ? series[3] : Subspace<Rat>::zero(M.dim());
    std::vector<Vec<Rat>> wit = degree1_elements(partial);
    bool big_ok = have_l4 && !wit.empty();
    for (const auto& v : wit) big_ok = big_ok && l4.contains(v);
    line(8, ok && embedded >= 10 && big_ok,
         "embedding holds for all " + std::to_string(embedded) +
             " catalog algebras with L^4 = 0; every degree-1 witness of the 44-dim algebra lies in L^4");
  }

  // 9 — antiderivation spaces of the truncated polynomial algebras.
  {
    const int want[] = {1, 2, 3, 3, 3, 3, 3};
    bool ok = true;
    for (int n = 2; n <= 8; ++n) {
      auto A = truncated_poly_algebra<Rat>(n);
      auto ders = antiderivations(left_mult_module(A));
      ok = ok && ders.dim() == want[n - 2];
      int forms = n == 2 ? 1 : n == 3 ? 2 : 3;
      std::vector<Vec<Rat>> flat;
      for (int f = 1; f <= forms; ++f) {
        Mat<Rat> D = trunc_form(n, f);
        ok = ok && ders.contains(D);
        flat.push_back(detail_rep::flatten(D));
      }
      Subspace<Rat> span = Subspace<Rat>::span(static_cast<int>(flat[0].size()), flat);
      ok = ok && span.dim() == ders.dim();
    }
    line(9, ok,
         "truncated-polynomial antiderivation spaces have dims 1,2,3,3,3,3,3 for n = 2..8 and the "
         "representative forms span them");
  }

  // 10 — identity suite across the catalog plus the iterated-square identity.
  {
    bool ok = true;
    std::vector<IdentityPoly> ids;
    for (const char* stem : {"jacobi", "nil3", "jordan", "engel3"})
      ids.push_back(parse_identity_file(ipath(stem)));
    for (const CatalogEntry& e : catalog_entries()) {
      AlgebraTable<Rat> A = catalog_algebra<Rat>(e.name);
      if (!is_mock_lie(A)) {
        ok = false;
        continue;
      }
      if (e.name == "M44") {
        // dedicated sweeps for the two quartic identities; file-driven for the rest
        ok = ok && holds_identically(A, ids[0], jobs).holds && holds_identically(A, ids[1], jobs).holds &&
             is_jordan(A, jobs) && engel3_holds(A, jobs);
      } else {
        for (const auto& p : ids) ok = ok && holds_identically(A, p, jobs).holds;
      }
    }
    Subspace<Rat> sq = lower_central_series(M)[1];  // L^2
    Subspace<Rat> s = subspace_product(M, sq, sq);
    s = subspace_product(M, s, sq);
    s = subspace_product(M, s, sq);
    s = subspace_product(M, s, Subspace<Rat>::full(M.dim()));
    ok = ok && s.dim() == 0;
    line(10, ok,
         "Jacobi, nil-3, Jordan, and 3-Engel hold identically on every catalog algebra; "
         "(((L^2 L^2) L^2) L^2) L vanishes on the 44-dim algebra");
  }

  // 11 — property suites: the quotient-ideal dimension bound, basis
  // uniqueness under relation shuffles, linearization vs random substitution,
  // and file round trips.
  {
    // (a) dim U(L) <= dim U(L/I) * dim U(I) over catalog ideals and
    // coordinate ideals of abelian algebras.
    int pairs = 0;
    bool ok_ul = true;
    auto check_pair = [&](const AlgebraTable<Rat>& A, const Subspace<Rat>& I) {
      if (I.dim() == 0 || I.dim() == A.dim() || !is_ideal(A, I)) return;
      ++pairs;
      auto uL = envelope(A, eo);
      auto uQ = envelope(quotient(A, I).algebra, eo);
      auto uI = envelope(restricted_table(A, I), eo);
      ok_ul = ok_ul && uL.gb.complete && uQ.gb.complete && uI.gb.complete &&
              uL.dim_u <= uQ.dim_u * uI.dim_u;
    };
    for (const std::string& name : small_names) {
      AlgebraTable<Rat> A = catalog_algebra<Rat>(name);
      std::vector<Subspace<Rat>> ideals{center(A)};
      auto series = lower_central_series(A);
      if (series.size() > 1) ideals.push_back(series[1]);
      for (std::size_t i = 0; i < ideals.size(); ++i) {
        bool dup = false;
        for (std::size_t j = 0; j < i; ++j) dup = dup || ideals[i] == ideals[j];
        if (!dup) check_pair(A, ideals[i]);
      }
    }
    for (int n = 2; n <= 6; ++n) {
      AlgebraTable<Rat> A = abelian_algebra<Rat>(n);
      for (int k = 1; k < n; ++k) {
        std::vector<Vec<Rat>> vs;
        for (int i = 0; i < k; ++i) vs.push_back(A.basis_vec(i));
        check_pair(A, Subspace<Rat>::span(n, vs));
      }
    }

    // (b) the reduced basis does not depend on relation order.
    bool ok_gb = true;
    std::mt19937 rng(20260819);
    for (const char* name : {"A12+A13", "AB3"}) {
      AlgebraTable<Rat> A = catalog_algebra<Rat>(name);
      auto rels = enveloping_relations(A);
      auto canon = [](GroebnerBasis<Rat> gb) {
        std::vector<std::string> s;
        for (const auto& g : gb.gens) s.push_back(g.str());
        std::sort(s.begin(), s.end());
        return s;
      };
      auto ref = canon(complete_basis(rels, A.dim(), 2 * A.dim() + 4, jobs));
      for (int round = 0; round < 4; ++round) {
        std::shuffle(rels.begin(), rels.end(), rng);
        ok_gb = ok_gb && canon(complete_basis(rels, A.dim(), 2 * A.dim() + 4, jobs)) == ref;
      }
    }

    // (c) identities certified on basis tuples also vanish on random elements.
    bool ok_lin = true;
    AlgebraTable<Rat> A = catalog_algebra<Rat>("A12+A13");
    for (const char* stem : {"jacobi", "nil3", "jordan", "engel3"}) {
      IdentityPoly p = parse_identity_file(ipath(stem));
      if (!holds_identically(A, p, jobs).holds) {
        ok_lin = false;
        continue;
      }
      for (int trial = 0; trial < 20; ++trial) {
        std::map<std::string, Vec<Rat>> at;
        for (const std::string& var : p.variables) at[var] = random_element(A.dim(), rng);
        for (const auto& x : eval_identity(A, p, at)) ok_lin = ok_lin && x.is_zero();
      }
    }

    // (d) file round trips reproduce the table exactly.
    bool ok_io = true;
    for (const CatalogEntry& e : catalog_entries()) {
      AlgebraTable<Rat> B = catalog_algebra<Rat>(e.name);
      std::string path = std::string("roundtrip_acceptance.alg");
      write_algebra_file(path, B, e.note);
      ok_io = ok_io && read_algebra_file<Rat>(path) == B;
      std::remove(path.c_str());
    }

    line(11, ok_ul && pairs >= 20 && ok_gb && ok_lin && ok_io,
         "quotient-ideal bound on " + std::to_string(pairs) +
             " pairs; relation-order-independent bases; 20-point random vanishing; file round trips");
  }

  std::cout << (all_ok ? "acceptance: all executed criteria passed\n"
                       : "acceptance: FAILURES above\n");
  return all_ok ? 0 : 1;
}
