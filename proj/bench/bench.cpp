// Compares the serial reference path (jobs=1) of each parallel kernel against
// its OpenMP path and verifies that both return identical results.  Usage:
//   bench [jobs] [--quick]
// With --quick the workloads shrink so the binary finishes in well under a
// second; the default sizes aim for measurable multi-threaded gains.
#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#include "mocklie/catalog.hpp"
#include "mocklie/groebner.hpp"
#include "mocklie/identity.hpp"

using namespace mocklie;

namespace {

double now_seconds() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

struct Row {
  std::string name;
  double serial = 0, parallel = 0;
  bool match = false;
};

// "gain" is wall-clock ratio; for the envelope it also reflects batch-mode
// reduction order, so it can exceed the thread count.
void print_row(const Row& r, int jobs) {
  std::cout << std::left << std::setw(34) << r.name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << r.serial << " s" << std::setw(9)
            << r.parallel << " s   gain " << std::setprecision(2)
            << (r.parallel > 0 ? r.serial / r.parallel : 0.0) << "x"
            << "  (" << jobs << " jobs)  " << (r.match ? "results match" : "MISMATCH") << "\n";
}

// Times fn(jobs) twice — once serial, once parallel — and compares results.
template <class Fn>
Row run(const std::string& name, int jobs, Fn&& fn) {
  Row r;
  r.name = name;
  double t0 = now_seconds();
  auto serial = fn(1);
  r.serial = now_seconds() - t0;
  t0 = now_seconds();
  auto parallel = fn(jobs);
  r.parallel = now_seconds() - t0;
  r.match = serial == parallel;
  print_row(r, jobs);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = par::hardware_jobs();
  bool quick = false;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--quick") == 0)
      quick = true;
    else
      jobs = std::max(1, std::atoi(argv[a]));
  }
#ifndef _OPENMP
  std::cout << "built without OpenMP: the parallel column runs the serial path\n";
#endif
  std::cout << "serial reference vs parallel kernels, " << jobs << " worker(s)\n\n";

  const AlgebraTable<Rat> M = catalog_algebra<Rat>("M44");
  bool all_match = true;
  auto track = [&](const Row& r) { all_match = all_match && r.match; };

  // Axiom sweeps: quartic tuple scans over the 44-dim algebra.
  track(run("engel3 sweep (dim 44)", jobs, [&](int j) { return engel3_holds(M, j); }));
  if (!quick) track(run("jordan sweep (dim 44)", jobs, [&](int j) { return is_jordan(M, j); }));

  // Identity sweep: every degree-8 evaluation over a small direct sum.
  {
    AlgebraTable<Rat> D = catalog_algebra<Rat>(quick ? "A13" : "A12+A13");
    IdentityPoly g8 = parse_identity_file(std::string(MOCKLIE_REPO_ROOT) + "/identities/glennie8.id");
    track(run("glennie8 sweep (dim " + std::to_string(D.dim()) + ")", jobs,
              [&](int j) { return holds_identically(D, g8, j).holds; }));
  }

  // Relation-row generation: the degree-capped free quotient on three
  // generators, rebuilt from scratch each run.
  track(run("free quotient caps 3,3,2", jobs, [&](int j) {
    auto R = build_free_quotient<Rat>({"a", "b", "c"}, {3, 3, 2}, j);
    return R.algebra.dim();
  }));

  // Groebner batch reductions: enveloping algebra of a capped free quotient.
  {
    AlgebraTable<Rat> E = quick ? catalog_algebra<Rat>("A13+A13")
                                : build_free_quotient<Rat>({"a", "b", "c"}, {2, 2, 2}).algebra;
    track(run("envelope (dim " + std::to_string(E.dim()) + ")", jobs, [&](int j) {
      EnvelopeOptions o;
      o.jobs = j;
      auto R = envelope(E, o);
      return std::pair(R.dim_u, R.special);
    }));
  }

  std::cout << "\n" << (all_match ? "all kernels agree with the serial reference\n"
                                  : "KERNEL MISMATCH — investigate before trusting timings\n");
  return all_match ? 0 : 1;
}
