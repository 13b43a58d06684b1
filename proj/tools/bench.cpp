// Benchmark: OpenMP kernels against their serial reference implementations.
//
//   zsum-bench [--group SPEC] [--census-group SPEC] [--threads N]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zsum/c1search.hpp"
#include "zsum/factorize.hpp"
#include "zsum/rank2.hpp"
#include "zsum/reference.hpp"

using namespace zsum;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void print_row(const char* kernel, double serial_ms, double parallel_ms, const char* note) {
  std::printf("%-28s %12.1f %12.1f %8.2fx  %s\n", kernel, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, note);
}

}  // namespace

int main(int argc, char** argv) {
  std::string group_spec = "3,6";
  std::string census_spec = "2,3";  // (m,n) for the census kernel
  int threads = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--group") && i + 1 < argc) group_spec = argv[++i];
    if (!std::strcmp(argv[i], "--census") && i + 1 < argc) census_spec = argv[++i];
    if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
  }
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif

  Group g = parse_group_spec(group_spec);
  std::printf("group %s (order %lld), %d worker thread(s)\n\n", g.spec_string().c_str(),
              static_cast<long long>(g.order()), threads);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  // Atom enumeration: DFS kernel at 1 vs N workers, plus the brute filter
  // reference for scale.
  AtomSet serial_atoms, parallel_atoms;
  double a1 = time_ms([&] { serial_atoms = enumerate_atoms(g, {.workers = 1}); });
  double aN = time_ms([&] { parallel_atoms = enumerate_atoms(g, {.workers = threads}); });
  bool same = serial_atoms.atoms == parallel_atoms.atoms;
  print_row("atom enumeration", a1, aN, same ? "identical output" : "OUTPUT MISMATCH");

  Group small = parse_group_spec("2,4");
  AtomSet small_atoms = enumerate_atoms(small);
  double ref = time_ms([&] {
    auto brute = reference::atoms_by_filter(small, static_cast<int>(small_atoms.davenport));
    if (brute.size() != small_atoms.atoms.size()) std::puts("BRUTE MISMATCH");
  });
  double dfs = time_ms([&] { enumerate_atoms(small, {.workers = 1}); });
  print_row("atoms vs brute filter (2,4)", ref, dfs, "reference = naive filter");

  // Census kernel at 1 vs N workers; the serial reference loop provides the
  // correctness cross-check.
  int64_t m = 2, n = 3;
  if (std::sscanf(census_spec.c_str(), "%lld,%lld", (long long*)&m, (long long*)&n) != 2) {
    std::fprintf(stderr, "bad --census M,N\n");
    return 64;
  }
  Group cg = make_group({m, m * n});
  AtomSet census_atoms = enumerate_atoms(cg);
  uint64_t oracle_atoms = reference::census_serial(cg, census_atoms.davenport).atoms;
  CensusResult cres;
  double c1 = time_ms([&] { classifier_census(m, n, 100'000'000, 1); });
  double cN = time_ms([&] { cres = classifier_census(m, n, 100'000'000, threads); });
  print_row("classifier census", c1, cN,
            cres.count_atoms == oracle_atoms && cres.disagreements.empty()
                ? "counts agree with serial reference"
                : "COUNT MISMATCH");

  // rho_3 triple search at 1 vs N workers.
  RhoResult r1, rN;
  double t1 = time_ms([&] { r1 = rho3_exact(parallel_atoms, {.workers = 1}); });
  double tN = time_ms([&] { rN = rho3_exact(parallel_atoms, {.workers = threads}); });
  print_row("rho_3 triple search", t1, tN,
            r1.value == rN.value ? "identical value" : "VALUE MISMATCH");

  // Split-witness search at 1 vs N workers.
  C1Result s1, sN;
  double w1 = time_ms([&] {
    s1 = c1_search(parallel_atoms, {.mode = C1Mode::exhaustive, .workers = 1});
  });
  double wN = time_ms([&] {
    sN = c1_search(parallel_atoms, {.mode = C1Mode::exhaustive, .workers = threads});
  });
  bool agree = s1.witness.has_value() == sN.witness.has_value() &&
               (!s1.witness || (s1.witness->U == sN.witness->U && s1.witness->S1 == sN.witness->S1));
  print_row("split-witness search", w1, wN, agree ? "identical witness" : "WITNESS MISMATCH");

  return 0;
}
