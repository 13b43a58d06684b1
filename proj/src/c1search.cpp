#include "zsum/c1search.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsum {

namespace {

// Enumerates nonempty proper submultisets of u by size ascending, then by
// expanded lexicographic order; visit returns false to stop.
bool enumerate_splits(const Sequence& u, const std::function<bool(const Sequence&)>& visit) {
  const auto& terms = u.terms();
  const int nt = static_cast<int>(terms.size());
  std::vector<int32_t> take(nt, 0);
  for (int64_t size = 1; size < u.length(); ++size) {
    // take[i] counts copies of terms[i]; lexicographically smallest expanded
    // submultiset first means greedily many copies of the smallest element.
    std::function<bool(int, int64_t)> rec = [&](int pos, int64_t remaining) {
      if (remaining == 0) {
        std::vector<Sequence::Term> st;
        for (int i = 0; i < nt; ++i)
          if (take[i] > 0) st.push_back({terms[i].elem, take[i]});
        return visit(Sequence(u.group(), std::move(st)));
      }
      if (pos == nt) return true;
      int64_t tail = 0;  // capacity of the remaining positions
      for (int i = pos + 1; i < nt; ++i) tail += terms[i].mult;
      int32_t hi = static_cast<int32_t>(std::min<int64_t>(terms[pos].mult, remaining));
      int32_t lo = static_cast<int32_t>(std::max<int64_t>(0, remaining - tail));
      for (int32_t c = hi; c >= lo; --c) {
        take[pos] = c;
        if (!rec(pos + 1, remaining - c)) {
          take[pos] = 0;
          return false;
        }
      }
      take[pos] = 0;
      return true;
    };
    if (!rec(0, size)) return false;
  }
  return true;
}

// The least nonzero element outside Sigma(S1) + Sigma(-S2), or -1 if the
// union covers G minus zero.
int64_t find_missing(const Sequence& s1, const Sequence& s2) {
  const Group& g = s1.group();
  SubsumBitset cover = subsum_bitset(s1);
  SubsumBitset neg2 = subsum_bitset(s2.negate());
  cover.or_with(neg2);
  for (int64_t e = 1; e < g.order(); ++e)
    if (!cover.contains(e)) return e;
  return -1;
}

}  // namespace

C1Result c1_search(const AtomSet& atoms, const C1Options& opts) {
  if (!atoms.complete) fail(Errc::incomplete_atom_set, "c1_search needs the full atom set");
  const Group& g = atoms.group;

  C1Result res;
  res.in_conjecture_scope = g.rank() >= 2 && atoms.davenport >= 4;

  std::vector<Sequence> maximal = atoms.max_length_atoms();
  const int n = static_cast<int>(maximal.size());

  int workers = opts.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  struct Find {
    int atom_idx = -1;
    Sequence s1, s2;
    int64_t missing = -1;
    Find() : s1(Group()), s2(Group()) {}
  };
  std::vector<Find> finds(workers);
  std::atomic<uint64_t> examined{0};
  std::atomic<bool> budget_hit{false};
  // In `first` mode, witnesses at atom indices above this cannot be the
  // canonical least, so workers skip them once anything is found.
  std::atomic<int> found_below{INT32_MAX};

#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
#endif
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
    const int stride = omp_get_num_threads();
#else
    const int tid = 0;
    const int stride = 1;
#endif
    for (int i = tid; i < n; i += stride) {
      if (budget_hit.load(std::memory_order_relaxed)) break;
      if (opts.mode == C1Mode::first && i > found_below.load(std::memory_order_relaxed)) continue;
      if (finds[tid].atom_idx >= 0 && opts.mode == C1Mode::first) break;
      const Sequence& u = maximal[i];
      enumerate_splits(u, [&](const Sequence& s1) {
        if (examined.fetch_add(1, std::memory_order_relaxed) + 1 > opts.budget) {
          budget_hit.store(true, std::memory_order_relaxed);
          return false;
        }
        Sequence s2 = u.remove(s1);
        int64_t missing = find_missing(s1, s2);
        if (missing < 0) return true;
        if (finds[tid].atom_idx >= 0) return true;  // keep the earliest find
        finds[tid].atom_idx = i;
        finds[tid].s1 = s1;
        finds[tid].s2 = s2;
        finds[tid].missing = missing;
        if (opts.mode == C1Mode::first) {
          int cur = found_below.load(std::memory_order_relaxed);
          while (i < cur && !found_below.compare_exchange_weak(cur, i)) {
          }
        }
        return false;  // first witness within this atom is the canonical one
      });
    }
  }

  res.splits_examined = examined.load();
  if (budget_hit.load())
    fail(Errc::search_budget_exceeded,
         "split budget " + std::to_string(opts.budget) + " exceeded");

  // Deterministic reduction: least atom index wins (each worker records the
  // canonically first witness of its index class).
  const Find* best = nullptr;
  for (const Find& f : finds) {
    if (f.atom_idx < 0) continue;
    if (!best || f.atom_idx < best->atom_idx) best = &f;
  }
  res.exhausted = best == nullptr || opts.mode == C1Mode::exhaustive;
  if (best) {
    C1Witness w{maximal[best->atom_idx], best->s1, best->s2, g.element_at(best->missing)};
    // Validate against freshly computed subsum sets, independent of the
    // search-time incremental state.
    if (w.S1.concat(w.S2) != w.U || !is_atom(w.U) ||
        subsum_bitset(w.S1).contains(w.missing.index()) ||
        subsum_bitset(w.S2).contains(g.neg_i(w.missing.index())) || w.missing.index() == 0)
      fail(Errc::invalid_c1_witness, "search produced an invalid witness");
    res.witness = std::move(w);
  }
  return res;
}

WitnessReport c1_to_rho3(const C1Witness& witness, int64_t davenport) {
  return prop32_construction(witness.U, witness.S1, witness.S2, witness.missing, davenport);
}

}  // namespace zsum
