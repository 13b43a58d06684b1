#pragma once

#include <vector>

#include "zsum/atoms.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Serial brute-force reference implementations. These stay deliberately
// independent of the production code paths (no bitset closures, no pruning,
// no memoization) and are what the test suites and the benchmark compare
// against.
namespace reference {

// Sums of all nonempty submultisets, by direct enumeration.
std::vector<int64_t> subsums_naive(const Sequence& s);

bool is_zero_sum_free_naive(const Sequence& s);

// Definition-level atom check: every proper nonempty submultiset has
// nonzero sum.
bool is_atom_naive(const Sequence& s);

// A(G) as a filter over all multisets of length <= max_len.
std::vector<Sequence> atoms_by_filter(const Group& g, int max_len, uint64_t budget = 100'000'000);

// All factorization lengths of a zero-sum B by unmemoized recursion over
// every atom submultiset.
std::vector<int> length_set_naive(const Sequence& b, const AtomSet& atoms);

// Census loop with no worker partitioning (benchmark baseline).
struct CensusCountsRef {
  uint64_t total = 0;
  uint64_t atoms = 0;
};
CensusCountsRef census_serial(const Group& g, int64_t davenport, uint64_t budget = 100'000'000);

// Smallest m such that some product of m atoms has a factorization of
// length target; enumerates m ascending with a sound parts>=2 length bound.
int lambda_brute(const AtomSet& atoms, int target);

// Exact rho_2 by evaluating max factorization length over all atom pairs.
int64_t rho2_brute_pairs(const AtomSet& atoms);

}  // namespace reference

}  // namespace zsum
