#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/sequence.hpp"

namespace zsum {

// Structural classification of length-D(G) sequences over C_m + C_{mn}.
enum class SeqType { type_ia, type_ib, type_ii, not_minimal };
const char* seq_type_name(SeqType t);

struct ClassificationResult {
  SeqType verdict = SeqType::not_minimal;
  // Type I: (a, b) = (e1, e2); Type II: (a, b) = (f1, f2).
  int64_t basis_a = 0, basis_b = 0;
  std::vector<int64_t> exponents;  // x_i
  int64_t s = 0, eps = 0;          // type II only
};

// Matches S against the two structural forms, scanning ordered element pairs
// in canonical order with fixed type priority I(a) > I(b) > II.  Returns
// not_minimal when no form matches.
ClassificationResult classify(const Sequence& s, int64_t m, int64_t n);

// Independent per-type matchers (used for overlap reporting).
bool matches_type_ia(const Sequence& s, int64_t m, int64_t n);
bool matches_type_ib(const Sequence& s, int64_t m, int64_t n);
bool matches_type_ii(const Sequence& s, int64_t m, int64_t n);

// Type II parameters for a sequence that admits the type II form, whatever
// the priority verdict was; nullopt when no decomposition exists.
std::optional<ClassificationResult> classify_as_type_ii(const Sequence& s, int64_t m, int64_t n);

struct CensusResult {
  uint64_t total = 0;
  uint64_t count_atoms = 0;  // sequences the classifier accepts
  uint64_t count_ia = 0, count_ib = 0, count_ii = 0;
  std::vector<Sequence> disagreements;      // classifier vs direct atom check
  std::vector<Sequence> overlaps;           // accepted by more than one matcher
  uint64_t support_violations = 0;          // accepted with |supp| < 3
  uint64_t order_violations = 0;            // accepted with a term order not divisible by m
};

// Exhaustive cross-check of classify against the direct minimality test over
// every length-D(G) multiset.  Parallel over the leading term; the merge is
// order-independent.
CensusResult classifier_census(int64_t m, int64_t n, uint64_t budget = 100'000'000,
                               int workers = 0);

struct LemTechResult {
  Sequence t1;
  bool minimal_case = false;
};

// For a type-II classified S and T | S with |T| >= 2m-1: finds T1 | T with
// sigma(T1) = m*f2; when no proper subsequence works, checks T against the
// forced form f1^{m-1} f2^eps prod(-x_i f1 + f2).
LemTechResult lemtech_check(const Sequence& s, const ClassificationResult& cls,
                            const Sequence& t);

}  // namespace zsum
