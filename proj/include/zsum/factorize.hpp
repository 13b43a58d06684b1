#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "zsum/atoms.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Product identity between two atom lists with a part assignment:
// right[i] = prod_j parts[i][j] and prod_i parts[i][j] = left[j].
struct Certificate {
  Group group;
  std::vector<Sequence> left;
  std::vector<Sequence> right;
  std::vector<std::vector<Sequence>> parts;  // right-major: parts[i][j] divides left[j]
};

// Throws InvalidCertificate naming the first failing check.
void verify_certificate(const Certificate& cert);

struct Spread {
  int64_t count1 = 0, count2 = 0, count3 = 0;  // multiplicities of part-counts 1,2,3
  int64_t traversal_count() const { return count3; }
  bool support_is_doubles_only() const { return count1 == 0 && count3 == 0 && count2 > 0; }
  std::string to_string() const;
};

// Requires a 3-atom left side; validates the 1/2/3 trichotomy.
Spread spread_of(const Certificate& cert);
bool is_weakly_reduced(const Certificate& cert);

struct LengthSet {
  std::vector<int> lengths;  // sorted ascending
  int min() const { return lengths.front(); }
  int max() const { return lengths.back(); }
  bool contains(int k) const;
};

enum class BoundKind { exact, lower_bound, upper_bound };
const char* bound_kind_name(BoundKind k);

struct RhoResult {
  int k = 0;
  int64_t value = 0;
  BoundKind kind = BoundKind::exact;
  std::optional<Certificate> certificate;
  bool search_exhausted = false;
};

// Memoized factorization-length engine over a complete atom set.  Keeps an
// LRU-bounded cache keyed by the canonical form of the remaining sequence.
class Factorizer {
 public:
  explicit Factorizer(const AtomSet& atoms, size_t memo_cap = 2'000'000);

  const AtomSet& atoms() const { return *atoms_; }

  LengthSet length_set(const Sequence& b);   // NotZeroSum / IncompleteAtomSet on bad input
  int max_len(const Sequence& b);
  int min_len(const Sequence& b);

  // The atoms of one factorization attaining max_len, deterministic
  // (first maximal choice in canonical atom order at every step).
  std::vector<Sequence> max_len_factorization(const Sequence& b);

  uint64_t states() const { return states_; }

 private:
  uint64_t mask_of(const Sequence& b, int depth);
  const AtomSet* atoms_;
  // atom indices bucketed by minimum support element
  std::vector<std::vector<int>> by_min_elem_;
  size_t memo_cap_;
  uint64_t states_ = 0;
  std::unordered_map<std::string, uint64_t> memo_;
  std::list<std::string> lru_;
  std::unordered_map<std::string, std::list<std::string>::iterator> lru_pos_;
};

struct Rho3Options {
  uint64_t triple_budget = UINT64_MAX;  // evaluated triples before falling back to lower_bound
  int workers = 0;
  size_t memo_cap = 2'000'000;
  // Restrict the outer atom to orbit representatives under negation and
  // coordinate permutations.  Sound only for homocyclic groups C_n^r, and
  // ignored elsewhere; off by default.
  bool use_symmetry = false;
};

// rho_{2k}(G) = k*D(G) with the standard doubles certificate.
RhoResult rho_even(const AtomSet& atoms, int k);

// Exact rho_3 by exhaustive search over unordered triples of 0-free atoms,
// pruned by sound upper bounds; the degenerate triples containing the zero
// atom reach at most D(G)+1 and are folded in analytically.
RhoResult rho3_exact(const AtomSet& atoms, const Rho3Options& opts = {});

// Bounds for rho_{2k+1}: lower from 1+kD and from propagating certified
// odd lower bounds, upper kD + floor(D/2).
struct OddBound {
  int k;          // the bound certifies rho_{2k+1} >= value
  int64_t value;
};
std::pair<RhoResult, RhoResult> rho_odd_bounds(const Group& g, int k, int64_t davenport,
                                               const std::vector<OddBound>& known = {});

// The cased lambda formula; rho_oracle(k) must return an exact rho_{2k+1}.
int64_t lambda_formula(const Group& g, int64_t target, int64_t davenport,
                       const std::function<RhoResult(int)>& rho_oracle);

// Exact U_k as an explicit set, by enumerating unordered k-tuples of atoms.
std::vector<int> u_k_exact(const AtomSet& atoms, int k, uint64_t budget = 100'000'000);

// --- certificate builders shared with module constructions ---

struct TaggedTerm {
  int64_t elem;
  int left;  // index of the left atom this copy came from
};

// Assembles a certificate whose right side is the given explicit atoms
// (parts spelled out term by term) followed by an automatic perfect pairing
// of the pool into length-2 atoms g(-g).  Every pooled copy is tagged with
// its left atom, so column products reconstruct the left side exactly.
Certificate assemble_certificate(const Group& g, std::vector<Sequence> left,
                                 const std::vector<std::vector<TaggedTerm>>& explicit_rights,
                                 std::vector<TaggedTerm> pool);

// Greedy per-element transportation fill; valid for any true product identity.
Certificate certificate_from_factorization(const Group& g, std::vector<Sequence> left,
                                           std::vector<Sequence> right);

}  // namespace zsum
