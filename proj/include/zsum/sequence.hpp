#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// Multiset sequence over a group: sorted (element index, multiplicity) pairs.
// Immutable after construction; the sorted term list is the canonical form.
class Sequence {
 public:
  struct Term {
    int32_t elem;
    int32_t mult;
    bool operator==(const Term& o) const { return elem == o.elem && mult == o.mult; }
  };

  explicit Sequence(Group g) : g_(std::move(g)) {}
  Sequence(Group g, std::vector<Term> terms);  // terms need not be sorted/merged

  static Sequence from_indices(const Group& g, const std::vector<int64_t>& elems);
  static Sequence from_elements(const Group& g, const std::vector<Element>& elems);
  static Sequence single(const Group& g, int64_t elem, int32_t mult = 1);

  const Group& group() const { return g_; }
  const std::vector<Term>& terms() const { return terms_; }
  int64_t length() const { return length_; }
  bool empty() const { return terms_.empty(); }

  int32_t multiplicity(int64_t elem) const;
  std::vector<int64_t> support() const;
  std::vector<int64_t> expanded() const;  // nondecreasing list of element indices

  int64_t sigma_i() const;
  Element sigma() const { return g_.element_at(sigma_i()); }

  Sequence negate() const;
  Sequence concat(const Sequence& other) const;
  Sequence remove(const Sequence& sub) const;  // NotASubsequence if sub does not divide
  Sequence add_term(int64_t elem, int32_t mult = 1) const;
  Sequence remove_one(int64_t elem) const;
  bool divides(const Sequence& super) const;  // *this | super

  // Canonical total order: length first, then lexicographic on the expanded
  // index tuple.  Downstream determinism (atom lists, dedup, tie-breaks)
  // relies on this order.
  int compare(const Sequence& o) const;
  bool operator<(const Sequence& o) const { return compare(o) < 0; }
  bool operator==(const Sequence& o) const;
  bool operator!=(const Sequence& o) const { return !(*this == o); }
  size_t hash() const;
  std::string key() const;  // packed canonical form, usable as a memo key

  // Text form: "(1,0)^1 (0,1)^3" with coordinates per the group's rank;
  // empty sequence prints as "". Round-trips bit-exactly.
  std::string to_string() const;
  static Sequence parse(const Group& g, const std::string& text);

 private:
  Group g_;
  std::vector<Term> terms_;
  int64_t length_ = 0;
};

Sequence gcd_seq(const Sequence& a, const Sequence& b);

// Bit-indexed subset of a group, used for subsum closures.
class SubsumBitset {
 public:
  explicit SubsumBitset(const Group& g);

  // S := S + (S + e) + {e}: extends the closure by one copy of term e.
  void add_term(int64_t e);
  // word-level copy from a same-group bitset, no allocation after warmup
  void copy_from(const SubsumBitset& o) { w_.assign(o.w_.begin(), o.w_.end()); }
  bool contains(int64_t e) const { return (w_[e >> 6] >> (e & 63)) & 1; }
  bool contains_zero() const { return w_[0] & 1; }
  void set(int64_t e) { w_[e >> 6] |= uint64_t(1) << (e & 63); }
  int64_t count() const;
  void or_with(const SubsumBitset& o);
  std::vector<int64_t> members() const;

 private:
  Group g_;
  std::vector<uint64_t> w_;
};

struct SubsumSet {
  Group group;
  std::vector<int64_t> members;  // sorted element indices
  bool contains(int64_t e) const;
};

Element sigma(const Sequence& s);
SubsumSet subsums(const Sequence& s);
SubsumBitset subsum_bitset(const Sequence& s);
bool is_zero_sum_free(const Sequence& s);
bool is_zero_sum(const Sequence& s);
bool is_atom(const Sequence& s);

// All multisets of the given length over g, canonical (lexicographic)
// order, filtered through visit; visit returning false stops early.
// Errors with EnumerationTooLarge when the multiset count exceeds budget.
void enumerate_sequences(const Group& g, int length, uint64_t budget,
                         const std::function<bool(const Sequence&)>& visit);
std::vector<Sequence> enumerate_sequences_vec(const Group& g, int length, uint64_t budget);

uint64_t multiset_count(int64_t universe, int length);  // C(universe+length-1, length), saturating

}  // namespace zsum

template <>
struct std::hash<zsum::Sequence> {
  size_t operator()(const zsum::Sequence& s) const { return s.hash(); }
};
