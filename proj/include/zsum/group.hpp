#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

// Finite abelian group in invariant-factor form n1 | n2 | ... | nr.
//
// An element with coordinates (a1,...,ar), 0 <= ai < ni, is identified with
// its mixed-radix index a1*(n2*...*nr) + a2*(n3*...*nr) + ... + ar, so index
// order coincides with coordinate-lexicographic order.  That total order is
// part of the public contract: canonical sequence forms, dedup sets and
// tie-breaking all derive from it.
struct GroupData {
  std::vector<int64_t> factors;  // ascending divisibility chain, each >= 2
  std::vector<int64_t> strides;  // strides[i] = product of factors[i+1..]
  int64_t order = 1;
  // Full addition/negation tables, built eagerly for small groups so the
  // subsum-closure inner loop is a plain table lookup.
  std::vector<int32_t> add_table;
  std::vector<int32_t> neg_table;
  bool has_tables = false;
};

class Group;

class Element {
 public:
  Element() = default;
  Element(std::shared_ptr<const GroupData> d, int64_t index) : d_(std::move(d)), index_(index) {}

  int64_t index() const { return index_; }
  std::vector<int64_t> coords() const;
  Group group() const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const;  // lexicographic element order

 private:
  friend class Group;
  std::shared_ptr<const GroupData> d_;
  int64_t index_ = 0;
};

class Group {
 public:
  Group() = default;  // trivial group

  int rank() const { return static_cast<int>(data().factors.size()); }
  int64_t order() const { return data().order; }
  int64_t exponent() const { return data().factors.empty() ? 1 : data().factors.back(); }
  const std::vector<int64_t>& factors() const { return data().factors; }

  bool same_as(const Group& o) const;

  // --- index-level arithmetic (hot paths) ---
  int64_t add_i(int64_t a, int64_t b) const;
  int64_t neg_i(int64_t a) const;
  int64_t sub_i(int64_t a, int64_t b) const { return add_i(a, neg_i(b)); }
  int64_t smul_i(int64_t k, int64_t a) const;  // k*a, any integer k
  int64_t order_of_i(int64_t a) const;
  // Row of the addition table for fixed g (nullptr when tables were not built).
  const int32_t* add_row(int64_t g) const {
    return data().has_tables ? data().add_table.data() + g * data().order : nullptr;
  }

  std::vector<int64_t> coords_of(int64_t index) const;
  int64_t index_of(const std::vector<int64_t>& coords) const;

  // --- element-level API ---
  Element zero() const { return Element(d_ptr(), 0); }
  Element element(const std::vector<int64_t>& coords) const { return Element(d_ptr(), index_of(coords)); }
  Element element_at(int64_t index) const;
  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element smul(int64_t k, const Element& a) const;
  int64_t order_of(const Element& a) const;
  std::vector<Element> canonical_basis() const;  // unit vectors e_i, ord(e_i) = n_i
  std::vector<Element> all_elements() const;     // lexicographic enumeration

  int64_t d_star() const;                 // sum of (n_i - 1)
  int64_t big_d_star() const { return d_star() + 1; }

  // Group spec string: comma separated moduli, normalized form, e.g. "2,4".
  std::string spec_string() const;

  std::shared_ptr<const GroupData> d_ptr() const;

 private:
  friend Group make_group(const std::vector<int64_t>&);
  friend class Element;
  explicit Group(std::shared_ptr<const GroupData> d) : d_(std::move(d)) {}
  const GroupData& data() const;
  std::shared_ptr<const GroupData> d_;
};

// Builds the invariant-factor form of C_{m1} + ... + C_{mk} for the given
// moduli (prime-power regrouping; empty list gives the trivial group).
// Idempotent on already-normalized input.
Group make_group(const std::vector<int64_t>& moduli);

Group parse_group_spec(const std::string& spec);

void require_same_group(const Group& a, const Group& b, const char* where);

}  // namespace zsum
