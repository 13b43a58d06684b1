#include "zsum/reference.hpp"

#include <algorithm>
#include <set>

#include "zsum/factorize.hpp"

namespace zsum {
namespace reference {

namespace {

// Visits every nonempty submultiset of s.
void for_each_submultiset(const Sequence& s, const std::function<void(const Sequence&)>& visit) {
  const auto& terms = s.terms();
  std::vector<Sequence::Term> chosen;
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == terms.size()) {
      if (!chosen.empty()) visit(Sequence(s.group(), chosen));
      return;
    }
    for (int32_t c = 0; c <= terms[pos].mult; ++c) {
      if (c > 0) chosen.push_back({terms[pos].elem, c});
      rec(pos + 1);
      if (c > 0) chosen.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<int64_t> subsums_naive(const Sequence& s) {
  std::set<int64_t> sums;
  for_each_submultiset(s, [&](const Sequence& t) { sums.insert(t.sigma_i()); });
  return std::vector<int64_t>(sums.begin(), sums.end());
}

bool is_zero_sum_free_naive(const Sequence& s) {
  auto sums = subsums_naive(s);
  return !std::binary_search(sums.begin(), sums.end(), int64_t(0));
}

bool is_atom_naive(const Sequence& s) {
  if (s.empty() || s.sigma_i() != 0) return false;
  bool minimal = true;
  for_each_submultiset(s, [&](const Sequence& t) {
    if (t.length() < s.length() && t.sigma_i() == 0) minimal = false;
  });
  return minimal;
}

std::vector<Sequence> atoms_by_filter(const Group& g, int max_len, uint64_t budget) {
  std::vector<Sequence> out;
  for (int len = 1; len <= max_len; ++len) {
    enumerate_sequences(g, len, budget, [&](const Sequence& s) {
      if (is_atom_naive(s)) out.push_back(s);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Every factorization exactly once, as a nondecreasing list of atoms.
void factorizations_rec(const Sequence& rest, const AtomSet& atoms, size_t min_atom, int depth,
                        std::set<int>* lengths) {
  if (rest.empty()) {
    lengths->insert(depth);
    return;
  }
  for (size_t i = min_atom; i < atoms.atoms.size(); ++i) {
    const Sequence& a = atoms.atoms[i];
    if (a.length() > rest.length()) break;
    if (!a.divides(rest)) continue;
    factorizations_rec(rest.remove(a), atoms, i, depth + 1, lengths);
  }
}

}  // namespace

std::vector<int> length_set_naive(const Sequence& b, const AtomSet& atoms) {
  if (b.sigma_i() != 0) fail(Errc::not_zero_sum, "length_set_naive needs sigma(B) = 0");
  std::set<int> lengths;
  if (b.empty()) lengths.insert(0);
  factorizations_rec(b, atoms, 0, 0, &lengths);
  return std::vector<int>(lengths.begin(), lengths.end());
}

CensusCountsRef census_serial(const Group& g, int64_t davenport, uint64_t budget) {
  CensusCountsRef out;
  enumerate_sequences(g, static_cast<int>(davenport), budget, [&](const Sequence& s) {
    ++out.total;
    if (is_atom(s)) ++out.atoms;
    return true;
  });
  return out;
}

int lambda_brute(const AtomSet& atoms, int target) {
  if (target < 1) fail(Errc::invalid_input, "target must be >= 1");
  Factorizer fz(atoms, 1u << 20);
  const int n = static_cast<int>(atoms.atoms.size());
  int64_t max_len_atom = atoms.davenport;
  for (int m = 1;; ++m) {
    // A product of m atoms has at most v0 + (|B|-v0)/2 factorization parts,
    // and each atom contributes at most max(1, |U|/2) to that; prune tuples
    // that cannot reach the target even with maximal completions.
    bool found = false;
    std::vector<int> tuple;
    std::function<void(Sequence, int, int64_t, int64_t)> rec =
        [&](Sequence prod, int min_idx, int64_t v0, int64_t rest_len) {
          if (found) return;
          if (static_cast<int>(tuple.size()) == m) {
            if (fz.length_set(prod).contains(target)) found = true;
            return;
          }
          int64_t slots = m - static_cast<int64_t>(tuple.size());
          int64_t opt_v0 = v0 + slots;
          int64_t opt_len = rest_len + slots * max_len_atom;
          if (opt_v0 + (opt_len - opt_v0) / 2 < target) return;
          for (int i = min_idx; i < n && !found; ++i) {
            const Sequence& a = atoms.atoms[i];
            tuple.push_back(i);
            rec(prod.concat(a), i, v0 + a.multiplicity(0), rest_len + a.length());
            tuple.pop_back();
          }
        };
    rec(Sequence(atoms.group), 0, 0, 0);
    if (found) return m;
    if (m > 2 * target) fail(Errc::enumeration_too_large, "lambda_brute runaway");
  }
}

int64_t rho2_brute_pairs(const AtomSet& atoms) {
  Factorizer fz(atoms, 1u << 20);
  int64_t best = 0;
  const size_t n = atoms.atoms.size();
  const bool small_group = atoms.group.order() <= 9;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const Sequence& a = atoms.atoms[i];
      const Sequence& b = atoms.atoms[j];
      // For larger groups, skip pairs whose trivial upper bound cannot win.
      if (!small_group) {
        int64_t v0 = a.multiplicity(0) + b.multiplicity(0);
        int64_t ub = v0 + (a.length() + b.length() - v0) / 2;
        if (ub <= best) continue;
      }
      best = std::max<int64_t>(best, fz.max_len(a.concat(b)));
    }
  }
  return best;
}

}  // namespace reference
}  // namespace zsum
