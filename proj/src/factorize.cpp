#include "zsum/factorize.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsum {

namespace {

// Hard cap so factorization-length sets fit in a 64-bit mask.
void check_length_budget(const Sequence& b) {
  int64_t v0 = b.multiplicity(0);
  int64_t cap = v0 + (b.length() - v0) / 2;
  if (cap > 63)
    fail(Errc::enumeration_too_large,
         "factorization length bound " + std::to_string(cap) + " exceeds the 64-bit mask");
}

Sequence product_of(const Group& g, const std::vector<Sequence>& seqs) {
  Sequence acc(g);
  for (const Sequence& s : seqs) acc = acc.concat(s);
  return acc;
}

using Counts = std::vector<Sequence::Term>;

void merge_counts(Counts& dst, const Counts& a, const Counts& b) {
  dst.clear();
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].elem < b[j].elem))
      dst.push_back(a[i++]);
    else if (i == a.size() || b[j].elem < a[i].elem)
      dst.push_back(b[j++]);
    else {
      dst.push_back({a[i].elem, a[i].mult + b[j].mult});
      ++i;
      ++j;
    }
  }
}

int32_t count_of(const Counts& c, int64_t elem) {
  auto it = std::lower_bound(c.begin(), c.end(), elem,
                             [](const Sequence::Term& t, int64_t e) { return t.elem < e; });
  return it != c.end() && it->elem == elem ? it->mult : 0;
}

int64_t inverse_pair_bound_counts(const Group& g, const Counts& c) {
  int64_t pairs = 0;
  for (const auto& t : c) {
    int64_t ne = g.neg_i(t.elem);
    if (t.elem < ne)
      pairs += std::min<int64_t>(t.mult, count_of(c, ne));
    else if (t.elem == ne)
      pairs += t.mult / 2;
  }
  return pairs;
}

}  // namespace

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower_bound: return "lower_bound";
    case BoundKind::upper_bound: return "upper_bound";
  }
  return "?";
}

bool LengthSet::contains(int k) const {
  return std::binary_search(lengths.begin(), lengths.end(), k);
}

std::string Spread::to_string() const {
  std::ostringstream os;
  os << "1^" << count1 << " 2^" << count2 << " 3^" << count3;
  return os.str();
}

void verify_certificate(const Certificate& cert) {
  const Group& g = cert.group;
  auto bad = [](const std::string& what) { fail(Errc::invalid_certificate, what); };
  if (cert.left.empty()) bad("no left atoms");
  for (size_t j = 0; j < cert.left.size(); ++j) {
    require_same_group(cert.left[j].group(), g, "certificate left atom group");
    if (!is_atom(cert.left[j])) bad("left[" + std::to_string(j) + "] is not an atom");
  }
  for (size_t i = 0; i < cert.right.size(); ++i) {
    require_same_group(cert.right[i].group(), g, "certificate right atom group");
    if (!is_atom(cert.right[i])) bad("right[" + std::to_string(i) + "] is not an atom");
  }
  if (product_of(g, cert.left) != product_of(g, cert.right))
    bad("product identity fails: left and right multisets differ");
  if (cert.parts.size() != cert.right.size()) bad("assignment row count != right count");
  for (size_t i = 0; i < cert.parts.size(); ++i) {
    if (cert.parts[i].size() != cert.left.size())
      bad("assignment row " + std::to_string(i) + " column count != left count");
    if (product_of(g, cert.parts[i]) != cert.right[i])
      bad("assignment row " + std::to_string(i) + " does not multiply to right[" +
          std::to_string(i) + "]");
  }
  for (size_t j = 0; j < cert.left.size(); ++j) {
    std::vector<Sequence> col;
    for (size_t i = 0; i < cert.parts.size(); ++i) col.push_back(cert.parts[i][j]);
    if (product_of(g, col) != cert.left[j])
      bad("assignment column " + std::to_string(j) + " does not multiply to left[" +
          std::to_string(j) + "]");
  }
}

Spread spread_of(const Certificate& cert) {
  if (cert.left.size() != 3)
    fail(Errc::invalid_certificate, "spread requires exactly 3 left atoms");
  Spread sp;
  for (size_t i = 0; i < cert.parts.size(); ++i) {
    int nonempty = 0;
    for (const Sequence& part : cert.parts[i])
      if (!part.empty()) ++nonempty;
    switch (nonempty) {
      case 1: ++sp.count1; break;
      case 2: ++sp.count2; break;
      case 3: ++sp.count3; break;
      default:
        fail(Errc::invalid_certificate,
             "right[" + std::to_string(i) + "] touches " + std::to_string(nonempty) + " left atoms");
    }
  }
  if (sp.count1 > 0 && sp.count3 > 0)
    fail(Errc::invalid_certificate, "spread contains both 1 and 3");
  return sp;
}

bool is_weakly_reduced(const Certificate& cert) {
  for (const auto& row : cert.parts)
    for (const Sequence& part : row)
      if (part.length() > 1) return false;
  return true;
}

Factorizer::Factorizer(const AtomSet& atoms, size_t memo_cap)
    : atoms_(&atoms), memo_cap_(memo_cap) {
  if (!atoms.complete) fail(Errc::incomplete_atom_set, "factorization needs a complete atom set");
  by_min_elem_.resize(atoms.group.order());
  for (size_t i = 0; i < atoms.atoms.size(); ++i) {
    const Sequence& a = atoms.atoms[i];
    by_min_elem_[a.terms().front().elem].push_back(static_cast<int>(i));
  }
}

uint64_t Factorizer::mask_of(const Sequence& b, int depth) {
  if (b.empty()) return 1;  // only the empty factorization, length 0
  std::string key = b.key();
  auto hit = memo_.find(key);
  if (hit != memo_.end()) {
    auto pos = lru_pos_.find(key);
    lru_.splice(lru_.begin(), lru_, pos->second);
    return hit->second;
  }
  uint64_t mask = 0;
  // Every factorization contains an atom through the least element of b, so
  // recursing over exactly those atoms is complete.
  int64_t least = b.terms().front().elem;
  for (int idx : by_min_elem_[least]) {
    const Sequence& atom = atoms_->atoms[idx];
    if (atom.length() > b.length()) break;  // buckets are length-sorted
    if (!atom.divides(b)) continue;
    mask |= mask_of(b.remove(atom), depth + 1) << 1;
  }
  ++states_;
  memo_.emplace(key, mask);
  lru_.push_front(key);
  lru_pos_.emplace(key, lru_.begin());
  if (memo_.size() > memo_cap_) {
    const std::string& victim = lru_.back();
    memo_.erase(victim);
    lru_pos_.erase(victim);
    lru_.pop_back();
  }
  return mask;
}

LengthSet Factorizer::length_set(const Sequence& b) {
  require_same_group(b.group(), atoms_->group, "length_set");
  if (b.sigma_i() != 0) fail(Errc::not_zero_sum, "length_set requires sigma(B) = 0");
  check_length_budget(b);
  uint64_t mask = mask_of(b, 0);
  LengthSet out;
  for (int i = 0; i < 64; ++i)
    if ((mask >> i) & 1) out.lengths.push_back(i);
  if (out.lengths.empty())
    fail(Errc::incomplete_atom_set, "no factorization found for a zero-sum sequence");
  return out;
}

int Factorizer::max_len(const Sequence& b) { return length_set(b).max(); }
int Factorizer::min_len(const Sequence& b) { return length_set(b).min(); }

std::vector<Sequence> Factorizer::max_len_factorization(const Sequence& b) {
  std::vector<Sequence> out;
  Sequence rest = b;
  while (!rest.empty()) {
    int target = max_len(rest);
    int64_t least = rest.terms().front().elem;
    bool advanced = false;
    for (int idx : by_min_elem_[least]) {
      const Sequence& atom = atoms_->atoms[idx];
      if (atom.length() > rest.length()) break;
      if (!atom.divides(rest)) continue;
      Sequence next = rest.remove(atom);
      if ((next.empty() ? 0 : max_len(next)) + 1 == target) {
        out.push_back(atom);
        rest = std::move(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) fail(Errc::incomplete_atom_set, "factorization reconstruction stuck");
  }
  return out;
}

Certificate certificate_from_factorization(const Group& g, std::vector<Sequence> left,
                                           std::vector<Sequence> right) {
  // Transportation fill, independently per element value: any greedy
  // assignment satisfies both product identities.
  std::vector<std::map<int64_t, int32_t>> remaining(left.size());
  for (size_t j = 0; j < left.size(); ++j)
    for (const auto& t : left[j].terms()) remaining[j][t.elem] = t.mult;
  Certificate cert{g, std::move(left), {}, {}};
  for (Sequence& w : right) {
    std::vector<std::vector<Sequence::Term>> row(cert.left.size());
    for (const auto& t : w.terms()) {
      int32_t need = t.mult;
      for (size_t j = 0; j < cert.left.size() && need > 0; ++j) {
        auto it = remaining[j].find(t.elem);
        if (it == remaining[j].end() || it->second == 0) continue;
        int32_t take = std::min(need, it->second);
        row[j].push_back({t.elem, take});
        it->second -= take;
        need -= take;
      }
      if (need > 0)
        fail(Errc::invalid_certificate, "right side is not a rearrangement of the left side");
    }
    std::vector<Sequence> parts;
    for (size_t j = 0; j < cert.left.size(); ++j) parts.emplace_back(g, std::move(row[j]));
    cert.right.push_back(std::move(w));
    cert.parts.push_back(std::move(parts));
  }
  for (const auto& rem : remaining)
    for (const auto& [e, m] : rem)
      if (m != 0) fail(Errc::invalid_certificate, "left side has terms unused by the right side");
  return cert;
}

Certificate assemble_certificate(const Group& g, std::vector<Sequence> left,
                                 const std::vector<std::vector<TaggedTerm>>& explicit_rights,
                                 std::vector<TaggedTerm> pool) {
  Certificate cert{g, std::move(left), {}, {}};
  auto push_right = [&](const std::vector<TaggedTerm>& terms) {
    std::vector<std::vector<Sequence::Term>> row(cert.left.size());
    std::vector<Sequence::Term> whole;
    for (const TaggedTerm& t : terms) {
      row[t.left].push_back({static_cast<int32_t>(t.elem), 1});
      whole.push_back({static_cast<int32_t>(t.elem), 1});
    }
    cert.right.emplace_back(g, std::move(whole));
    std::vector<Sequence> parts;
    for (size_t j = 0; j < cert.left.size(); ++j) parts.emplace_back(g, std::move(row[j]));
    cert.parts.push_back(std::move(parts));
  };
  for (const auto& r : explicit_rights) push_right(r);

  std::map<int64_t, std::vector<int>> tags;  // element -> source left indices
  for (const TaggedTerm& t : pool) tags[t.elem].push_back(t.left);
  for (auto& [e, v] : tags) std::sort(v.begin(), v.end());
  for (auto& [e, v] : tags) {
    if (e == 0) fail(Errc::invalid_certificate, "zero term in a doubles pool");
    int64_t ne = cert.group.neg_i(e);
    if (e > ne) continue;
    if (e == ne) {
      if (v.size() % 2)
        fail(Errc::invalid_certificate, "unpairable 2-torsion term in doubles pool");
      for (size_t i = 0; i < v.size(); i += 2)
        push_right({{e, v[i]}, {e, v[i + 1]}});
    } else {
      auto it = tags.find(ne);
      size_t have = it == tags.end() ? 0 : it->second.size();
      if (have != v.size())
        fail(Errc::invalid_certificate, "doubles pool is not inverse-symmetric");
      for (size_t i = 0; i < v.size(); ++i)
        push_right({{e, v[i]}, {ne, it->second[i]}});
    }
  }
  return cert;
}

RhoResult rho_even(const AtomSet& atoms, int k) {
  if (k < 1) fail(Errc::invalid_input, "k must be >= 1");
  if (atoms.group.order() < 2)
    fail(Errc::not_applicable, "rho_{2k} = kD needs a nontrivial group");
  if (!atoms.complete) fail(Errc::incomplete_atom_set, "rho_even needs the full atom set");
  const Group& g = atoms.group;
  Sequence u = atoms.max_length_atoms().front();
  Sequence nu = u.negate();
  std::vector<Sequence> left;
  std::vector<TaggedTerm> pool;
  for (int c = 0; c < k; ++c) left.push_back(nu);
  for (int c = 0; c < k; ++c) left.push_back(u);
  for (size_t j = 0; j < left.size(); ++j)
    for (int64_t e : left[j].expanded()) pool.push_back({e, static_cast<int>(j)});
  Certificate cert = assemble_certificate(g, left, {}, std::move(pool));
  verify_certificate(cert);
  RhoResult res;
  res.k = 2 * k;
  res.value = static_cast<int64_t>(k) * atoms.davenport;
  res.kind = BoundKind::exact;
  if (static_cast<int64_t>(cert.right.size()) != res.value)
    fail(Errc::invalid_certificate, "doubles certificate count != k*D");
  res.certificate = std::move(cert);
  res.search_exhausted = true;
  return res;
}

RhoResult rho3_exact(const AtomSet& atoms, const Rho3Options& opts) {
  if (!atoms.complete) fail(Errc::incomplete_atom_set, "rho3_exact needs the full atom set");
  const Group& g = atoms.group;
  RhoResult res;
  res.k = 3;

  if (g.order() == 1) {
    Sequence z = Sequence::single(g, 0);
    std::vector<Sequence> three{z, z, z};
    res.value = 3;
    res.kind = BoundKind::exact;
    res.certificate = certificate_from_factorization(g, three, three);
    res.search_exhausted = true;
    return res;
  }

  const int64_t dav = atoms.davenport;

  // Only the zero atom has 0 in its support, and triples through it reach at
  // most D+1; the (U, -U, U) triple below reaches D+1 without it, so the
  // search may range over 0-free triples only.
  std::vector<int> order;  // indices into atoms.atoms, 0-free, length-descending
  for (size_t i = 0; i < atoms.atoms.size(); ++i)
    if (atoms.atoms[i].multiplicity(0) == 0) order.push_back(static_cast<int>(i));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (atoms.atoms[a].length() != atoms.atoms[b].length())
      return atoms.atoms[a].length() > atoms.atoms[b].length();
    return a < b;
  });
  const int n = static_cast<int>(order.size());
  auto len = [&](int t) { return atoms.atoms[order[t]].length(); };

  // Orbit representatives under negation and coordinate permutation; these
  // automorphisms preserve factorization structure, so every unordered
  // triple has an image whose members include a representative.  The outer
  // atom may then range over representatives only, with the middle index
  // released to the full list.  Homocyclic groups only.
  bool homocyclic = g.rank() >= 2;
  for (int64_t f : g.factors()) homocyclic &= (f == g.factors().front());
  const bool use_sym = opts.use_symmetry && homocyclic;
  std::vector<char> is_rep(n, 1);
  if (use_sym) {
    std::vector<int> perm(g.rank());
    for (int r = 0; r < g.rank(); ++r) perm[r] = r;
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto transform = [&](const Sequence& s, const std::vector<int>& p, bool negate) {
      std::vector<Sequence::Term> terms;
      for (const auto& t : s.terms()) {
        auto c = g.coords_of(t.elem);
        std::vector<int64_t> pc(c.size());
        for (size_t r = 0; r < c.size(); ++r) pc[p[r]] = c[r];
        int64_t e = g.index_of(pc);
        terms.push_back({static_cast<int32_t>(negate ? g.neg_i(e) : e), t.mult});
      }
      return Sequence(g, std::move(terms));
    };
    for (int t = 0; t < n; ++t) {
      const Sequence& s = atoms.atoms[order[t]];
      for (const auto& p : perms) {
        for (bool negate : {false, true}) {
          if (transform(s, p, negate) < s) {
            is_rep[t] = 0;
            break;
          }
        }
        if (!is_rep[t]) break;
      }
    }
  }

  const int64_t seed_value = dav + 1;

  int workers = opts.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  // The middle loop is filtered in deterministic chunks: workers apply the
  // sound upper-bound filter against the chunk-start best, and the few
  // surviving triples are evaluated serially, in canonical order, against a
  // single shared memo.  The first triple attaining the final maximum is
  // therefore never filtered away, and both the value and the certificate
  // are independent of the worker count.
  Factorizer fz(atoms, opts.memo_cap);
  uint64_t evaluated = 0;
  bool aborted = false;
  int64_t best = seed_value;
  std::array<int, 3> arg{-1, -1, -1};  // -1 = seed certificate

  std::vector<std::vector<int>> survivors;  // per row in the current chunk
  Counts ijk;
  for (int i = 0; i < n && !aborted; ++i) {
    // anchored triples may pair i with longer atoms, hence len(0) here
    int64_t wave_cap = use_sym ? (len(i) + 2 * len(0)) / 2 : 3 * len(i) / 2;
    if (wave_cap <= best) break;  // lengths only shrink from here on
    if (use_sym && !is_rep[i]) continue;
    const Sequence& ai = atoms.atoms[order[i]];
    int chunk = std::max(4, workers);
    const int jstart = use_sym ? 0 : i;  // with symmetry the triple is anchored, not sorted
    for (int row0 = jstart; row0 < n && !aborted; row0 += chunk, chunk *= 4) {
      const int row1 = std::min(n, row0 + chunk);
      const int64_t best_snapshot = best;
      if ((len(i) + 2 * len(row0)) / 2 <= best_snapshot) break;  // rows only shrink
      survivors.assign(row1 - row0, {});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
      for (int j = row0; j < row1; ++j) {
        if ((len(i) + 2 * len(j)) / 2 <= best_snapshot) continue;
        Counts ij, col;
        merge_counts(ij, ai.terms(), atoms.atoms[order[j]].terms());
        std::vector<int>& out = survivors[j - row0];
        for (int k = j; k < n; ++k) {
          int64_t total = len(i) + len(j) + len(k);
          if (total / 2 <= best_snapshot) break;
          merge_counts(col, ij, atoms.atoms[order[k]].terms());
          int64_t ub = std::min(total / 2, (total + inverse_pair_bound_counts(g, col)) / 3);
          if (ub > best_snapshot) out.push_back(k);
        }
      }
      for (int j = row0; j < row1 && !aborted; ++j) {
        const Sequence& aj = atoms.atoms[order[j]];
        Counts ij;
        merge_counts(ij, ai.terms(), aj.terms());
        for (int k : survivors[j - row0]) {
          int64_t total = len(i) + len(j) + len(k);
          merge_counts(ijk, ij, atoms.atoms[order[k]].terms());
          int64_t ub = std::min(total / 2, (total + inverse_pair_bound_counts(g, ijk)) / 3);
          if (ub <= best) continue;  // re-check against the live best
          if (++evaluated > opts.triple_budget) {
            aborted = true;
            break;
          }
          int64_t v = fz.max_len(Sequence(g, ijk));
          if (v > best) {
            best = v;
            arg = {i, j, k};
          }
        }
      }
    }
  }

  res.value = best;
  res.kind = aborted ? BoundKind::lower_bound : BoundKind::exact;
  res.search_exhausted = !aborted;

  if (arg[0] < 0) {
    // Seed certificate: U * (-U) * U = U * (product of D inverse pairs).
    Sequence u = atoms.max_length_atoms().front();
    Sequence nu = u.negate();
    std::vector<Sequence> left{u, nu, u};
    std::vector<TaggedTerm> pool;
    for (int64_t e : u.expanded()) pool.push_back({e, 0});
    for (int64_t e : nu.expanded()) pool.push_back({e, 1});
    std::vector<std::vector<TaggedTerm>> expl(1);
    for (int64_t e : u.expanded()) expl[0].push_back({e, 2});
    Certificate cert = assemble_certificate(g, left, expl, std::move(pool));
    verify_certificate(cert);
    res.certificate = std::move(cert);
  } else {
    // fz still holds the warm memo from the search
    std::vector<Sequence> left{atoms.atoms[order[arg[0]]], atoms.atoms[order[arg[1]]],
                               atoms.atoms[order[arg[2]]]};
    Sequence b = left[0].concat(left[1]).concat(left[2]);
    std::vector<Sequence> right = fz.max_len_factorization(b);
    if (static_cast<int64_t>(right.size()) != best)
      fail(Errc::invalid_certificate, "max factorization does not attain the searched value");
    Certificate cert = certificate_from_factorization(g, std::move(left), std::move(right));
    verify_certificate(cert);
    res.certificate = std::move(cert);
  }
  return res;
}

std::pair<RhoResult, RhoResult> rho_odd_bounds(const Group& g, int k, int64_t davenport,
                                               const std::vector<OddBound>& known) {
  if (k < 1) fail(Errc::invalid_input, "k must be >= 1");
  if (g.order() < 3) fail(Errc::not_applicable, "odd rho bounds need |G| >= 3");
  int64_t lower = 1 + k * davenport;
  for (const OddBound& kb : known) {
    if (kb.k > k) continue;
    lower = std::max(lower, kb.value + (k - kb.k) * davenport);
  }
  int64_t upper = k * davenport + davenport / 2;
  RhoResult lo{2 * k + 1, lower, lower == upper ? BoundKind::exact : BoundKind::lower_bound,
               std::nullopt, false};
  RhoResult hi{2 * k + 1, upper, lower == upper ? BoundKind::exact : BoundKind::upper_bound,
               std::nullopt, false};
  return {lo, hi};
}

int64_t lambda_formula(const Group& g, int64_t target, int64_t davenport,
                       const std::function<RhoResult(int)>& rho_oracle) {
  if (g.order() < 3) fail(Errc::not_applicable, "lambda formula needs |G| >= 3");
  if (target < 1) fail(Errc::invalid_input, "target must be >= 1");
  int64_t k = target / davenport;
  int64_t j = target % davenport;
  if (j == 0) return 2 * (k - 1) + 2;  // target = kD exactly
  int64_t rho_odd;
  if (k == 0)
    rho_odd = 1;  // rho_1 = 1: atoms factor only as themselves
  else {
    RhoResult r = rho_oracle(static_cast<int>(k));
    if (r.kind != BoundKind::exact)
      fail(Errc::lambda_needs_exact_rho, "rho_{2k+1} oracle returned a non-exact value");
    rho_odd = r.value;
  }
  if (j <= rho_odd - k * davenport) return 2 * k + 1;
  return 2 * k + 2;
}

std::vector<int> u_k_exact(const AtomSet& atoms, int k, uint64_t budget) {
  if (k < 1) fail(Errc::invalid_input, "k must be >= 1");
  if (!atoms.complete) fail(Errc::incomplete_atom_set, "u_k_exact needs the full atom set");
  uint64_t tuples = multiset_count(static_cast<int64_t>(atoms.atoms.size()), k);
  if (tuples > budget)
    fail(Errc::enumeration_too_large,
         std::to_string(tuples) + " atom tuples exceed budget " + std::to_string(budget));
  const int n = static_cast<int>(atoms.atoms.size());

  int workers = 1;
#ifdef _OPENMP
  workers = omp_get_max_threads();
#endif
  std::vector<std::set<int>> found(workers);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (int first = 0; first < n; ++first) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    Factorizer fz(atoms, 1u << 20);
    std::vector<int> tuple{first};
    // Unordered tuples as nondecreasing index lists.
    std::function<void(const Sequence&, int)> rec = [&](const Sequence& prod, int min_idx) {
      if (static_cast<int>(tuple.size()) == k) {
        for (int len : fz.length_set(prod).lengths) found[tid].insert(len);
        return;
      }
      for (int i = min_idx; i < n; ++i) {
        tuple.push_back(i);
        rec(prod.concat(atoms.atoms[i]), i);
        tuple.pop_back();
      }
    };
    rec(atoms.atoms[first], first);
  }
  std::set<int> all;
  for (const auto& s : found) all.insert(s.begin(), s.end());
  return std::vector<int>(all.begin(), all.end());
}

}  // namespace zsum
