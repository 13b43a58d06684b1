#include "zsum/rank2.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsum {

namespace {

struct PairContext {
  const Group* g;
  int64_t m, n, order;
};

int64_t subgroup_order(const Group& g, int64_t a, int64_t b) {
  std::vector<char> seen(g.order(), 0);
  int64_t count = 0;
  int64_t x = 0;
  std::vector<int64_t> cyc;
  do {
    cyc.push_back(x);
    x = g.add_i(x, a);
  } while (x != 0);
  int64_t shift = 0;
  do {
    for (int64_t s : cyc) {
      int64_t v = g.add_i(s, shift);
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
      }
    }
    shift = g.add_i(shift, b);
  } while (shift != 0);
  return count;
}

// Solves t = x*a + b with x in [lo, hi]; -1 when no solution.
int64_t solve_coeff(const Group& g, int64_t a, int64_t b, int64_t t, int64_t lo, int64_t hi) {
  int64_t acc = g.smul_i(lo, a);
  for (int64_t x = lo; x <= hi; ++x) {
    if (g.add_i(acc, b) == t) return x;
    acc = g.add_i(acc, a);
  }
  return -1;
}

bool check_group_shape(const Group& g, int64_t m, int64_t n) {
  if (m < 2 || n < 1) return false;
  Group want = make_group({m, m * n});
  return g.factors() == want.factors();
}

// S = a^{ord(a)-1} * prod_{i=1}^{ord(b)} (x_i a + b) with {a,b} a basis and
// sum x_i = 1 mod ord(a).
bool match_type_i(const PairContext& cx, const Sequence& s, int64_t a, int64_t b,
                  int64_t ord_a, int64_t ord_b, ClassificationResult* out) {
  const Group& g = *cx.g;
  if (g.order_of_i(a) != ord_a || g.order_of_i(b) != ord_b) return false;
  if (ord_a * ord_b != cx.order) return false;
  if (s.multiplicity(a) != ord_a - 1) return false;
  if (subgroup_order(g, a, b) != cx.order) return false;

  Sequence rest = s.remove(Sequence::single(g, a, static_cast<int32_t>(ord_a - 1)));
  if (rest.length() != ord_b) return false;
  std::vector<int64_t> xs;
  int64_t xsum = 0;
  for (const auto& t : rest.terms()) {
    int64_t x = solve_coeff(g, a, b, t.elem, 0, ord_a - 1);
    if (x < 0) return false;
    for (int32_t c = 0; c < t.mult; ++c) xs.push_back(x);
    xsum += x * t.mult;
  }
  if (xsum % ord_a != 1 % ord_a) return false;
  if (out) {
    out->basis_a = a;
    out->basis_b = b;
    out->exponents = std::move(xs);
  }
  return true;
}

// S = f1^{sm-1} f2^{(n-s)m+eps} prod_{i=1}^{m-eps} (-x_i f1 + f2) with the
// order, generation and (d)/(e) side conditions.
bool match_type_ii(const PairContext& cx, const Sequence& s, int64_t a, int64_t b,
                   ClassificationResult* out) {
  const Group& g = *cx.g;
  const int64_t m = cx.m, n = cx.n;
  if (n < 2) return false;
  if (g.order_of_i(b) != m * n) return false;
  int64_t ord_a = g.order_of_i(a);
  if (ord_a <= m || ord_a % m != 0) return false;

  int64_t va = s.multiplicity(a);
  if ((va + 1) % m != 0) return false;
  int64_t sp = (va + 1) / m;
  if (sp < 1 || sp > n - 1) return false;
  int64_t vb = s.multiplicity(b);
  int64_t eps = vb - (n - sp) * m;
  if (eps < 1 || eps > m - 1) return false;

  int64_t ma = g.smul_i(m, a), mb = g.smul_i(m, b);
  if (!(sp == 1 || ma == mb)) return false;       // condition (d)
  if (!(eps >= 2 || ma != mb)) return false;      // condition (e)
  if (subgroup_order(g, a, b) != cx.order) return false;

  Sequence rest = s.remove(Sequence::single(g, a, static_cast<int32_t>(va)))
                      .remove(Sequence::single(g, b, static_cast<int32_t>(vb)));
  if (rest.length() != m - eps) return false;
  std::vector<int64_t> xs;
  int64_t xsum = 0;
  int64_t na = g.neg_i(a);
  for (const auto& t : rest.terms()) {
    int64_t x = solve_coeff(g, na, b, t.elem, 1, m - 1);
    if (x < 0) return false;
    for (int32_t c = 0; c < t.mult; ++c) xs.push_back(x);
    xsum += x * t.mult;
  }
  if (xsum != m - 1) return false;
  if (out) {
    out->basis_a = a;
    out->basis_b = b;
    out->exponents = std::move(xs);
    out->s = sp;
    out->eps = eps;
  }
  return true;
}

enum MatchKind { kIa, kIb, kII };

bool scan_pairs(const PairContext& cx, const Sequence& s, MatchKind kind,
                ClassificationResult* out) {
  for (int64_t a = 1; a < cx.order; ++a) {
    // cheap multiplicity gate before the expensive subgroup test
    if (kind == kIa || kind == kIb) {
      int64_t ord_a = kind == kIa ? cx.m * cx.n : cx.m;
      if (s.multiplicity(a) != ord_a - 1) continue;
    }
    for (int64_t b = 1; b < cx.order; ++b) {
      if (b == a) continue;
      bool ok = false;
      switch (kind) {
        case kIa: ok = match_type_i(cx, s, a, b, cx.m * cx.n, cx.m, out); break;
        case kIb:
          if (cx.n < 2) return false;
          ok = match_type_i(cx, s, a, b, cx.m, cx.m * cx.n, out);
          break;
        case kII: ok = match_type_ii(cx, s, a, b, out); break;
      }
      if (ok) return true;
    }
  }
  return false;
}

PairContext make_context(const Sequence& s, int64_t m, int64_t n) {
  if (!check_group_shape(s.group(), m, n))
    fail(Errc::not_applicable, "classify needs the group in (m, mn) form");
  return PairContext{&s.group(), m, n, s.group().order()};
}

bool quick_reject(const Sequence& s) { return s.sigma_i() != 0 || s.multiplicity(0) > 0; }

}  // namespace

const char* seq_type_name(SeqType t) {
  switch (t) {
    case SeqType::type_ia: return "I(a)";
    case SeqType::type_ib: return "I(b)";
    case SeqType::type_ii: return "II";
    case SeqType::not_minimal: return "NotMinimal";
  }
  return "?";
}

ClassificationResult classify(const Sequence& s, int64_t m, int64_t n) {
  PairContext cx = make_context(s, m, n);
  int64_t dav = m + m * n - 1;
  if (s.length() != dav) fail(Errc::wrong_length, "classify needs |S| = D(G) = m+mn-1");
  ClassificationResult res;
  if (quick_reject(s)) return res;
  if (scan_pairs(cx, s, kIa, &res)) {
    res.verdict = SeqType::type_ia;
    return res;
  }
  if (cx.n >= 2 && scan_pairs(cx, s, kIb, &res)) {
    res.verdict = SeqType::type_ib;
    return res;
  }
  if (cx.n >= 2 && scan_pairs(cx, s, kII, &res)) {
    res.verdict = SeqType::type_ii;
    return res;
  }
  res = ClassificationResult{};
  return res;
}

bool matches_type_ia(const Sequence& s, int64_t m, int64_t n) {
  PairContext cx = make_context(s, m, n);
  return !quick_reject(s) && scan_pairs(cx, s, kIa, nullptr);
}
bool matches_type_ib(const Sequence& s, int64_t m, int64_t n) {
  PairContext cx = make_context(s, m, n);
  return !quick_reject(s) && cx.n >= 2 && scan_pairs(cx, s, kIb, nullptr);
}
bool matches_type_ii(const Sequence& s, int64_t m, int64_t n) {
  PairContext cx = make_context(s, m, n);
  return !quick_reject(s) && cx.n >= 2 && scan_pairs(cx, s, kII, nullptr);
}

std::optional<ClassificationResult> classify_as_type_ii(const Sequence& s, int64_t m, int64_t n) {
  PairContext cx = make_context(s, m, n);
  ClassificationResult res;
  if (quick_reject(s) || cx.n < 2 || !scan_pairs(cx, s, kII, &res)) return std::nullopt;
  res.verdict = SeqType::type_ii;
  return res;
}

CensusResult classifier_census(int64_t m, int64_t n, uint64_t budget, int workers) {
  Group g = make_group({m, m * n});
  const int64_t dav = m + m * n - 1;
  uint64_t count = multiset_count(g.order(), static_cast<int>(dav));
  if (count > budget)
    fail(Errc::enumeration_too_large,
         std::to_string(count) + " multisets exceed budget " + std::to_string(budget));

  int nworkers = workers;
#ifdef _OPENMP
  if (nworkers <= 0) nworkers = omp_get_max_threads();
#else
  nworkers = 1;
#endif
  // Partition on the smallest element of the multiset; every partition
  // accumulates on the worker's stack and lands in its own slot.
  std::vector<CensusResult> local(g.order());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nworkers)
#endif
  for (int64_t first = 0; first < g.order(); ++first) {
    CensusResult acc;
    std::vector<int64_t> stack{first};
    std::function<void()> rec = [&]() {
      if (static_cast<int64_t>(stack.size()) == dav) {
        Sequence s = Sequence::from_indices(g, stack);
        ++acc.total;
        bool oracle = is_atom(s);
        ClassificationResult cls = classify(s, m, n);
        bool accepted = cls.verdict != SeqType::not_minimal;
        if (accepted != oracle) acc.disagreements.push_back(s);
        if (accepted) {
          ++acc.count_atoms;
          switch (cls.verdict) {
            case SeqType::type_ia: ++acc.count_ia; break;
            case SeqType::type_ib: ++acc.count_ib; break;
            case SeqType::type_ii: ++acc.count_ii; break;
            default: break;
          }
          if (static_cast<int64_t>(s.support().size()) < 3) ++acc.support_violations;
          for (int64_t e : s.support())
            if (g.order_of_i(e) % m != 0) ++acc.order_violations;
          int kinds = (matches_type_ia(s, m, n) ? 1 : 0) + (matches_type_ib(s, m, n) ? 1 : 0) +
                      (matches_type_ii(s, m, n) ? 1 : 0);
          if (kinds > 1) acc.overlaps.push_back(s);
        }
        return;
      }
      for (int64_t e = stack.back(); e < g.order(); ++e) {
        stack.push_back(e);
        rec();
        stack.pop_back();
      }
    };
    rec();
    local[first] = std::move(acc);
  }

  CensusResult out;
  for (CensusResult& acc : local) {
    out.total += acc.total;
    out.count_atoms += acc.count_atoms;
    out.count_ia += acc.count_ia;
    out.count_ib += acc.count_ib;
    out.count_ii += acc.count_ii;
    out.support_violations += acc.support_violations;
    out.order_violations += acc.order_violations;
    out.disagreements.insert(out.disagreements.end(), acc.disagreements.begin(),
                             acc.disagreements.end());
    out.overlaps.insert(out.overlaps.end(), acc.overlaps.begin(), acc.overlaps.end());
  }
  std::sort(out.disagreements.begin(), out.disagreements.end());
  std::sort(out.overlaps.begin(), out.overlaps.end());
  return out;
}

LemTechResult lemtech_check(const Sequence& s, const ClassificationResult& cls,
                            const Sequence& t) {
  if (cls.verdict != SeqType::type_ii)
    fail(Errc::invalid_input, "lemtech_check needs a type II classification");
  const Group& g = s.group();
  const int64_t m = g.factors().front();
  if (!t.divides(s)) fail(Errc::not_a_subsequence, "T must divide S");
  if (t.length() < 2 * m - 1) fail(Errc::invalid_input, "lemtech_check needs |T| >= 2m-1");

  const int64_t target = g.smul_i(m, cls.basis_b);  // m*f2

  // Shortcuts from the argument itself: f2^m (and f1^m when m*f1 = m*f2)
  // already sum to the target and are proper inside |T| >= 2m-1.
  if (t.multiplicity(cls.basis_b) >= m)
    return {Sequence::single(g, cls.basis_b, static_cast<int32_t>(m)), false};
  if (cls.s > 1 && t.multiplicity(cls.basis_a) >= m &&
      g.smul_i(m, cls.basis_a) == target)
    return {Sequence::single(g, cls.basis_a, static_cast<int32_t>(m)), false};

  const auto terms = t.expanded();
  const int64_t order = g.order();

  // Subset-sum layers over the expanded terms; track minimum subset size and
  // one predecessor per (prefix, sum) for reconstruction.
  const int64_t len = static_cast<int64_t>(terms.size());
  std::vector<std::vector<int32_t>> minsize(len + 1, std::vector<int32_t>(order, INT32_MAX));
  minsize[0][0] = 0;
  for (int64_t i = 0; i < len; ++i) {
    for (int64_t sum = 0; sum < order; ++sum) {
      if (minsize[i][sum] == INT32_MAX) continue;
      if (minsize[i][sum] < minsize[i + 1][sum]) minsize[i + 1][sum] = minsize[i][sum];
      int64_t to = g.add_i(sum, terms[i]);
      if (minsize[i][sum] + 1 < minsize[i + 1][to]) minsize[i + 1][to] = minsize[i][sum] + 1;
    }
  }
  if (minsize[len][target] == INT32_MAX || minsize[len][target] == 0)
    fail(Errc::lemtech_violation, "no subsequence of T sums to m*f2");

  // Reconstruct one minimum-size witness (prefer "skip" for determinism).
  std::vector<int64_t> picked;
  int64_t sum = target;
  int32_t need = minsize[len][target];
  for (int64_t i = len; i-- > 0;) {
    if (minsize[i][sum] == need) continue;  // term i unused
    int64_t prev = g.sub_i(sum, terms[i]);
    picked.push_back(terms[i]);
    sum = prev;
    --need;
  }
  LemTechResult res{Sequence::from_indices(g, picked), false};
  res.minimal_case = res.t1.length() == t.length();
  if (res.minimal_case) {
    // The forced form: f1^{m-1} f2^eps prod(-x_i f1 + f2).
    Sequence forced = Sequence::single(g, cls.basis_a, static_cast<int32_t>(m - 1))
                          .concat(Sequence::single(g, cls.basis_b, static_cast<int32_t>(cls.eps)));
    for (int64_t x : cls.exponents)
      forced = forced.add_term(g.add_i(g.smul_i(-x, cls.basis_a), cls.basis_b));
    if (t != forced)
      fail(Errc::lemtech_violation, "minimal T does not match the forced form");
  }
  return res;
}

}  // namespace zsum
