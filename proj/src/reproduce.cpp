#include "zsum/reproduce.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "zsum/c1search.hpp"
#include "zsum/constructions.hpp"
#include "zsum/factorize.hpp"
#include "zsum/rank2.hpp"
#include "zsum/reference.hpp"

namespace zsum {

namespace {

struct Checker {
  std::ostringstream detail;
  bool pass = true;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "FAILED " << what;
    }
  }
  template <typename T, typename U>
  void expect_eq(const T& got, const U& want, const std::string& what) {
    if (!(got == static_cast<T>(want))) {
      std::ostringstream os;
      os << what << " = " << got << ", expected " << want;
      expect(false, os.str());
    }
  }
};

AtomSet atoms_for(const std::vector<int64_t>& moduli, const ReproduceOptions& opts) {
  EnumerateOptions eo;
  eo.budget = opts.budget;
  eo.workers = opts.workers;
  return load_or_enumerate_atoms(make_group(moduli), opts.cache_dir, eo);
}

using RowFn = std::function<void(Checker&, const ReproduceOptions&)>;

void row1_davenport(Checker& c, const ReproduceOptions& opts) {
  const std::pair<std::vector<int64_t>, int64_t> want[] = {
      {{3}, 3}, {{2, 2}, 3}, {{2, 4}, 5}, {{3, 3}, 5}, {{2, 6}, 7}, {{3, 6}, 8}};
  for (const auto& [moduli, dav] : want) {
    AtomSet atoms = atoms_for(moduli, opts);
    c.expect_eq(atoms.davenport, dav, "D(" + atoms.group.spec_string() + ")");
  }
}

void row2_rho2(Checker& c, const ReproduceOptions& opts) {
  for (const auto& moduli :
       {std::vector<int64_t>{3}, {2, 2}, {2, 4}, {3, 3}, {2, 6}}) {
    AtomSet atoms = atoms_for(moduli, opts);
    RhoResult formula = rho_even(atoms, 1);
    verify_certificate(*formula.certificate);
    c.expect_eq(formula.value, atoms.davenport,
                "rho_2 certificate value over " + atoms.group.spec_string());
    c.expect_eq(reference::rho2_brute_pairs(atoms), atoms.davenport,
                "rho_2 pair search over " + atoms.group.spec_string());
  }
}

void row3_rho3(Checker& c, const ReproduceOptions& opts) {
  const std::pair<std::vector<int64_t>, int64_t> want[] = {
      {{3}, 4}, {{5}, 6}, {{2, 2}, 4}, {{2, 4}, 7}, {{3, 3}, 7}, {{2, 6}, 9}};
  for (const auto& [moduli, value] : want) {
    AtomSet atoms = atoms_for(moduli, opts);
    Rho3Options ro;
    ro.workers = opts.workers;
    ro.triple_budget = opts.budget;
    RhoResult r = rho3_exact(atoms, ro);
    if (!r.search_exhausted)
      fail(Errc::search_budget_exceeded,
           "rho_3 search over " + atoms.group.spec_string() + " hit the triple budget");
    c.expect_eq(r.value, value, "rho_3(" + atoms.group.spec_string() + ")");
    c.expect(r.kind == BoundKind::exact, "rho_3 exactness over " + atoms.group.spec_string());
    verify_certificate(*r.certificate);
  }
}

void row4_census(Checker& c, const ReproduceOptions& opts) {
  const std::pair<int64_t, int64_t> pairs[] = {{2, 1}, {3, 1}, {4, 1}, {2, 2}, {2, 3}};
  for (const auto& [m, n] : pairs) {
    CensusResult res = classifier_census(m, n, opts.budget, opts.workers);
    std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    c.expect_eq(res.disagreements.size(), size_t{0}, "census disagreements " + tag);
    c.expect_eq(res.support_violations, uint64_t{0}, "census support rule " + tag);
    c.expect_eq(res.order_violations, uint64_t{0}, "census term-order rule " + tag);
    if (m == 2 && n == 2) {
      c.expect_eq(res.count_ii, uint64_t{0}, "count_II (2,2)");
      c.expect_eq(res.total, uint64_t{792}, "census size (2,2)");
    }
    if (m == 2 && n == 3) c.expect_eq(res.total, uint64_t{31824}, "census size (2,3)");
  }
}

void row5_c1(Checker& c, const ReproduceOptions& opts) {
  for (int64_t q : {4, 5, 6, 7}) {
    AtomSet atoms = atoms_for({q}, opts);
    C1Result r = c1_search(atoms, {.mode = C1Mode::exhaustive, .workers = opts.workers});
    c.expect(!r.witness && r.exhausted, "exhaustive none over " + atoms.group.spec_string());
  }
  {
    AtomSet atoms = atoms_for({2, 2}, opts);
    C1Result r = c1_search(atoms, {.mode = C1Mode::exhaustive, .workers = opts.workers});
    c.expect(!r.witness && r.exhausted, "exhaustive none over 2,2");
  }
  for (const auto& moduli : {std::vector<int64_t>{2, 4}, {3, 3}, {2, 2, 2}}) {
    AtomSet atoms = atoms_for(moduli, opts);
    C1Result r = c1_search(atoms, {.workers = opts.workers});
    c.expect(r.witness.has_value(), "witness over " + atoms.group.spec_string());
    if (!r.witness) continue;
    WitnessReport rep = c1_to_rho3(*r.witness, atoms.davenport);
    c.expect(rep.verified, "chained certificate over " + atoms.group.spec_string());
    c.expect_eq(rep.claimed_bound, atoms.davenport + 2,
                "chained bound over " + atoms.group.spec_string());
    Rho3Options ro;
    ro.workers = opts.workers;
    c.expect(rep.claimed_bound <= rho3_exact(atoms, ro).value,
             "chained bound consistent with exact rho_3 over " + atoms.group.spec_string());
  }
}

void row6_constructions(Checker& c, const ReproduceOptions&) {
  auto check_report = [&](const WitnessReport& w, int64_t bound, const std::string& tag) {
    c.expect(w.verified, tag + " verified");
    c.expect_eq(w.claimed_bound, bound, tag + " count");
  };
  check_report(lemma44_witness(make_group({2, 2}), Block{{0}}, Block{{1}}), 4, "lemma44 C2^2");
  check_report(lemma46_witness(2), 6, "lemma46 n=2");
  check_report(lemma46_witness(3), 10, "lemma46 n=3");
  check_report(theorem41_witness(make_group({2, 2, 2, 2})), 7, "theorem41 C2^4");
  check_report(theorem41_witness(make_group({3, 3})), 7, "theorem41 C3^2");
  check_report(prop35_part1(make_group({2, 4})), 7, "prop35.1 C2+C4");
  check_report(prop35_part1(make_group({3, 6})), 11, "prop35.1 C3+C6");
  check_report(cor52_witnesses(2).front(), 7, "cor52.1");
  auto c52 = cor52_witnesses(3).front();
  check_report(c52, 20, "cor52.2 m=3");
  c.expect_eq(c52.claimed_k, 5, "cor52.2 claims rho_5");
  auto c53 = cor53_witness(3);
  check_report(c53, 38, "cor53 n=3");
  c.expect_eq(c53.claimed_k, 11, "cor53 claims rho_11");
  try {
    C1Witness w = prop35_part3(71);
    c.expect(is_atom(w.U) && w.U.length() == w.U.group().big_d_star() + 1,
             "prop35.3 n=71 witness");
  } catch (const Error& e) {
    c.expect(false, std::string("prop35.3 n=71: ") + e.what());
  }
}

void row7_lambda_uk(Checker& c, const ReproduceOptions& opts) {
  AtomSet atoms33 = atoms_for({3, 3}, opts);
  Group g33 = atoms33.group;
  Rho3Options ro;
  ro.workers = opts.workers;
  int64_t rho3 = rho3_exact(atoms33, ro).value;
  c.expect_eq(rho3, int64_t{7}, "rho_3(3,3) input to lambda");
  auto oracle = [&](int k) -> RhoResult {
    auto [lo, hi] = rho_odd_bounds(g33, k, atoms33.davenport, {{1, rho3}});
    if (lo.value != hi.value) fail(Errc::lambda_needs_exact_rho, "bounds apart");
    return lo;
  };
  for (int target = 1; target <= 12; ++target) {
    int64_t formula = lambda_formula(g33, target, atoms33.davenport, oracle);
    int64_t brute = reference::lambda_brute(atoms33, target);
    c.expect_eq(formula, brute, "lambda_" + std::to_string(target) + "(3,3)");
  }
  for (const auto& moduli : {std::vector<int64_t>{3}, {2, 2}, {3, 3}}) {
    AtomSet atoms = atoms_for(moduli, opts);
    for (int k = 1; k <= 3; ++k) {
      auto u = u_k_exact(atoms, k, opts.budget);
      c.expect(!u.empty() &&
                   static_cast<int>(u.size()) == u.back() - u.front() + 1,
               "U_" + std::to_string(k) + "(" + atoms.group.spec_string() + ") is an interval");
      c.expect(std::binary_search(u.begin(), u.end(), k),
               "k lies in U_k over " + atoms.group.spec_string());
    }
  }
}

void row8_properties(Checker& c, const ReproduceOptions& opts) {
  const std::vector<std::vector<int64_t>> groups = {
      {},   {2},    {3},    {4},  {2, 2}, {5},  {6},    {7},   {8},
      {2, 4}, {2, 2, 2}, {9}, {3, 3}, {10}, {11}, {12}, {2, 6}};
  for (const auto& moduli : groups) {
    Group g = make_group(moduli);
    std::string tag = "'" + g.spec_string() + "'";
    AtomSet atoms = atoms_for(moduli, opts);

    // atom enumeration vs filtered multiset enumeration
    std::vector<Sequence> filtered;
    for (int len = 1; len <= atoms.davenport; ++len)
      enumerate_sequences(g, len, opts.budget, [&](const Sequence& s) {
        if (is_atom(s)) filtered.push_back(s);
        return true;
      });
    std::sort(filtered.begin(), filtered.end());
    c.expect(atoms.atoms == filtered, "atom enumeration oracle over " + tag);

    c.expect(g.big_d_star() <= atoms.davenport &&
                 atoms.davenport <= std::max<int64_t>(1, g.order()),
             "D* <= D <= |G| over " + tag);

    // subsum closure vs naive enumeration on pseudo-random sequences
    uint64_t seed = 517 + g.order();
    auto rnd = [&](int64_t n) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<int64_t>((seed >> 33) % n);
    };
    for (int trial = 0; trial < 20; ++trial) {
      int len = static_cast<int>(rnd(12)) + 1;
      std::vector<int64_t> elems;
      for (int i = 0; i < len; ++i) elems.push_back(rnd(g.order()));
      Sequence s = Sequence::from_indices(g, elems);
      c.expect(subsums(s).members == reference::subsums_naive(s),
               "subsum closure oracle over " + tag);
    }

    // length-set DP vs naive factorization enumeration (orders <= 8)
    if (g.order() >= 2 && g.order() <= 8) {
      Factorizer fz(atoms);
      for (int trial = 0; trial < 15; ++trial) {
        int len = static_cast<int>(rnd(9)) + 1;
        std::vector<int64_t> elems;
        for (int i = 1; i < len; ++i) elems.push_back(rnd(g.order()));
        Sequence part = Sequence::from_indices(g, elems);
        Sequence b = part.add_term(g.neg_i(part.sigma_i()));
        c.expect(fz.length_set(b).lengths == reference::length_set_naive(b, atoms),
                 "length-set oracle over " + tag);
      }
    }

    // superadditivity and the crucial inequality on exactly computed values
    if (g.order() >= 3) {
      Rho3Options ro;
      ro.workers = opts.workers;
      int64_t dav = atoms.davenport;
      int64_t rho2 = rho_even(atoms, 1).value;
      int64_t rho3 = rho3_exact(atoms, ro).value;
      int64_t rho4 = rho_even(atoms, 2).value;
      c.expect(rho2 + 1 <= rho3 && rho3 + 1 <= rho4 && rho2 + rho2 <= rho4,
               "superadditivity over " + tag);
      c.expect(1 + dav <= rho3 && rho3 <= dav + dav / 2, "crucial inequality over " + tag);
    }
  }
}

}  // namespace

std::vector<AcceptanceRow> reproduce_suite(const ReproduceOptions& opts) {
  const std::pair<std::string, RowFn> rows[] = {
      {"1 davenport constants by full enumeration", row1_davenport},
      {"2 rho_2 = D two ways", row2_rho2},
      {"3 rho_3 exact values", row3_rho3},
      {"4 classifier census", row4_census},
      {"5 split-witness search and chaining", row5_c1},
      {"6 construction certificates", row6_constructions},
      {"7 lambda formula and U_k intervals", row7_lambda_uk},
      {"8 property suites, all groups of order <= 12", row8_properties},
  };
  std::vector<AcceptanceRow> out;
  for (const auto& [name, fn] : rows) {
    AcceptanceRow row;
    row.name = name;
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c, opts);
      row.pass = c.pass;
      row.detail = c.detail.str();
    } catch (const Error& e) {
      if (e.code() == Errc::enumeration_too_large || e.code() == Errc::search_budget_exceeded) {
        row.skipped = true;
        row.detail = std::string("skipped (budget): ") + e.what();
      } else {
        row.pass = false;
        row.detail = e.what();
      }
    }
    row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    out.push_back(std::move(row));
  }
  return out;
}

bool all_rows_pass(const std::vector<AcceptanceRow>& rows) {
  for (const AcceptanceRow& r : rows)
    if (!r.pass && !r.skipped) return false;
  return true;
}

}  // namespace zsum
