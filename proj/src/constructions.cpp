#include "zsum/constructions.hpp"

#include <algorithm>
#include <set>

#include "zsum/atoms.hpp"

namespace zsum {

namespace {

using Terms = std::vector<Sequence::Term>;

void push(Terms& t, int64_t elem, int64_t mult) {
  if (mult > 0) t.push_back({static_cast<int32_t>(elem), static_cast<int32_t>(mult)});
}

void tag_all(std::vector<TaggedTerm>& pool, const Sequence& s, int left) {
  for (int64_t e : s.expanded()) pool.push_back({e, left});
}

// Shared verification: certificate checks out, the right side has exactly
// the claimed number of atoms, and the spread (for 3-atom left sides) shows
// the claimed traversal count with no whole-atom rights.
void finish(WitnessReport& w, std::optional<int64_t> want_traversals) {
  verify_certificate(w.certificate);
  if (static_cast<int64_t>(w.certificate.right.size()) != w.claimed_bound)
    fail(Errc::invalid_certificate,
         w.name + ": certificate has " + std::to_string(w.certificate.right.size()) +
             " atoms, claimed " + std::to_string(w.claimed_bound));
  if (w.certificate.left.size() == 3) {
    Spread sp = spread_of(w.certificate);
    if (want_traversals) {
      if (sp.count1 != 0)
        fail(Errc::spread_mismatch, w.name + ": spread not in F({2,3})");
      if (sp.count3 != *want_traversals)
        fail(Errc::spread_mismatch,
             w.name + ": traversal count " + std::to_string(sp.count3) + ", expected " +
                 std::to_string(*want_traversals));
    }
    w.spread = sp;
  }
  w.verified = true;
}

struct BasisEnv {
  Group g;
  std::vector<int64_t> e;  // e[1..r] basis element indices (e[0] unused)
  int64_t e0;              // e1 + ... + e_{r-1}

  explicit BasisEnv(const Group& grp) : g(grp) {
    auto basis = g.canonical_basis();
    e.resize(basis.size() + 1);
    for (size_t i = 0; i < basis.size(); ++i) e[i + 1] = basis[i].index();
    e0 = 0;  // e1 + ... + e_{r-1}
    for (size_t i = 1; i < basis.size(); ++i) e0 = g.add_i(e0, e[i]);
  }

  int64_t lin(std::initializer_list<std::pair<int64_t, int64_t>> combo) const {
    int64_t acc = 0;
    for (auto [coeff, elem] : combo) acc = g.add_i(acc, g.smul_i(coeff, elem));
    return acc;
  }
};

}  // namespace

Group block_group(const Group& ambient, const Block& b) {
  std::vector<int64_t> moduli;
  for (int c : b.coords) {
    if (c < 0 || c >= ambient.rank()) fail(Errc::invalid_input, "block coordinate out of range");
    moduli.push_back(ambient.factors()[c]);
  }
  return make_group(moduli);
}

Sequence lift_to_ambient(const Group& ambient, const Block& b, const Sequence& block_seq) {
  Terms terms;
  for (const auto& t : block_seq.terms()) {
    auto bc = block_seq.group().coords_of(t.elem);
    std::vector<int64_t> ac(ambient.rank(), 0);
    for (size_t i = 0; i < b.coords.size(); ++i) ac[b.coords[i]] = bc[i];
    push(terms, ambient.index_of(ac), t.mult);
  }
  return Sequence(ambient, std::move(terms));
}

WitnessReport prop32_construction(const Sequence& u, const Sequence& s1, const Sequence& s2,
                                  const Element& g_elem, int64_t davenport) {
  const Group& g = u.group();
  require_same_group(g_elem.group(), g, "prop32: g from another group");
  auto reject = [](const std::string& why) { fail(Errc::invalid_c1_witness, why); };

  if (s1.empty() || s2.empty()) reject("split parts must be nonempty");
  if (s1.concat(s2) != u) reject("U != S1*S2");
  if (u.length() != davenport) reject("|U| != D(G)");
  if (!is_atom(u)) reject("U is not an atom");
  int64_t gi = g_elem.index();
  if (gi == 0) reject("g = 0");
  if (subsum_bitset(s1).contains(gi)) reject("g lies in Sigma(S1)");
  if (subsum_bitset(s2).contains(g.neg_i(gi))) reject("g lies in Sigma(-S2)");

  int64_t sig1 = s1.sigma_i(), sig2 = s2.sigma_i();
  Sequence u2 = s1.negate().add_term(gi).add_term(g.sub_i(sig1, gi));
  Sequence u3 = s2.negate().add_term(g.neg_i(gi)).add_term(g.add_i(sig2, gi));
  if (!is_atom(u2)) reject("constructed U2 is not an atom");
  if (!is_atom(u3)) reject("constructed U3 is not an atom");

  std::vector<Sequence> left{u, u2, u3};
  std::vector<TaggedTerm> pool;
  for (int j = 0; j < 3; ++j) tag_all(pool, left[j], j);

  WitnessReport w;
  w.name = "prop32";
  w.params = {{"group", g.spec_string()}, {"g", std::to_string(gi)}};
  w.claimed_k = 3;
  w.claimed_bound = davenport + 2;
  w.certificate = assemble_certificate(g, left, {}, std::move(pool));
  finish(w, std::nullopt);
  return w;
}

WitnessReport prop35_part1(const Group& g) {
  const auto& f = g.factors();
  const int r = g.rank();
  int s = -1;  // 1-based index of the last strict step in the chain
  for (int i = r - 1; i >= 1; --i) {
    if (f[i - 1] < f[i]) {
      bool tail_equal = true;
      for (int j = i; j < r; ++j) tail_equal &= (f[j] == f[i]);
      if (tail_equal) s = i;
      break;
    }
  }
  if (s < 1) fail(Errc::not_applicable, "no index s with n_s < n_{s+1} = ... = n_r");

  BasisEnv b(g);
  int64_t ns = f[s - 1];
  int64_t er = b.e[r];

  Terms t1, t2, t3;
  for (int i = 1; i <= r; ++i) push(t1, b.e[i], f[i - 1] - 1);
  push(t1, g.add_i(b.e0, er), 1);
  for (int i = 1; i <= r; ++i) {
    if (i == s)
      push(t2, g.add_i(g.neg_i(b.e[s]), er), ns - 1);
    else
      push(t2, g.neg_i(b.e[i]), f[i - 1] - 1);
  }
  push(t2, g.neg_i(g.add_i(b.e0, g.smul_i(ns, er))), 1);
  push(t3, g.neg_i(b.e[s]), ns - 1);
  push(t3, g.sub_i(b.e[s], er), ns - 1);
  push(t3, g.neg_i(g.add_i(b.e0, er)), 1);
  push(t3, g.add_i(b.e0, g.smul_i(ns, er)), 1);

  std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), Sequence(g, t3)};
  std::vector<TaggedTerm> pool;
  for (int j = 0; j < 3; ++j) tag_all(pool, left[j], j);

  WitnessReport w;
  w.name = "prop35.1";
  w.params = {{"group", g.spec_string()}, {"s", std::to_string(s)}};
  w.claimed_k = 3;
  w.claimed_bound = g.d_star() + 1 + ns;  // D*(G) + n_s
  w.certificate = assemble_certificate(g, left, {}, std::move(pool));
  finish(w, 0);
  return w;
}

C1Witness prop35_part2(const Group& g) {
  const auto& f = g.factors();
  const int r = g.rank();
  if (r < 2) fail(Errc::not_applicable, "cyclic group");
  if (g.big_d_star() < 4) fail(Errc::not_applicable, "needs D(G) = D*(G) >= 4");

  BasisEnv b(g);
  // Closing term e1 + ... + e_r makes U the standard D*-length atom.
  Terms tu;
  for (int i = 1; i <= r; ++i) push(tu, b.e[i], f[i - 1] - 1);
  push(tu, g.add_i(b.e0, b.e[r]), 1);
  Sequence u(g, tu);

  Sequence s1(g), s2(g);
  int64_t missing;
  if (f[r - 1] > 2) {
    s1 = Sequence::single(g, b.e[r], static_cast<int32_t>(f[r - 1] - 1));
    s2 = u.remove(s1);
    missing = g.add_i(g.neg_i(b.e0), b.e[r]);  // -e1-...-e_{r-1}+e_r
  } else {
    // elementary 2-group, r >= 3 here since D* >= 4
    s1 = Sequence::from_indices(g, {b.e[1], b.e[2]});
    s2 = u.remove(s1);
    missing = g.add_i(b.e[2], b.e[3]);
  }

  if (!is_atom(u)) fail(Errc::invalid_c1_witness, "prop35.2: U fails the atom check");
  if (u.length() != g.big_d_star())
    fail(Errc::invalid_c1_witness, "prop35.2: |U| != D*(G)");
  if (missing == 0 || subsum_bitset(s1).contains(missing) ||
      subsum_bitset(s2).contains(g.neg_i(missing)))
    fail(Errc::invalid_c1_witness, "prop35.2: claimed missing element is covered");
  return C1Witness{u, s1, s2, g.element_at(missing)};
}

C1Witness prop35_part3(int64_t n) {
  if (n % 2 == 0) fail(Errc::not_applicable, "even n: D = D*, handled by the D = D* witness");
  if (n < 71) fail(Errc::not_applicable, "odd n below the configured threshold 71");
  Group g = make_group({2, 2, 2, 2, 2 * n});

  BasisEnv b(g);
  int64_t e5 = b.e[5];
  int64_t esum = g.add_i(b.e0, e5);  // e1 + ... + e5
  Terms tu;
  for (int i = 1; i <= 4; ++i) push(tu, g.add_i(b.e[i], e5), 1);
  for (int i = 1; i <= 3; ++i) push(tu, g.sub_i(esum, b.e[i]), 1);
  int64_t s1_main = g.add_i(g.sub_i(esum, b.e[4]), e5);  // e1+e2+e3+2*e5
  push(tu, s1_main, 2 * n - 3);
  push(tu, g.neg_i(e5), 1);
  Sequence u(g, tu);

  Terms ts1;
  push(ts1, s1_main, 2 * n - 3);
  push(ts1, g.neg_i(e5), 1);
  Sequence s1(g, ts1);
  Sequence s2 = u.remove(s1);

  // D(C_2^4 + C_{2n}) = D*(G) + 1 for odd n here is a configured input.
  if (u.length() != g.big_d_star() + 1)
    fail(Errc::invalid_c1_witness, "prop35.3: |U| != D* + 1");
  if (!is_atom(u)) fail(Errc::invalid_c1_witness, "prop35.3: U fails the atom check");

  int64_t missing = b.lin({{1, b.e[1]}, {1, b.e[2]}, {1, b.e[3]}, {-2, e5}});
  if (missing == 0 || subsum_bitset(s1).contains(missing) ||
      subsum_bitset(s2).contains(g.neg_i(missing)))
    fail(Errc::invalid_c1_witness, "prop35.3: claimed missing element is covered");
  return C1Witness{u, s1, s2, g.element_at(missing)};
}

WitnessReport lemma44_witness(const Group& ambient, const Block& b1, const Block& b2,
                              const Sequence& v_in, const Sequence& w_in, int64_t dav1,
                              int64_t dav2) {
  for (int c1 : b1.coords)
    for (int c2 : b2.coords)
      if (c1 == c2) fail(Errc::invalid_input, "blocks overlap");

  Sequence v = v_in, w = w_in;
  int64_t d1 = dav1, d2 = dav2;
  if (d1 > d2) {
    std::swap(v, w);
    std::swap(d1, d2);
  }
  if (v.length() != d1 || w.length() != d2)
    fail(Errc::invalid_input, "lemma44 needs maximal-length atoms of the two blocks");
  if (!is_atom(v) || !is_atom(w)) fail(Errc::invalid_input, "lemma44 inputs must be atoms");

  const Group& g = ambient;
  auto vv = v.expanded();
  auto ww = w.expanded();
  const int64_t k1 = d1 - 1, k2 = d2 - 1;  // d(G1), d(G2)

  Terms t1, t2, t3;
  push(t1, g.add_i(vv[0], ww[0]), 1);
  for (int64_t i = 1; i <= k1; ++i) push(t1, vv[i], 1);
  for (int64_t i = 1; i <= k2; ++i) push(t1, ww[i], 1);
  push(t2, g.neg_i(ww[0]), 1);
  for (int64_t i = 1; i <= k1; ++i) push(t2, g.neg_i(vv[i]), 1);
  for (int64_t i = 1; i <= k1; ++i) push(t2, g.sub_i(vv[i], ww[i]), 1);
  for (int64_t i = k1 + 1; i <= k2; ++i) push(t2, g.neg_i(ww[i]), 1);
  push(t3, g.neg_i(vv[0]), 1);
  for (int64_t i = 1; i <= k1; ++i) push(t3, g.neg_i(ww[i]), 1);
  for (int64_t i = 1; i <= k1; ++i) push(t3, g.sub_i(ww[i], vv[i]), 1);

  std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), Sequence(g, t3)};

  std::vector<std::vector<TaggedTerm>> expl(1);
  expl[0] = {{g.add_i(vv[0], ww[0]), 0}, {g.neg_i(ww[0]), 1}, {g.neg_i(vv[0]), 2}};
  std::vector<TaggedTerm> pool;
  for (int64_t i = 1; i <= k1; ++i) pool.push_back({vv[i], 0});
  for (int64_t i = 1; i <= k2; ++i) pool.push_back({ww[i], 0});
  for (int64_t i = 1; i <= k1; ++i) pool.push_back({g.neg_i(vv[i]), 1});
  for (int64_t i = 1; i <= k1; ++i) pool.push_back({g.sub_i(vv[i], ww[i]), 1});
  for (int64_t i = k1 + 1; i <= k2; ++i) pool.push_back({g.neg_i(ww[i]), 1});
  for (int64_t i = 1; i <= k1; ++i) pool.push_back({g.neg_i(ww[i]), 2});
  for (int64_t i = 1; i <= k1; ++i) pool.push_back({g.sub_i(ww[i], vv[i]), 2});

  WitnessReport rep;
  rep.name = "lemma44";
  rep.params = {{"group", g.spec_string()}};
  rep.claimed_k = 3;
  rep.claimed_bound = 2 * d1 + d2 - 2;
  rep.certificate = assemble_certificate(g, left, expl, std::move(pool));
  finish(rep, 1);
  return rep;
}

WitnessReport lemma44_witness(const Group& ambient, const Block& b1, const Block& b2) {
  Group g1 = block_group(ambient, b1), g2 = block_group(ambient, b2);
  AtomSet a1 = enumerate_atoms(g1), a2 = enumerate_atoms(g2);
  Sequence v = lift_to_ambient(ambient, b1, a1.max_length_atoms().front());
  Sequence w = lift_to_ambient(ambient, b2, a2.max_length_atoms().front());
  return lemma44_witness(ambient, b1, b2, v, w, a1.davenport, a2.davenport);
}

namespace {

struct ReducedCert {
  std::vector<Sequence> lefts;                       // V1,V2,V3
  std::vector<std::vector<TaggedTerm>> rights;       // weakly reduced rows
  std::vector<int> traversal_rows, double_rows;
};

ReducedCert decompose(const WitnessReport& w, const char* side) {
  if (!w.verified || w.certificate.left.size() != 3 || !w.spread)
    fail(Errc::invalid_input, std::string("lemma45: ") + side + " witness lacks a verified 3-atom certificate");
  if (!is_weakly_reduced(w.certificate))
    fail(Errc::invalid_input, std::string("lemma45: ") + side + " certificate is not weakly reduced");
  if (w.spread->count1 != 0)
    fail(Errc::spread_mismatch, std::string("lemma45: ") + side + " spread not in F({2,3})");
  ReducedCert rc;
  rc.lefts = w.certificate.left;
  for (size_t i = 0; i < w.certificate.right.size(); ++i) {
    std::vector<TaggedTerm> row;
    for (int j = 0; j < 3; ++j) {
      const Sequence& part = w.certificate.parts[i][j];
      if (part.empty()) continue;
      row.push_back({part.terms().front().elem, j});
    }
    if (row.size() == 3)
      rc.traversal_rows.push_back(static_cast<int>(i));
    else
      rc.double_rows.push_back(static_cast<int>(i));
    rc.rights.push_back(std::move(row));
  }
  return rc;
}

std::vector<int> support_coords(const WitnessReport& w) {
  std::set<int> coords;
  const Group& g = w.certificate.group;
  for (const Sequence& a : w.certificate.left)
    for (int64_t e : a.support()) {
      auto c = g.coords_of(e);
      for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) coords.insert(static_cast<int>(i));
    }
  return std::vector<int>(coords.begin(), coords.end());
}

// First double in canonical row order whose part in column `from` exists and
// whose partner sits in column `to`; returns (row, term@from, partner@to).
struct FoundDouble {
  int row;
  int64_t term, partner;
};
FoundDouble find_double(const ReducedCert& rc, int from, int to, int skip_row) {
  for (int row : rc.double_rows) {
    if (row == skip_row) continue;
    const auto& r = rc.rights[row];
    if (r.size() != 2) continue;
    int64_t term = -1, partner = -1;
    for (const TaggedTerm& t : r) {
      if (t.left == from) term = t.elem;
      if (t.left == to) partner = t.elem;
    }
    if (term >= 0 && partner >= 0) return {row, term, partner};
  }
  fail(Errc::pattern_not_found, "lemma45: no inverse pair between the required atom columns");
}

Sequence remove_terms(const Sequence& s, std::initializer_list<int64_t> elems) {
  Sequence out = s;
  for (int64_t e : elems) out = out.remove_one(e);
  return out;
}

}  // namespace

WitnessReport lemma45_compose(int case_number, const WitnessReport& kw, const WitnessReport& lw) {
  {
    auto ck = support_coords(kw), cl = support_coords(lw);
    std::vector<int> inter;
    std::set_intersection(ck.begin(), ck.end(), cl.begin(), cl.end(), std::back_inserter(inter));
    if (!inter.empty()) fail(Errc::invalid_input, "lemma45: witnesses share coordinates");
  }
  require_same_group(kw.certificate.group, lw.certificate.group, "lemma45 ambient group");
  const Group& g = kw.certificate.group;

  WitnessReport rep;
  rep.name = "lemma45." + std::to_string(case_number);
  rep.params = {{"group", g.spec_string()},
                {"omega1", std::to_string(kw.claimed_bound)},
                {"omega2", std::to_string(lw.claimed_bound)}};
  rep.claimed_k = 3;

  if (case_number == 1) {
    int64_t v3k = kw.spread ? kw.spread->count3 : 0;
    int64_t v3l = lw.spread ? lw.spread->count3 : 0;
    if (v3k + v3l < 1)
      fail(Errc::spread_mismatch, "lemma45.1 needs a traversal on at least one side");
    rep.claimed_bound = kw.claimed_bound + lw.claimed_bound - 1;

    if (v3k >= 1 && v3l >= 1) {
      ReducedCert x = decompose(kw, "first"), y = decompose(lw, "second");
      int xr = x.traversal_rows.front(), yr = y.traversal_rows.front();
      int64_t a[3], b[3];
      for (const TaggedTerm& t : x.rights[xr]) a[t.left] = t.elem;
      for (const TaggedTerm& t : y.rights[yr]) b[t.left] = t.elem;

      std::vector<Sequence> left;
      for (int j = 0; j < 3; ++j)
        left.push_back(x.lefts[j].remove_one(a[j]).concat(y.lefts[j].remove_one(b[j]))
                           .add_term(g.add_i(a[j], b[j])));
      std::vector<std::vector<TaggedTerm>> expl;
      for (size_t i = 0; i < x.rights.size(); ++i)
        if (static_cast<int>(i) != xr) expl.push_back(x.rights[i]);
      for (size_t i = 0; i < y.rights.size(); ++i)
        if (static_cast<int>(i) != yr) expl.push_back(y.rights[i]);
      expl.push_back({{g.add_i(a[0], b[0]), 0}, {g.add_i(a[1], b[1]), 1}, {g.add_i(a[2], b[2]), 2}});
      rep.certificate = assemble_certificate(g, left, expl, {});
      finish(rep, v3k + v3l - 1);
      return rep;
    }

    // Exactly one side has traversals; arrange it as the X side.
    const WitnessReport& xw = v3k >= 1 ? kw : lw;
    const WitnessReport& yw = v3k >= 1 ? lw : kw;
    ReducedCert x = decompose(xw, "traversal side"), y = decompose(yw, "doubles side");
    int xr = x.traversal_rows.front();
    int64_t a[3];
    for (const TaggedTerm& t : x.rights[xr]) a[t.left] = t.elem;
    FoundDouble dx = find_double(y, 0, 1, -1);
    FoundDouble dy = find_double(y, 0, 2, dx.row);
    int64_t xx = dx.term, yy = dy.term;

    std::vector<Sequence> left(3, Sequence(g));
    left[0] = x.lefts[0].remove_one(a[0]).concat(remove_terms(y.lefts[0], {xx, yy}))
                  .add_term(g.sub_i(xx, a[1]))
                  .add_term(g.add_i(yy, g.add_i(a[0], a[1])));
    left[1] = x.lefts[1].remove_one(a[1]).concat(y.lefts[1].remove_one(g.neg_i(xx)))
                  .add_term(g.sub_i(a[1], xx));
    left[2] = x.lefts[2].remove_one(a[2]).concat(y.lefts[2].remove_one(g.neg_i(yy)))
                  .add_term(g.sub_i(a[2], yy));

    std::vector<std::vector<TaggedTerm>> expl;
    for (size_t i = 0; i < x.rights.size(); ++i)
      if (static_cast<int>(i) != xr) expl.push_back(x.rights[i]);
    for (size_t i = 0; i < y.rights.size(); ++i)
      if (static_cast<int>(i) != dx.row && static_cast<int>(i) != dy.row)
        expl.push_back(y.rights[i]);
    expl.push_back({{g.sub_i(xx, a[1]), 0}, {g.sub_i(a[1], xx), 1}});
    expl.push_back({{g.add_i(yy, g.add_i(a[0], a[1])), 0}, {g.sub_i(a[2], yy), 2}});
    rep.certificate = assemble_certificate(g, left, expl, {});
    finish(rep, v3k + v3l - 1);
    return rep;
  }

  if (case_number != 2) fail(Errc::invalid_input, "lemma45 case must be 1 or 2");
  if ((kw.spread && kw.spread->count3 != 0) || (lw.spread && lw.spread->count3 != 0))
    fail(Errc::spread_mismatch, "lemma45.2 needs doubles-only spreads on both sides");
  rep.claimed_bound = kw.claimed_bound + lw.claimed_bound - 2;

  ReducedCert x = decompose(kw, "first"), y = decompose(lw, "second");
  FoundDouble dxx = find_double(y, 0, 1, -1);
  FoundDouble dyy = find_double(y, 0, 2, dxx.row);
  FoundDouble daa = find_double(x, 1, 0, -1);
  FoundDouble dbb = find_double(x, 1, 2, daa.row);
  int64_t xx = dxx.term, yy = dyy.term, aa = daa.term, bb = dbb.term;

  std::vector<Sequence> left(3, Sequence(g));
  left[0] = x.lefts[0].remove_one(g.neg_i(aa)).concat(remove_terms(y.lefts[0], {xx, yy}))
                .add_term(g.sub_i(xx, aa))
                .add_term(yy);
  left[1] = remove_terms(x.lefts[1], {aa, bb}).concat(y.lefts[1].remove_one(g.neg_i(xx)))
                .add_term(g.sub_i(aa, xx))
                .add_term(bb);
  left[2] = x.lefts[2].remove_one(g.neg_i(bb)).concat(y.lefts[2].remove_one(g.neg_i(yy)))
                .add_term(g.neg_i(g.add_i(bb, yy)));

  std::vector<std::vector<TaggedTerm>> expl;
  for (size_t i = 0; i < x.rights.size(); ++i)
    if (static_cast<int>(i) != daa.row && static_cast<int>(i) != dbb.row)
      expl.push_back(x.rights[i]);
  for (size_t i = 0; i < y.rights.size(); ++i)
    if (static_cast<int>(i) != dxx.row && static_cast<int>(i) != dyy.row)
      expl.push_back(y.rights[i]);
  expl.push_back({{g.sub_i(xx, aa), 0}, {g.sub_i(aa, xx), 1}});
  expl.push_back({{yy, 0}, {bb, 1}, {g.neg_i(g.add_i(bb, yy)), 2}});
  rep.certificate = assemble_certificate(g, left, expl, {});
  finish(rep, 1);
  return rep;
}

WitnessReport lemma46_witness(const Group& ambient, const Block& b3) {
  if (b3.coords.size() != 3) fail(Errc::invalid_input, "lemma46 needs a 3-coordinate block");
  int64_t n = ambient.factors()[b3.coords[0]];
  for (int c : b3.coords)
    if (ambient.factors()[c] != n) fail(Errc::invalid_input, "lemma46 block is not homocyclic");

  const Group& g = ambient;
  auto basis = g.canonical_basis();
  int64_t e1 = basis[b3.coords[0]].index();
  int64_t e2 = basis[b3.coords[1]].index();
  int64_t e3 = basis[b3.coords[2]].index();
  auto lin = [&](int64_t c1, int64_t c2, int64_t c3) {
    return g.add_i(g.smul_i(c1, e1), g.add_i(g.smul_i(c2, e2), g.smul_i(c3, e3)));
  };

  const int64_t dstar = 3 * n - 2;
  WitnessReport rep;
  rep.name = "lemma46";
  rep.params = {{"group", g.spec_string()}, {"n", std::to_string(n)}};
  rep.claimed_k = 3;
  rep.claimed_bound = dstar + dstar / 2;

  Terms t1, t2, t3;
  if (n % 2 == 1) {
    int64_t c1 = lin(2, 2, 1), c2 = lin(-1, -1, (n + 1) / 2), c3 = lin(-1, -1, (n - 3) / 2);
    push(t1, e1, n - 1);
    push(t1, e2, n - 1);
    push(t1, lin(1, 1, 1), n - 1);
    push(t1, c1, 1);
    push(t2, g.neg_i(e1), n - 1);
    push(t2, e3, n - 1);
    push(t2, lin(-1, -1, -1), (n - 1) / 2);
    push(t2, lin(1, -1, 0), (n - 1) / 2);
    push(t2, c2, 1);
    push(t3, g.neg_i(e3), n - 1);
    push(t3, g.neg_i(e2), n - 1);
    push(t3, lin(-1, -1, -1), (n - 1) / 2);
    push(t3, lin(-1, 1, 0), (n - 1) / 2);
    push(t3, c3, 1);
    std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), Sequence(g, t3)};
    std::vector<std::vector<TaggedTerm>> expl{{{c1, 0}, {c2, 1}, {c3, 2}}};
    std::vector<TaggedTerm> pool;
    for (int j = 0; j < 3; ++j) {
      Sequence rem = left[j].remove_one(j == 0 ? c1 : j == 1 ? c2 : c3);
      tag_all(pool, rem, j);
    }
    rep.certificate = assemble_certificate(g, left, expl, std::move(pool));
    finish(rep, 1);
  } else {
    push(t1, e1, n - 1);
    push(t1, e2, n - 1);
    push(t1, lin(1, 1, 1), n - 2);
    push(t1, lin(2, 1, 1), 1);
    push(t1, lin(1, 2, 1), 1);
    push(t2, g.neg_i(e1), n - 1);
    push(t2, e3, n - 1);
    push(t2, lin(-1, -1, -1), n / 2 - 1);
    push(t2, lin(1, -1, 1), n / 2 - 1);
    push(t2, lin(-2, -1, -1), 1);
    push(t2, lin(1, -1, 2), 1);
    push(t3, g.neg_i(e3), n - 1);
    push(t3, g.neg_i(e2), n - 1);
    push(t3, lin(-1, -1, -1), n / 2 - 1);
    push(t3, lin(-1, 1, -1), n / 2 - 1);
    push(t3, lin(-1, -2, -1), 1);
    push(t3, lin(-1, 1, -2), 1);
    std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), Sequence(g, t3)};
    std::vector<TaggedTerm> pool;
    for (int j = 0; j < 3; ++j) tag_all(pool, left[j], j);
    rep.certificate = assemble_certificate(g, left, {}, std::move(pool));
    finish(rep, 0);
  }
  return rep;
}

WitnessReport lemma46_witness(int64_t n) {
  if (n < 2) fail(Errc::invalid_input, "lemma46 needs n >= 2");
  Group g = make_group({n, n, n});
  return lemma46_witness(g, Block{{0, 1, 2}});
}

WitnessReport theorem41_witness(const Group& g) {
  const auto& f = g.factors();
  if (f.empty()) fail(Errc::not_applicable, "trivial group");

  // Homocyclic runs, each split into chunks of 2 or 3 coordinates.
  std::vector<std::pair<int64_t, int>> runs;  // (value, count)
  for (int64_t v : f) {
    if (!runs.empty() && runs.back().first == v)
      ++runs.back().second;
    else
      runs.push_back({v, 1});
  }
  std::vector<Block> chunks;
  int coord = 0;
  for (auto [value, count] : runs) {
    if (count < 2) fail(Errc::not_applicable, "invariant factor with multiplicity 1");
    int rest = count;
    while (rest > 0) {
      int take = (rest % 2 == 1) ? 3 : 2;
      Block b;
      for (int i = 0; i < take; ++i) b.coords.push_back(coord++);
      chunks.push_back(b);
      rest -= take;
    }
  }

  auto base = [&](const Block& b) {
    if (b.coords.size() == 3) return lemma46_witness(g, b);
    Block left{{b.coords[0]}}, right{{b.coords[1]}};
    return lemma44_witness(g, left, right);
  };

  WitnessReport acc = base(chunks[0]);
  for (size_t i = 1; i < chunks.size(); ++i) {
    WitnessReport next = base(chunks[i]);
    bool both_doubles = acc.spread->count3 == 0 && next.spread->count3 == 0;
    acc = lemma45_compose(both_doubles ? 2 : 1, acc, next);
  }

  int64_t expect = g.d_star() + 1 + (g.d_star() + 1) / 2;  // D* + floor(D*/2)
  if (acc.claimed_bound != expect)
    fail(Errc::invalid_certificate, "theorem41: composed bound != D* + floor(D*/2)");
  acc.name = "theorem41";
  acc.params = {{"group", g.spec_string()}};
  return acc;
}

std::vector<WitnessReport> cor52_witnesses(int64_t m) {
  if (m < 2) fail(Errc::invalid_input, "cor52 needs m >= 2");
  Group g = make_group({m, 2 * m});
  BasisEnv b(g);
  int64_t e1 = b.e[1], e2 = b.e[2];
  auto lin = [&](int64_t c1, int64_t c2) { return g.add_i(g.smul_i(c1, e1), g.smul_i(c2, e2)); };
  const int64_t dav = 3 * m - 1;  // D(G) = D*(G) in rank two

  std::vector<WitnessReport> out;
  if (m == 2) {
    Terms t1, t2, t3;
    push(t1, e1, 1);
    push(t1, e2, 1);
    push(t1, lin(1, 1), 3);
    push(t2, e1, 1);
    push(t2, g.neg_i(e2), 3);
    push(t2, lin(1, -1), 1);
    push(t3, e2, 2);
    push(t3, lin(1, -1), 2);
    std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), Sequence(g, t3)};
    std::vector<TaggedTerm> pool;
    for (int j = 0; j < 3; ++j) tag_all(pool, left[j], j);
    WitnessReport w;
    w.name = "cor52.1";
    w.params = {{"m", "2"}};
    w.claimed_k = 3;
    w.claimed_bound = dav + dav / 2;  // 7
    w.certificate = assemble_certificate(g, left, {}, std::move(pool));
    finish(w, 0);
    out.push_back(std::move(w));
    return out;
  }

  // m >= 3: U1 U2 U3^2 U4 refactors into 2D + (m+1) inverse pairs.
  Terms t1, t2, t3, t4;
  push(t1, e1, m - 1);
  push(t1, e2, 2 * m - 1);
  push(t1, lin(1, 1), 1);
  push(t2, g.neg_i(e1), m - 1);
  push(t2, e2, 2 * m - 1);
  push(t2, lin(-1, 1), 1);
  push(t3, lin(1, 1), m - 1);
  push(t3, g.neg_i(e2), 2 * m - 1);
  push(t3, lin(1, m), 1);
  push(t4, lin(-1, -1), 2 * m - 1);
  push(t4, lin(-1, m), 2);
  push(t4, lin(1, -1), 1);
  Sequence u3(g, t3);
  std::vector<Sequence> left{Sequence(g, t1), Sequence(g, t2), u3, u3, Sequence(g, t4)};
  std::vector<TaggedTerm> pool;
  for (size_t j = 0; j < left.size(); ++j) tag_all(pool, left[j], static_cast<int>(j));
  WitnessReport w;
  w.name = "cor52.2";
  w.params = {{"m", std::to_string(m)}};
  w.claimed_k = 5;
  w.claimed_bound = 2 * dav + m + 1;
  w.certificate = assemble_certificate(g, left, {}, std::move(pool));
  finish(w, std::nullopt);
  out.push_back(std::move(w));
  return out;
}

WitnessReport cor53_witness(int64_t n) {
  if (n < 3) fail(Errc::not_applicable, "cor53 needs n >= 3");
  Group g = make_group({2, 2 * n});
  BasisEnv b(g);
  int64_t e1 = b.e[1], e2 = b.e[2];
  auto lin = [&](int64_t c1, int64_t c2) { return g.add_i(g.smul_i(c1, e1), g.smul_i(c2, e2)); };
  const int64_t dav = 2 * n + 1;

  auto u_i = [&](int64_t i) {
    Terms t;
    push(t, e2, 2 * n - 1);
    push(t, lin(1, -(i - 1)), 1);
    push(t, lin(1, i), 1);
    return Sequence(g, t);
  };
  Terms tv;
  push(tv, lin(1, 1), 2 * n - 1);
  push(tv, e2, 1);
  push(tv, e1, 1);
  Sequence v1(g, tv);

  std::vector<Sequence> left;
  Sequence nu1 = u_i(1).negate();
  for (int64_t i = 2; i <= n; ++i) {
    left.push_back(u_i(i));
    left.push_back(u_i(i));
    left.push_back(nu1);
    left.push_back(nu1);
  }
  left.push_back(u_i(1));
  left.push_back(u_i(2).negate());
  left.push_back(v1);

  // The length-3 atom W = e2 (e1+e2) (e1-2e2); the rest pairs perfectly.
  std::vector<int64_t> w_terms{e2, lin(1, 1), lin(1, -2)};
  std::vector<TaggedTerm> pool;
  for (size_t j = 0; j < left.size(); ++j) tag_all(pool, left[j], static_cast<int>(j));
  std::vector<std::vector<TaggedTerm>> expl(1);
  for (int64_t wt : w_terms) {
    bool taken = false;
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      if (it->elem == wt) {
        expl[0].push_back(*it);
        pool.erase(it);
        taken = true;
        break;
      }
    }
    if (!taken) fail(Errc::invalid_certificate, "cor53: W term missing from the product");
  }

  WitnessReport w;
  w.name = "cor53";
  w.params = {{"n", std::to_string(n)}};
  w.claimed_k = static_cast<int>(4 * n - 1);
  w.claimed_bound = (2 * n - 1) * dav + dav / 2;
  w.certificate = assemble_certificate(g, left, expl, std::move(pool));
  finish(w, std::nullopt);
  return w;
}

}  // namespace zsum
