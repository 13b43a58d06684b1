#include <doctest.h>

#include <algorithm>

#include "zsum/reference.hpp"
#include "zsum/sequence.hpp"

using namespace zsum;

namespace {

Sequence seq(const Group& g, std::initializer_list<std::vector<int64_t>> coords) {
  std::vector<Element> elems;
  for (const auto& c : coords) elems.push_back(g.element(c));
  return Sequence::from_elements(g, elems);
}

}  // namespace

TEST_CASE("sigma") {
  Group g = make_group({2, 2});
  CHECK(Sequence(g).sigma() == g.zero());
  CHECK(seq(g, {{1, 0}, {0, 1}, {1, 1}}).sigma() == g.zero());
  Group c3 = make_group({3});
  CHECK(seq(c3, {{1}, {1}, {2}}).sigma() == c3.element({1}));
}

TEST_CASE("subsums by closure") {
  Group c3 = make_group({3});
  CHECK(subsums(Sequence(c3)).members.empty());
  CHECK(subsums(seq(c3, {{1}, {1}})).members == std::vector<int64_t>{1, 2});

  // S1 = e2^(n2-1) over C2+C4: subsums are the nonzero multiples of e2 and
  // miss -e1+e2.
  Group g = make_group({2, 4});
  Sequence s1 = Sequence::single(g, g.element({0, 1}).index(), 3);
  auto got = subsums(s1);
  CHECK(got.members == std::vector<int64_t>{g.element({0, 1}).index(), g.element({0, 2}).index(),
                                            g.element({0, 3}).index()});
  CHECK(!got.contains(g.element({1, 1}).index()));
}

TEST_CASE("subsums closure equals naive enumeration") {
  for (const auto& moduli : {std::vector<int64_t>{5}, {2, 4}, {2, 2, 2}, {12}, {3, 3}}) {
    Group g = make_group(moduli);
    uint64_t seed = 99;
    auto rnd = [&](int64_t n) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<int64_t>((seed >> 33) % n);
    };
    for (int trial = 0; trial < 40; ++trial) {
      int len = static_cast<int>(rnd(12)) + 1;
      std::vector<int64_t> elems;
      for (int i = 0; i < len; ++i) elems.push_back(rnd(g.order()));
      Sequence s = Sequence::from_indices(g, elems);
      CHECK(subsums(s).members == reference::subsums_naive(s));
    }
  }
}

TEST_CASE("zero-sum-freeness") {
  Group g = make_group({2, 4});
  CHECK(is_zero_sum_free(Sequence(g)));
  Sequence gneg = seq(g, {{0, 1}, {0, 3}});
  CHECK(!is_zero_sum_free(gneg));
  // e1^(m-1) e2^(mn-1) over C_m + C_mn, the classical d*(G)-length witness
  Sequence witness = Sequence::single(g, g.element({1, 0}).index(), 1)
                         .concat(Sequence::single(g, g.element({0, 1}).index(), 3));
  CHECK(is_zero_sum_free(witness));
  CHECK(witness.length() == g.d_star());
  CHECK(reference::is_zero_sum_free_naive(witness));
}

TEST_CASE("is_atom") {
  Group g = make_group({2, 2});
  CHECK(is_atom(Sequence::single(g, 0)));
  CHECK(is_atom(seq(g, {{1, 0}, {0, 1}, {1, 1}})));
  CHECK(!is_atom(Sequence(g)));

  Group h = make_group({2, 4});
  // e2^m with m*e2 != 0 is not even zero-sum
  CHECK(!is_atom(Sequence::single(h, h.element({0, 1}).index(), 2)));
  // 0 attached to anything nontrivial is not minimal
  CHECK(!is_atom(seq(h, {{0, 0}, {0, 1}, {0, 3}})));
}

TEST_CASE("is_atom matches the exhaustive-subsequence definition") {
  for (const auto& moduli : {std::vector<int64_t>{6}, {2, 4}, {3, 3}}) {
    Group g = make_group(moduli);
    enumerate_sequences(g, 4, 1u << 20, [&](const Sequence& s) {
      CHECK(is_atom(s) == reference::is_atom_naive(s));
      return true;
    });
  }
}

TEST_CASE("atoms are closed under negation") {
  Group g = make_group({3, 3});
  enumerate_sequences(g, 3, 1u << 20, [&](const Sequence& s) {
    if (is_atom(s)) CHECK(is_atom(s.negate()));
    return true;
  });
}

TEST_CASE("multiset operations") {
  Group g = make_group({2, 2});
  Sequence s = seq(g, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(s.negate() == s);  // 2-torsion

  Group c5 = make_group({5});
  Sequence a = seq(c5, {{1}, {1}, {2}});
  Sequence b = seq(c5, {{1}, {2}, {2}});
  CHECK(gcd_seq(a, b) == seq(c5, {{1}, {2}}));
  CHECK(a.remove(seq(c5, {{1}})) == seq(c5, {{1}, {2}}));
  CHECK_THROWS_AS(a.remove(seq(c5, {{3}})), Error);
  CHECK(a.remove(b.remove(seq(c5, {{2}, {2}}))).concat(b.remove(seq(c5, {{2}, {2}}))) == a);

  Sequence c = a.concat(b);
  CHECK(c.length() == 6);
  CHECK(c.sigma() == c5.add(a.sigma(), b.sigma()));
  CHECK(a.multiplicity(c5.element({1}).index()) == 2);
  CHECK(a.support() == std::vector<int64_t>{1, 2});
}

TEST_CASE("sigma is additive over concat") {
  Group g = make_group({4, 4});
  uint64_t seed = 7;
  auto rnd = [&](int64_t n) {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int64_t>((seed >> 33) % n);
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int64_t> xs, ys;
    for (int i = 0; i < 5; ++i) xs.push_back(rnd(g.order()));
    for (int i = 0; i < 3; ++i) ys.push_back(rnd(g.order()));
    Sequence s = Sequence::from_indices(g, xs), t = Sequence::from_indices(g, ys);
    CHECK(s.concat(t).sigma_i() == g.add_i(s.sigma_i(), t.sigma_i()));
  }
}

TEST_CASE("zero-sum-free sequences have at least |S| subsums") {
  for (const auto& moduli : {std::vector<int64_t>{8}, {2, 4}, {3, 3}}) {
    Group g = make_group(moduli);
    for (int len = 1; len <= 4; ++len) {
      enumerate_sequences(g, len, 1u << 20, [&](const Sequence& s) {
        if (is_zero_sum_free(s)) CHECK(subsum_bitset(s).count() >= s.length());
        return true;
      });
    }
  }
}

TEST_CASE("enumerate_sequences") {
  Group c2 = make_group({2});
  CHECK(enumerate_sequences_vec(c2, 0, 100).size() == 1);
  CHECK(enumerate_sequences_vec(c2, 0, 100)[0].empty());
  CHECK(enumerate_sequences_vec(c2, 2, 100).size() == 3);

  CHECK(multiset_count(8, 5) == 792);  // C(12,5): length-5 multisets over C2+C4
  Group g = make_group({2, 4});
  CHECK(enumerate_sequences_vec(g, 5, 1000).size() == 792);
  CHECK_THROWS_AS(enumerate_sequences(g, 5, 100, [](const Sequence&) { return true; }), Error);

  // deterministic canonical order
  auto all = enumerate_sequences_vec(make_group({3}), 2, 100);
  REQUIRE(all.size() == 6);
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("sequence text format round-trips") {
  Group g = make_group({2, 4});
  Sequence s(g, {{static_cast<int32_t>(g.element({1, 0}).index()), 1},
                 {static_cast<int32_t>(g.element({0, 1}).index()), 3},
                 {static_cast<int32_t>(g.element({1, 1}).index()), 1}});
  CHECK(s.to_string() == "(0,1)^3 (1,0)^1 (1,1)^1");
  CHECK(Sequence::parse(g, s.to_string()) == s);
  CHECK(Sequence(g).to_string() == "");
  CHECK(Sequence::parse(g, "") == Sequence(g));

  Group c3 = make_group({3});
  Sequence t = Sequence::single(c3, 2, 3);
  CHECK(Sequence::parse(c3, t.to_string()) == t);
  CHECK_THROWS_AS(Sequence::parse(g, "(1,0"), Error);
}

TEST_CASE("canonical order sorts by length then expanded lex") {
  Group g = make_group({3});
  Sequence a = Sequence::single(g, 1, 2);       // (1)^2
  Sequence b = Sequence::single(g, 2, 1);       // (2)^1
  Sequence c = seq(g, {{1}, {2}});
  CHECK(b < a);       // shorter first
  CHECK(a < c);       // 1,1 < 1,2
  CHECK(a.compare(a) == 0);
}
