#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "zsum/group.hpp"

using namespace zsum;

namespace {

// Element-order profile of the raw direct product, computed without any
// invariant-factor machinery.
std::map<int64_t, int64_t> order_profile_raw(const std::vector<int64_t>& moduli) {
  std::map<int64_t, int64_t> profile;
  std::vector<int64_t> tuple(moduli.size(), 0);
  while (true) {
    int64_t ord = 1;
    for (size_t i = 0; i < moduli.size(); ++i)
      ord = std::lcm(ord, moduli[i] / std::gcd(tuple[i], moduli[i]));
    ++profile[ord];
    size_t pos = moduli.size();
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < moduli[pos]) break;
      tuple[pos] = 0;
      if (pos == 0) return profile;
    }
    if (moduli.empty()) return profile;
  }
}

std::map<int64_t, int64_t> order_profile(const Group& g) {
  std::map<int64_t, int64_t> profile;
  for (int64_t i = 0; i < g.order(); ++i) ++profile[g.order_of_i(i)];
  return profile;
}

}  // namespace

TEST_CASE("make_group normalizes to the invariant factor chain") {
  Group trivial = make_group({});
  CHECK(trivial.order() == 1);
  CHECK(trivial.rank() == 0);
  CHECK(trivial.exponent() == 1);

  Group g24 = make_group({2, 4});
  CHECK(g24.factors() == std::vector<int64_t>{2, 4});
  CHECK(g24.order() == 8);

  Group g62 = make_group({6, 2});
  CHECK(g62.factors() == std::vector<int64_t>{2, 6});

  // idempotent on normalized input
  CHECK(make_group(g62.factors()).factors() == g62.factors());

  CHECK(make_group({4, 6}).factors() == std::vector<int64_t>{2, 12});
  CHECK(make_group({2, 3}).factors() == std::vector<int64_t>{6});

  CHECK_THROWS_AS(make_group({1}), Error);
  CHECK_THROWS_AS(make_group({0, 3}), Error);
  CHECK_THROWS_AS(make_group({100000, 100000, 100000, 100000}), Error);  // order > 2^31
}

TEST_CASE("normalization preserves the element-order profile") {
  std::vector<std::vector<int64_t>> cases = {
      {6, 2}, {4, 6}, {2, 3, 4}, {12, 10}, {8, 2, 2}, {9, 3}, {2, 2, 2, 2}, {30, 6}};
  for (const auto& moduli : cases) {
    CAPTURE(moduli);
    Group g = make_group(moduli);
    int64_t raw_order = 1;
    for (int64_t m : moduli) raw_order *= m;
    REQUIRE(g.order() == raw_order);
    CHECK(order_profile(g) == order_profile_raw(moduli));
  }
}

TEST_CASE("element arithmetic") {
  Group g = make_group({2, 4});
  Element a = g.element({1, 3});
  Element b = g.element({1, 2});
  CHECK(g.add(a, b) == g.element({0, 1}));
  CHECK(g.neg(g.zero()) == g.zero());
  Group c3 = make_group({3});
  CHECK(c3.add(c3.element({2}), c3.element({2})) == c3.element({1}));

  CHECK_THROWS_AS(g.add(a, c3.element({1})), Error);
}

TEST_CASE("order_of") {
  Group g = make_group({2, 4});
  CHECK(g.order_of(g.zero()) == 1);
  CHECK(g.order_of(g.element({1, 0})) == 2);
  // matches repeated addition
  Element x = g.element({1, 1});
  Element acc = x;
  int64_t k = 1;
  while (acc != g.zero()) {
    acc = g.add(acc, x);
    ++k;
  }
  CHECK(g.order_of(x) == k);
  CHECK(k == 4);
}

TEST_CASE("order_of divides exponent and kills the element") {
  for (const auto& moduli : {std::vector<int64_t>{8}, {3, 6}, {2, 2, 4}}) {
    Group g = make_group(moduli);
    for (int64_t i = 0; i < g.order(); ++i) {
      int64_t ord = g.order_of_i(i);
      CHECK(g.exponent() % ord == 0);
      CHECK(g.smul_i(ord, i) == 0);
    }
  }
}

TEST_CASE("add is commutative/associative, neg is an involution") {
  Group g = make_group({3, 6});
  uint64_t seed = 12345;
  auto rnd = [&] {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int64_t>((seed >> 33) % g.order());
  };
  for (int trial = 0; trial < 200; ++trial) {
    int64_t a = rnd(), b = rnd(), c = rnd();
    CHECK(g.add_i(a, b) == g.add_i(b, a));
    CHECK(g.add_i(g.add_i(a, b), c) == g.add_i(a, g.add_i(b, c)));
    CHECK(g.neg_i(g.neg_i(a)) == a);
    CHECK(g.add_i(a, g.neg_i(a)) == 0);
  }
}

TEST_CASE("canonical basis") {
  Group g = make_group({2, 4});
  auto basis = g.canonical_basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == g.element({1, 0}));
  CHECK(basis[1] == g.element({0, 1}));
  CHECK(g.order_of(basis[0]) == 2);
  CHECK(g.order_of(basis[1]) == 4);
  CHECK(make_group({}).canonical_basis().empty());
  CHECK(make_group({3}).canonical_basis().size() == 1);
}

TEST_CASE("d_star and D_star") {
  CHECK(make_group({2, 4}).big_d_star() == 5);
  CHECK(make_group({}).big_d_star() == 1);
  CHECK(make_group({}).d_star() == 0);
  CHECK(make_group({2, 2, 2, 2, 6}).big_d_star() == 10);
  for (const auto& moduli : {std::vector<int64_t>{5}, {2, 6}, {3, 3}}) {
    Group g = make_group(moduli);
    CHECK(g.d_star() + 1 == g.big_d_star());
  }
}

TEST_CASE("all_elements enumerates in lexicographic order") {
  Group c2 = make_group({2});
  auto e = c2.all_elements();
  REQUIRE(e.size() == 2);
  CHECK(e[0] == c2.zero());

  Group g = make_group({2, 2});
  CHECK(g.all_elements().size() == 4);
  CHECK(make_group({3, 6}).all_elements().size() == 18);

  // index order is coordinate-lexicographic order
  Group h = make_group({2, 4});
  auto all = h.all_elements();
  for (size_t i = 1; i < all.size(); ++i) {
    auto prev = all[i - 1].coords(), cur = all[i].coords();
    CHECK(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
  }
}

TEST_CASE("group spec strings") {
  CHECK(parse_group_spec("2,4").factors() == std::vector<int64_t>{2, 4});
  CHECK(parse_group_spec("6,2").spec_string() == "2,6");
  CHECK(parse_group_spec("").order() == 1);
  CHECK_THROWS_AS(parse_group_spec("2,x"), Error);
}
