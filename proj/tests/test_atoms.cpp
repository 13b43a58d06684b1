#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "zsum/atoms.hpp"
#include "zsum/reference.hpp"

using namespace zsum;

TEST_CASE("atoms of C3") {
  Group g = make_group({3});
  AtomSet set = enumerate_atoms(g);
  REQUIRE(set.atoms.size() == 4);
  CHECK(set.davenport == 3);
  CHECK(set.atoms[0] == Sequence::single(g, 0));
  CHECK(set.atoms[1] == Sequence::from_indices(g, {1, 2}));
  CHECK(set.atoms[2] == Sequence::single(g, 1, 3));
  CHECK(set.atoms[3] == Sequence::single(g, 2, 3));
}

TEST_CASE("atoms of C2+C2") {
  Group g = make_group({2, 2});
  AtomSet set = enumerate_atoms(g);
  CHECK(set.atoms.size() == 5);
  CHECK(set.davenport == 3);
  auto maximal = set.max_length_atoms();
  REQUIRE(maximal.size() == 1);
  CHECK(maximal[0] == Sequence::from_indices(g, {1, 2, 3}));
}

TEST_CASE("atoms of the trivial group") {
  Group g = make_group({});
  AtomSet set = enumerate_atoms(g);
  REQUIRE(set.atoms.size() == 1);
  CHECK(set.davenport == 1);
  CHECK(set.atoms[0] == Sequence::single(g, 0));
}

TEST_CASE("davenport constants for rank <= 2 groups equal D*") {
  CHECK(davenport(make_group({2, 4})) == 5);
  CHECK(davenport(make_group({2, 6})) == 7);
  CHECK(davenport(make_group({3, 3})) == 5);
  CHECK(d_small(make_group({3, 3})) == 4);
}

TEST_CASE("enumeration equals the filtered-multiset oracle") {
  for (const auto& moduli :
       {std::vector<int64_t>{2}, {5}, {2, 2}, {8}, {3, 3}, {2, 4}, {2, 2, 2}, {12}, {2, 6}}) {
    Group g = make_group(moduli);
    AtomSet set = enumerate_atoms(g);
    CHECK(set.davenport >= g.big_d_star());
    CHECK(set.davenport <= std::max<int64_t>(g.order(), 1));
    auto expected = reference::atoms_by_filter(g, static_cast<int>(set.davenport));
    CHECK(set.atoms == expected);
  }
}

TEST_CASE("max-length atoms cross-check") {
  Group g = make_group({3});
  auto maximal = enumerate_atoms(g).max_length_atoms();
  REQUIRE(maximal.size() == 2);
  CHECK(maximal[0] == Sequence::single(g, 1, 3));
  CHECK(maximal[1] == Sequence::single(g, 2, 3));

  Group h = make_group({2, 4});
  AtomSet hs = enumerate_atoms(h);
  uint64_t count = 0;
  enumerate_sequences(h, 5, 1u << 20, [&](const Sequence& s) {
    if (is_atom(s)) ++count;
    return true;
  });
  CHECK(hs.max_length_atoms().size() == count);
}

TEST_CASE("atom sets are closed under negation") {
  for (const auto& moduli : {std::vector<int64_t>{7}, {2, 4}, {3, 3}}) {
    Group g = make_group(moduli);
    AtomSet set = enumerate_atoms(g);
    for (const Sequence& a : set.atoms) CHECK(set.find(a.negate()) != nullptr);
  }
}

TEST_CASE("length cap") {
  Group g = make_group({3, 3});
  AtomSet capped = enumerate_atoms(g, {.max_len = 3});
  CHECK(!capped.complete);
  CHECK(capped.davenport == 3);
  AtomSet full = enumerate_atoms(g);
  for (const Sequence& a : capped.atoms) CHECK(a.length() <= 3);
  uint64_t expect = 0;
  for (const Sequence& a : full.atoms)
    if (a.length() <= 3) ++expect;
  CHECK(capped.atoms.size() == expect);
}

TEST_CASE("worker count does not change the result") {
  Group g = make_group({2, 6});
  AtomSet one = enumerate_atoms(g, {.workers = 1});
  AtomSet two = enumerate_atoms(g, {.workers = 2});
  CHECK(one.atoms == two.atoms);
  CHECK(one.davenport == two.davenport);
}

TEST_CASE("budget aborts cleanly") {
  Group g = make_group({3, 6});
  CHECK_THROWS_AS(enumerate_atoms(g, {.budget = 10}), Error);
}

TEST_CASE("atom cache round-trip is bit-exact") {
  Group g = make_group({2, 4});
  AtomSet set = enumerate_atoms(g);
  std::string json = atom_cache_to_json(set);
  AtomSet back = atom_cache_from_json(json, /*validate=*/true);
  CHECK(back.atoms == set.atoms);
  CHECK(back.davenport == set.davenport);
  CHECK(atom_cache_to_json(back) == json);

  // corrupting an entry fails validation on load
  std::string bad = json;
  auto pos = bad.find("\"count\"");
  REQUIRE(pos != std::string::npos);
  CHECK_THROWS_AS(atom_cache_from_json(bad.replace(pos + 9, 1, "9"), true), Error);
}

TEST_CASE("cache directory round-trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "zsum-test-cache";
  fs::remove_all(dir);
  Group g = make_group({3, 3});
  bool hit = true;
  AtomSet first = load_or_enumerate_atoms(g, dir.string(), {}, &hit);
  CHECK(!hit);
  AtomSet second = load_or_enumerate_atoms(g, dir.string(), {}, &hit);
  CHECK(hit);
  CHECK(first.atoms == second.atoms);
  fs::remove_all(dir);
}
