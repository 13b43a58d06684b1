#include <doctest.h>

#include "zsum/c1search.hpp"
#include "zsum/factorize.hpp"

using namespace zsum;

TEST_CASE("cyclic groups have no split witness") {
  for (int64_t q : {4, 5, 6, 7}) {
    CAPTURE(q);
    AtomSet atoms = enumerate_atoms(make_group({q}));
    C1Result r = c1_search(atoms, {.mode = C1Mode::exhaustive});
    CHECK(!r.witness.has_value());
    CHECK(r.exhausted);
    CHECK(!r.in_conjecture_scope);  // cyclic
  }
}

TEST_CASE("C2+C2 has no split witness") {
  AtomSet atoms = enumerate_atoms(make_group({2, 2}));
  C1Result r = c1_search(atoms, {.mode = C1Mode::exhaustive});
  CHECK(!r.witness.has_value());
  CHECK(r.exhausted);
  CHECK(!r.in_conjecture_scope);  // D = 3 < 4
}

TEST_CASE("witnesses exist for C2+C4, C3+C3 and C2^3 and chain to rho3 >= D+2") {
  for (const auto& moduli : {std::vector<int64_t>{2, 4}, {3, 3}, {2, 2, 2}}) {
    CAPTURE(moduli.size());
    AtomSet atoms = enumerate_atoms(make_group(moduli));
    C1Result r = c1_search(atoms);
    REQUIRE(r.witness.has_value());
    CHECK(r.in_conjecture_scope);
    const C1Witness& w = *r.witness;
    CHECK(w.U.length() == atoms.davenport);
    CHECK(w.S1.concat(w.S2) == w.U);
    CHECK(!subsum_bitset(w.S1).contains(w.missing.index()));
    CHECK(!subsum_bitset(w.S2.negate()).contains(w.missing.index()));

    WitnessReport rep = c1_to_rho3(w, atoms.davenport);
    CHECK(rep.verified);
    CHECK(rep.claimed_bound == atoms.davenport + 2);
    CHECK(rep.claimed_bound <= rho3_exact(atoms).value);
  }
}

TEST_CASE("search is deterministic across worker counts and modes") {
  AtomSet atoms = enumerate_atoms(make_group({3, 3}));
  C1Result a = c1_search(atoms, {.mode = C1Mode::first, .workers = 1});
  C1Result b = c1_search(atoms, {.mode = C1Mode::first, .workers = 2});
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->U == b.witness->U);
  CHECK(a.witness->S1 == b.witness->S1);
  CHECK(a.witness->missing == b.witness->missing);

  C1Result c = c1_search(atoms, {.mode = C1Mode::exhaustive, .workers = 2});
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->U == a.witness->U);
  CHECK(c.witness->S1 == a.witness->S1);
  CHECK(c.exhausted);
}

TEST_CASE("budget exceeds cleanly") {
  AtomSet atoms = enumerate_atoms(make_group({3, 3}));
  CHECK_THROWS_AS(c1_search(atoms, {.mode = C1Mode::exhaustive, .budget = 2}), Error);
}
