#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsum/factorize.hpp"

namespace zsum {

// A named witness construction: a verified certificate plus the bound it
// claims (rho_k >= value) and, where applicable, the spread it exhibits.
struct WitnessReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  Certificate certificate;
  int claimed_k = 3;
  int64_t claimed_bound = 0;
  std::optional<Spread> spread;
  bool verified = false;
};

// A maximal-length atom with a split whose subsum union misses a nonzero
// element; chains into a rho_3 >= D+2 certificate.
struct C1Witness {
  Sequence U, S1, S2;
  Element missing;
};

// Coordinate block of the ambient group (disjoint blocks model internal
// direct sums; the composition lemmas never need general subgroups).
struct Block {
  std::vector<int> coords;
};

Group block_group(const Group& ambient, const Block& b);
Sequence lift_to_ambient(const Group& ambient, const Block& b, const Sequence& block_seq);

// From a maximal atom U = S1*S2 and g outside Sigma(S1), Sigma(-S2) and {0},
// builds the two companion atoms and the (D+2)-doubles certificate.
WitnessReport prop32_construction(const Sequence& u, const Sequence& s1, const Sequence& s2,
                                  const Element& g, int64_t davenport);

// Three explicit atoms giving rho_3 >= D*(G) + n_s when the invariant factor
// chain has a strict step n_s < n_{s+1} = ... = n_r.
WitnessReport prop35_part1(const Group& g);

// The canonical split witness for noncyclic groups with D(G) = D*(G) >= 4.
C1Witness prop35_part2(const Group& g);

// The C1 witness over C_2^4 + C_{2n} for odd n >= 71 (D = D*+1 is a
// configured external input there, not recomputed).
C1Witness prop35_part3(int64_t n);

// rho_3 >= 2 D(G1) + D(G2) - 2 from maximal atoms of two disjoint blocks,
// with exactly one traversal.
WitnessReport lemma44_witness(const Group& ambient, const Block& b1, const Block& b2,
                              const Sequence& v, const Sequence& w, int64_t dav1, int64_t dav2);
WitnessReport lemma44_witness(const Group& ambient, const Block& b1, const Block& b2);

// Composition of two block witnesses with spreads in F({2,3}):
// case 1 needs a traversal on at least one side (bound w1+w2-1),
// case 2 needs doubles-only spreads on both (bound w1+w2-2).
WitnessReport lemma45_compose(int case_number, const WitnessReport& k, const WitnessReport& l);

// rho_3 >= D* + floor(D*/2) over C_n^3; traversal count 1 for odd n,
// doubles-only for even n.
WitnessReport lemma46_witness(const Group& ambient, const Block& b3);
WitnessReport lemma46_witness(int64_t n);

// Folds lemma 4.4/4.6 base blocks through lemma 4.5 over a group whose
// invariant factors split into homocyclic runs of multiplicity >= 2.
WitnessReport theorem41_witness(const Group& g);

// Over C_m + C_{2m}: m = 2 gives the rho_3 >= 7 triple, m >= 3 the
// rho_5 >= 2D + (m+1) certificate.
std::vector<WitnessReport> cor52_witnesses(int64_t m);

// Over C_2 + C_{2n}, n >= 3: the (4n-1)-atom product refactoring into
// (2n-1)D + floor(D/2) atoms.
WitnessReport cor53_witness(int64_t n);

}  // namespace zsum
