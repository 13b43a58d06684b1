#pragma once

#include <cstdint>
#include <optional>

#include "zsum/constructions.hpp"

namespace zsum {

enum class C1Mode { first, exhaustive };

struct C1Result {
  std::optional<C1Witness> witness;
  bool exhausted = false;       // every (atom, ordered split) pair was scanned
  uint64_t splits_examined = 0;
  bool in_conjecture_scope = true;  // false for cyclic groups or D(G) < 4
};

struct C1Options {
  C1Mode mode = C1Mode::first;
  uint64_t budget = UINT64_MAX;  // ordered splits examined
  int workers = 0;
};

// Scans maximal atoms U in canonical order and ordered splits U = S1*S2
// (nonempty, |S1| ascending then lexicographic), looking for a nonzero
// element outside Sigma(S1) + Sigma(-S2).  Deterministic across worker
// counts; `first` returns the canonically least witness.
C1Result c1_search(const AtomSet& atoms, const C1Options& opts = {});

// Chains a witness through the companion-atom construction into a verified
// rho_3 >= D+2 certificate, using the canonically least missing element.
WitnessReport c1_to_rho3(const C1Witness& witness, int64_t davenport);

}  // namespace zsum
