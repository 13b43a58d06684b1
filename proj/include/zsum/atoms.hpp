#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsum/sequence.hpp"

namespace zsum {

// Enumerated minimal zero-sum sequences of a group, canonically sorted.
struct AtomSet {
  Group group;
  std::vector<Sequence> atoms;       // duplicate-free, canonical order
  int64_t davenport = 0;             // max atom length (exact when complete)
  bool complete = true;              // false when a length cap was applied
  std::optional<int> max_len;        // the cap used, if any

  const Sequence* find(const Sequence& s) const;
  std::vector<Sequence> max_length_atoms() const;
};

struct EnumerateOptions {
  std::optional<int> max_len;
  uint64_t budget = 100'000'000;  // zero-sum-free prefixes visited
  int workers = 0;                // 0 = library default
};

// Depth-first generation of zero-sum-free sequences with nondecreasing terms,
// closing each with -sigma and deduplicating by canonical form. Deterministic
// output order, independent of worker count.
AtomSet enumerate_atoms(const Group& g, const EnumerateOptions& opts = {});

int64_t davenport(const Group& g, const EnumerateOptions& opts = {});
int64_t d_small(const Group& g, const EnumerateOptions& opts = {});

// Atom cache round-trip (JSON document per the external interface).
std::string atom_cache_to_json(const AtomSet& set);
AtomSet atom_cache_from_json(const std::string& text, bool validate = true);
void write_atom_cache(const AtomSet& set, const std::string& path);
AtomSet read_atom_cache(const std::string& path, bool validate = true);

// Cache key: group spec + length cap + format version.
std::string atom_cache_filename(const Group& g, std::optional<int> max_len);

// Loads from cache_dir when present, otherwise enumerates and writes back.
// cache_hit reports which happened.
AtomSet load_or_enumerate_atoms(const Group& g, const std::string& cache_dir,
                                const EnumerateOptions& opts, bool* cache_hit = nullptr);

}  // namespace zsum
