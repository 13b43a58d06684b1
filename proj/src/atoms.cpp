#include "zsum/atoms.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsum {

namespace {

constexpr int kCacheFormatVersion = 1;

struct DfsState {
  const Group* g;
  std::optional<int> max_len;
  uint64_t local_nodes = 0;
  std::atomic<uint64_t>* total_nodes;
  uint64_t budget;
  std::atomic<bool>* aborted;
  std::unordered_set<Sequence>* found;

  std::vector<int64_t> prefix;  // nondecreasing term indices, zero-sum free
  int64_t prefix_sum = 0;
  // Per-depth closure buffers; reserved for the deepest possible prefix up
  // front so references held across recursion never move.
  std::vector<SubsumBitset> scratch;

  SubsumBitset& scratch_at(size_t depth) {
    if (scratch.capacity() <= depth) scratch.reserve(static_cast<size_t>(g->order()) + 2);
    while (scratch.size() <= depth) scratch.emplace_back(*g);
    return scratch[depth];
  }

  bool over_budget() {
    if (++local_nodes % 1024 == 0) {
      if (total_nodes->fetch_add(1024, std::memory_order_relaxed) + 1024 > budget)
        aborted->store(true, std::memory_order_relaxed);
    }
    return aborted->load(std::memory_order_relaxed);
  }

  void emit_candidate() {
    // prefix is zero-sum free, so -sigma(prefix) != 0 and closing it yields a
    // zero-sum candidate; keep it only if genuinely minimal.
    int64_t closing = g->neg_i(prefix_sum);
    if (max_len && static_cast<int64_t>(prefix.size()) + 1 > *max_len) return;
    Sequence cand = Sequence::from_indices(*g, prefix).add_term(closing);
    if (is_atom(cand)) found->insert(std::move(cand));
  }

  void dfs(const SubsumBitset& sums, int64_t min_elem, size_t depth) {
    if (over_budget()) return;
    emit_candidate();
    if (max_len && static_cast<int64_t>(prefix.size()) + 1 >= *max_len) return;
    for (int64_t e = min_elem; e < g->order(); ++e) {
      SubsumBitset& next = scratch_at(depth);
      next.copy_from(sums);
      next.add_term(e);
      if (next.contains_zero()) continue;  // prefix no longer zero-sum free
      prefix.push_back(e);
      int64_t save = prefix_sum;
      prefix_sum = g->add_i(prefix_sum, e);
      dfs(next, e, depth + 1);
      prefix_sum = save;
      prefix.pop_back();
    }
  }
};

}  // namespace

const Sequence* AtomSet::find(const Sequence& s) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), s);
  if (it != atoms.end() && *it == s) return &*it;
  return nullptr;
}

std::vector<Sequence> AtomSet::max_length_atoms() const {
  std::vector<Sequence> out;
  for (const Sequence& a : atoms)
    if (a.length() == davenport) out.push_back(a);
  return out;
}

AtomSet enumerate_atoms(const Group& g, const EnumerateOptions& opts) {
  if (opts.max_len && *opts.max_len < 0) fail(Errc::invalid_input, "negative length cap");

  std::atomic<uint64_t> total_nodes{0};
  std::atomic<bool> aborted{false};
  const int64_t n = g.order();

  int workers = opts.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  std::vector<std::unordered_set<Sequence>> local(workers, std::unordered_set<Sequence>{});

  // Partition the search on the first DFS term; the merge below is a sorted
  // union, so the result does not depend on the schedule.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (int64_t first = 1; first < n; ++first) {
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    if (aborted.load(std::memory_order_relaxed)) continue;
    DfsState st;
    st.g = &g;
    st.max_len = opts.max_len;
    st.total_nodes = &total_nodes;
    st.budget = opts.budget;
    st.aborted = &aborted;
    st.found = &local[tid];
    SubsumBitset sums(g);
    sums.add_term(first);
    if (sums.contains_zero()) continue;
    st.prefix.push_back(first);
    st.prefix_sum = first;
    st.dfs(sums, first, 1);
  }

  if (aborted.load())
    fail(Errc::enumeration_too_large,
         "zero-sum-free prefix budget " + std::to_string(opts.budget) + " exceeded");

  AtomSet set;
  set.group = g;
  set.max_len = opts.max_len;
  set.complete = !opts.max_len;
  if (!opts.max_len || *opts.max_len >= 1) set.atoms.push_back(Sequence::single(g, 0));
  for (auto& bucket : local)
    for (const Sequence& s : bucket) set.atoms.push_back(s);
  std::sort(set.atoms.begin(), set.atoms.end());
  set.atoms.erase(std::unique(set.atoms.begin(), set.atoms.end()), set.atoms.end());
  for (const Sequence& a : set.atoms) set.davenport = std::max(set.davenport, a.length());
  return set;
}

int64_t davenport(const Group& g, const EnumerateOptions& opts) {
  return enumerate_atoms(g, opts).davenport;
}

int64_t d_small(const Group& g, const EnumerateOptions& opts) { return davenport(g, opts) - 1; }

std::string atom_cache_to_json(const AtomSet& set) {
  nlohmann::json j;
  j["format_version"] = kCacheFormatVersion;
  j["group"] = set.group.spec_string();
  j["max_len"] = set.max_len ? nlohmann::json(*set.max_len) : nlohmann::json("full");
  j["count"] = set.atoms.size();
  nlohmann::json atoms = nlohmann::json::array();
  for (const Sequence& a : set.atoms) {
    nlohmann::json entry = nlohmann::json::array();
    for (const auto& t : a.terms()) entry.push_back({t.elem, t.mult});
    atoms.push_back(entry);
  }
  j["atoms"] = std::move(atoms);
  return j.dump(2);
}

AtomSet atom_cache_from_json(const std::string& text, bool validate) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("atom cache: ") + e.what());
  }
  if (!j.contains("format_version") || j["format_version"].get<int>() != kCacheFormatVersion)
    fail(Errc::parse_error, "atom cache: unsupported format version");
  AtomSet set;
  set.group = parse_group_spec(j.at("group").get<std::string>());
  if (j.at("max_len").is_string())
    set.max_len = std::nullopt;
  else
    set.max_len = j.at("max_len").get<int>();
  set.complete = !set.max_len;
  for (const auto& entry : j.at("atoms")) {
    std::vector<Sequence::Term> terms;
    for (const auto& pair : entry)
      terms.push_back({pair.at(0).get<int32_t>(), pair.at(1).get<int32_t>()});
    Sequence s(set.group, std::move(terms));
    if (validate && !is_atom(s)) fail(Errc::parse_error, "atom cache: entry fails the atom check");
    set.davenport = std::max(set.davenport, s.length());
    set.atoms.push_back(std::move(s));
  }
  if (j.at("count").get<size_t>() != set.atoms.size())
    fail(Errc::parse_error, "atom cache: count mismatch");
  if (!std::is_sorted(set.atoms.begin(), set.atoms.end()))
    fail(Errc::parse_error, "atom cache: atoms not in canonical order");
  return set;
}

void write_atom_cache(const AtomSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_input, "cannot write " + path);
  out << atom_cache_to_json(set);
}

AtomSet read_atom_cache(const std::string& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_input, "cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return atom_cache_from_json(text, validate);
}

std::string atom_cache_filename(const Group& g, std::optional<int> max_len) {
  std::string spec = g.spec_string();
  for (char& c : spec)
    if (c == ',') c = '_';
  std::string cap = max_len ? std::to_string(*max_len) : "full";
  return "atoms-v" + std::to_string(kCacheFormatVersion) + "-" + spec + "-" + cap + ".json";
}

AtomSet load_or_enumerate_atoms(const Group& g, const std::string& cache_dir,
                                const EnumerateOptions& opts, bool* cache_hit) {
  namespace fs = std::filesystem;
  if (cache_hit) *cache_hit = false;
  if (cache_dir.empty()) return enumerate_atoms(g, opts);
  fs::path path = fs::path(cache_dir) / atom_cache_filename(g, opts.max_len);
  if (fs::exists(path)) {
    AtomSet set = read_atom_cache(path.string(), /*validate=*/false);
    if (set.group.same_as(g)) {
      if (cache_hit) *cache_hit = true;
      return set;
    }
  }
  AtomSet set = enumerate_atoms(g, opts);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (!ec) write_atom_cache(set, path.string());
  return set;
}

}  // namespace zsum
