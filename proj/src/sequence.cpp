#include "zsum/sequence.hpp"

#include <algorithm>
#include <sstream>

namespace zsum {

Sequence::Sequence(Group g, std::vector<Term> terms) : g_(std::move(g)) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.elem < b.elem; });
  for (const Term& t : terms) {
    if (t.mult < 0) fail(Errc::invalid_input, "negative multiplicity");
    if (t.mult == 0) continue;
    if (t.elem < 0 || t.elem >= g_.order()) fail(Errc::invalid_input, "term out of range");
    if (!terms_.empty() && terms_.back().elem == t.elem)
      terms_.back().mult += t.mult;
    else
      terms_.push_back(t);
    length_ += t.mult;
  }
}

Sequence Sequence::from_indices(const Group& g, const std::vector<int64_t>& elems) {
  std::vector<Term> terms;
  terms.reserve(elems.size());
  for (int64_t e : elems) terms.push_back({static_cast<int32_t>(e), 1});
  return Sequence(g, std::move(terms));
}

Sequence Sequence::from_elements(const Group& g, const std::vector<Element>& elems) {
  std::vector<int64_t> idx;
  for (const Element& e : elems) {
    require_same_group(e.group(), g, "sequence term from another group");
    idx.push_back(e.index());
  }
  return from_indices(g, idx);
}

Sequence Sequence::single(const Group& g, int64_t elem, int32_t mult) {
  return Sequence(g, {{static_cast<int32_t>(elem), mult}});
}

int32_t Sequence::multiplicity(int64_t elem) const {
  for (const Term& t : terms_)
    if (t.elem == elem) return t.mult;
  return 0;
}

std::vector<int64_t> Sequence::support() const {
  std::vector<int64_t> s;
  s.reserve(terms_.size());
  for (const Term& t : terms_) s.push_back(t.elem);
  return s;
}

std::vector<int64_t> Sequence::expanded() const {
  std::vector<int64_t> out;
  out.reserve(length_);
  for (const Term& t : terms_)
    for (int32_t i = 0; i < t.mult; ++i) out.push_back(t.elem);
  return out;
}

int64_t Sequence::sigma_i() const {
  int64_t s = 0;
  for (const Term& t : terms_) s = g_.add_i(s, g_.smul_i(t.mult, t.elem));
  return s;
}

Sequence Sequence::negate() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const Term& t : terms_)
    terms.push_back({static_cast<int32_t>(g_.neg_i(t.elem)), t.mult});
  return Sequence(g_, std::move(terms));
}

Sequence Sequence::concat(const Sequence& other) const {
  require_same_group(g_, other.g_, "concat");
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return Sequence(g_, std::move(terms));
}

bool Sequence::divides(const Sequence& super) const {
  require_same_group(g_, super.g_, "divides");
  size_t j = 0;
  for (const Term& t : terms_) {
    while (j < super.terms_.size() && super.terms_[j].elem < t.elem) ++j;
    if (j == super.terms_.size() || super.terms_[j].elem != t.elem || super.terms_[j].mult < t.mult)
      return false;
  }
  return true;
}

Sequence Sequence::remove(const Sequence& sub) const {
  require_same_group(g_, sub.g_, "remove");
  if (!sub.divides(*this)) fail(Errc::not_a_subsequence, "remove: T does not divide S");
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const Term& t : terms_) {
    int32_t m = t.mult - sub.multiplicity(t.elem);
    if (m > 0) terms.push_back({t.elem, m});
  }
  return Sequence(g_, std::move(terms));
}

Sequence Sequence::add_term(int64_t elem, int32_t mult) const {
  std::vector<Term> terms = terms_;
  terms.push_back({static_cast<int32_t>(elem), mult});
  return Sequence(g_, std::move(terms));
}

Sequence Sequence::remove_one(int64_t elem) const {
  return remove(Sequence::single(g_, elem));
}

int Sequence::compare(const Sequence& o) const {
  if (length_ != o.length_) return length_ < o.length_ ? -1 : 1;
  size_t i = 0, j = 0;
  int32_t ri = 0, rj = 0;  // consumed multiplicity within current term
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].elem != o.terms_[j].elem) return terms_[i].elem < o.terms_[j].elem ? -1 : 1;
    int32_t ai = terms_[i].mult - ri, aj = o.terms_[j].mult - rj;
    int32_t step = std::min(ai, aj);
    ri += step;
    rj += step;
    if (ri == terms_[i].mult) { ++i; ri = 0; }
    if (rj == o.terms_[j].mult) { ++j; rj = 0; }
  }
  return 0;
}

bool Sequence::operator==(const Sequence& o) const {
  return length_ == o.length_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin());
}

size_t Sequence::hash() const {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const Term& t : terms_) {
    mix(static_cast<uint64_t>(t.elem));
    mix(static_cast<uint64_t>(t.mult));
  }
  return static_cast<size_t>(h);
}

std::string Sequence::key() const {
  std::string k;
  k.reserve(terms_.size() * 8);
  for (const Term& t : terms_) {
    uint32_t v[2] = {static_cast<uint32_t>(t.elem), static_cast<uint32_t>(t.mult)};
    k.append(reinterpret_cast<const char*>(v), sizeof v);
  }
  return k;
}

std::string Sequence::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << ' ';
    first = false;
    auto c = g_.coords_of(t.elem);
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << c[i];
    }
    os << ")^" << t.mult;
  }
  return os.str();
}

Sequence Sequence::parse(const Group& g, const std::string& text) {
  std::vector<Term> terms;
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail(Errc::parse_error, "expected '(' in sequence text");
    ++pos;
    std::vector<int64_t> coords;
    while (true) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-'))
        ++pos;
      if (pos > start) coords.push_back(std::stoll(text.substr(start, pos - start)));
      skip_ws();
      if (pos >= text.size()) fail(Errc::parse_error, "unterminated term");
      if (text[pos] == ',') { ++pos; continue; }
      if (text[pos] == ')') { ++pos; break; }
      fail(Errc::parse_error, "bad character in term coordinates");
    }
    if (pos >= text.size() || text[pos] != '^') fail(Errc::parse_error, "expected '^mult'");
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail(Errc::parse_error, "missing multiplicity");
    int64_t mult = std::stoll(text.substr(start, pos - start));
    terms.push_back({static_cast<int32_t>(g.index_of(coords)), static_cast<int32_t>(mult)});
    skip_ws();
  }
  return Sequence(g, std::move(terms));
}

Sequence gcd_seq(const Sequence& a, const Sequence& b) {
  require_same_group(a.group(), b.group(), "gcd_seq");
  std::vector<Sequence::Term> terms;
  for (const auto& t : a.terms()) {
    int32_t m = std::min(t.mult, b.multiplicity(t.elem));
    if (m > 0) terms.push_back({t.elem, m});
  }
  return Sequence(a.group(), std::move(terms));
}

SubsumBitset::SubsumBitset(const Group& g) : g_(g), w_((g.order() + 63) / 64, 0) {}

void SubsumBitset::add_term(int64_t e) {
  const std::vector<uint64_t> snapshot = w_;
  const int32_t* row = g_.add_row(e);
  if (row) {
    for (size_t wi = 0; wi < snapshot.size(); ++wi) {
      uint64_t word = snapshot[wi];
      while (word) {
        int64_t b = static_cast<int64_t>(wi) * 64 + __builtin_ctzll(word);
        word &= word - 1;
        set(row[b]);
      }
    }
  } else {
    for (size_t wi = 0; wi < snapshot.size(); ++wi) {
      uint64_t word = snapshot[wi];
      while (word) {
        int64_t b = static_cast<int64_t>(wi) * 64 + __builtin_ctzll(word);
        word &= word - 1;
        set(g_.add_i(b, e));
      }
    }
  }
  set(e);
}

int64_t SubsumBitset::count() const {
  int64_t c = 0;
  for (uint64_t word : w_) c += __builtin_popcountll(word);
  return c;
}

void SubsumBitset::or_with(const SubsumBitset& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
}

std::vector<int64_t> SubsumBitset::members() const {
  std::vector<int64_t> out;
  for (size_t wi = 0; wi < w_.size(); ++wi) {
    uint64_t word = w_[wi];
    while (word) {
      out.push_back(static_cast<int64_t>(wi) * 64 + __builtin_ctzll(word));
      word &= word - 1;
    }
  }
  return out;
}

bool SubsumSet::contains(int64_t e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

Element sigma(const Sequence& s) { return s.sigma(); }

SubsumBitset subsum_bitset(const Sequence& s) {
  SubsumBitset bs(s.group());
  for (const auto& t : s.terms())
    for (int32_t i = 0; i < t.mult; ++i) bs.add_term(t.elem);
  return bs;
}

SubsumSet subsums(const Sequence& s) {
  return SubsumSet{s.group(), subsum_bitset(s).members()};
}

bool is_zero_sum_free(const Sequence& s) {
  SubsumBitset bs(s.group());
  for (const auto& t : s.terms())
    for (int32_t i = 0; i < t.mult; ++i) {
      bs.add_term(t.elem);
      if (bs.contains_zero()) return false;
    }
  return true;
}

bool is_zero_sum(const Sequence& s) { return s.sigma_i() == 0; }

bool is_atom(const Sequence& s) {
  if (s.empty() || s.sigma_i() != 0) return false;
  if (s.length() == 1) return true;
  if (s.multiplicity(0) > 0) return false;  // 0 divides S, so {0} is a proper zero-sum part
  // Removing one copy of each support element covers all maximal proper
  // subsequences; S is an atom iff each of those is zero-sum free.
  for (int64_t g : s.support())
    if (!is_zero_sum_free(s.remove_one(g))) return false;
  return true;
}

uint64_t multiset_count(int64_t universe, int length) {
  // C(universe + length - 1, length) with saturation at UINT64_MAX
  if (length == 0) return 1;
  if (universe <= 0) return 0;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= length; ++i) {
    acc = acc * static_cast<uint64_t>(universe - 1 + i) / i;
    if (acc > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<uint64_t>(acc);
}

namespace {

bool enumerate_rec(const Group& g, std::vector<int64_t>& stack, int64_t min_elem, int remaining,
                   const std::function<bool(const Sequence&)>& visit) {
  if (remaining == 0) {
    return visit(Sequence::from_indices(g, stack));
  }
  for (int64_t e = min_elem; e < g.order(); ++e) {
    stack.push_back(e);
    bool keep = enumerate_rec(g, stack, e, remaining - 1, visit);
    stack.pop_back();
    if (!keep) return false;
  }
  return true;
}

}  // namespace

void enumerate_sequences(const Group& g, int length, uint64_t budget,
                         const std::function<bool(const Sequence&)>& visit) {
  if (length < 0) fail(Errc::invalid_input, "negative length");
  uint64_t count = multiset_count(g.order(), length);
  if (count > budget)
    fail(Errc::enumeration_too_large,
         "multiset count " + std::to_string(count) + " exceeds budget " + std::to_string(budget));
  std::vector<int64_t> stack;
  stack.reserve(length);
  enumerate_rec(g, stack, 0, length, visit);
}

std::vector<Sequence> enumerate_sequences_vec(const Group& g, int length, uint64_t budget) {
  std::vector<Sequence> out;
  enumerate_sequences(g, length, budget, [&](const Sequence& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace zsum
