#include "zsum/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace zsum {

namespace {

constexpr int64_t kOrderCap = int64_t(1) << 31;
constexpr int64_t kTableOrderCap = 600;  // eager add/neg tables below this order

const std::shared_ptr<const GroupData>& trivial_data() {
  static const std::shared_ptr<const GroupData> d = [] {
    auto g = std::make_shared<GroupData>();
    g->order = 1;
    g->add_table = {0};
    g->neg_table = {0};
    g->has_tables = true;
    return g;
  }();
  return d;
}

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_modulus: return "InvalidModulus";
    case Errc::group_mismatch: return "GroupMismatch";
    case Errc::group_too_large: return "GroupTooLarge";
    case Errc::not_a_subsequence: return "NotASubsequence";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::not_zero_sum: return "NotZeroSum";
    case Errc::incomplete_atom_set: return "IncompleteAtomSet";
    case Errc::lambda_needs_exact_rho: return "LambdaNeedsExactRho";
    case Errc::invalid_certificate: return "InvalidCertificate";
    case Errc::invalid_c1_witness: return "InvalidC1Witness";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::spread_mismatch: return "SpreadMismatch";
    case Errc::pattern_not_found: return "PatternNotFound";
    case Errc::wrong_length: return "WrongLength";
    case Errc::search_budget_exceeded: return "SearchBudgetExceeded";
    case Errc::lemtech_violation: return "LemTechViolation";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

const GroupData& Group::data() const { return d_ ? *d_ : *trivial_data(); }

std::shared_ptr<const GroupData> Group::d_ptr() const { return d_ ? d_ : trivial_data(); }

bool Group::same_as(const Group& o) const {
  if (d_ptr().get() == o.d_ptr().get()) return true;
  return factors() == o.factors();
}

void require_same_group(const Group& a, const Group& b, const char* where) {
  if (!a.same_as(b)) fail(Errc::group_mismatch, where);
}

Group make_group(const std::vector<int64_t>& moduli) {
  for (int64_t m : moduli)
    if (m <= 1) fail(Errc::invalid_modulus, "modulus " + std::to_string(m) + " < 2");
  if (moduli.empty()) return Group();

  // Split every modulus into prime powers, then rebuild the chain: the j-th
  // largest power of each prime multiplies into the j-th largest factor.
  std::map<int64_t, std::vector<int64_t>> powers;  // prime -> prime-power list
  for (int64_t m : moduli) {
    int64_t rest = m;
    for (int64_t p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      int64_t q = 1;
      while (rest % p == 0) {
        q *= p;
        rest /= p;
      }
      powers[p].push_back(q);
    }
    if (rest > 1) powers[rest].push_back(rest);
  }
  size_t rank = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<int64_t>());
    rank = std::max(rank, list.size());
  }
  std::vector<int64_t> factors(rank, 1);
  for (auto& [p, list] : powers)
    for (size_t j = 0; j < list.size(); ++j) factors[rank - 1 - j] *= list[j];

  auto d = std::make_shared<GroupData>();
  d->factors = factors;
  d->order = 1;
  for (int64_t f : factors) {
    if (d->order > kOrderCap / f) fail(Errc::group_too_large, "order exceeds 2^31");
    d->order *= f;
  }
  d->strides.assign(rank, 1);
  for (size_t i = rank; i-- > 1;) d->strides[i - 1] = d->strides[i] * d->factors[i];

  if (d->order <= kTableOrderCap) {
    const int64_t n = d->order;
    d->add_table.resize(static_cast<size_t>(n) * n);
    d->neg_table.resize(n);
    std::vector<int64_t> ca(rank), cb(rank);
    for (int64_t a = 0; a < n; ++a) {
      int64_t rest = a;
      for (size_t i = 0; i < rank; ++i) {
        ca[i] = rest / d->strides[i];
        rest %= d->strides[i];
      }
      int64_t neg = 0;
      for (size_t i = 0; i < rank; ++i)
        neg += (ca[i] ? d->factors[i] - ca[i] : 0) * d->strides[i];
      d->neg_table[a] = static_cast<int32_t>(neg);
      for (int64_t b = 0; b < n; ++b) {
        int64_t rb = b, sum = 0;
        for (size_t i = 0; i < rank; ++i) {
          cb[i] = rb / d->strides[i];
          rb %= d->strides[i];
          int64_t c = ca[i] + cb[i];
          if (c >= d->factors[i]) c -= d->factors[i];
          sum += c * d->strides[i];
        }
        d->add_table[static_cast<size_t>(a) * n + b] = static_cast<int32_t>(sum);
      }
    }
    d->has_tables = true;
  }
  return Group(std::move(d));
}

std::vector<int64_t> Group::coords_of(int64_t index) const {
  const GroupData& d = data();
  std::vector<int64_t> c(d.factors.size());
  for (size_t i = 0; i < d.factors.size(); ++i) {
    c[i] = index / d.strides[i];
    index %= d.strides[i];
  }
  return c;
}

int64_t Group::index_of(const std::vector<int64_t>& coords) const {
  const GroupData& d = data();
  if (coords.size() != d.factors.size()) fail(Errc::invalid_input, "coordinate count != rank");
  int64_t idx = 0;
  for (size_t i = 0; i < coords.size(); ++i) {
    int64_t c = coords[i] % d.factors[i];
    if (c < 0) c += d.factors[i];
    idx += c * d.strides[i];
  }
  return idx;
}

int64_t Group::add_i(int64_t a, int64_t b) const {
  const GroupData& d = data();
  if (d.has_tables) return d.add_table[static_cast<size_t>(a) * d.order + b];
  int64_t sum = 0;
  for (size_t i = 0; i < d.factors.size(); ++i) {
    int64_t c = a / d.strides[i] + b / d.strides[i];
    a %= d.strides[i];
    b %= d.strides[i];
    if (c >= d.factors[i]) c -= d.factors[i];
    sum += c * d.strides[i];
  }
  return sum;
}

int64_t Group::neg_i(int64_t a) const {
  const GroupData& d = data();
  if (d.has_tables) return d.neg_table[a];
  int64_t out = 0;
  for (size_t i = 0; i < d.factors.size(); ++i) {
    int64_t c = a / d.strides[i];
    a %= d.strides[i];
    if (c) out += (d.factors[i] - c) * d.strides[i];
  }
  return out;
}

int64_t Group::smul_i(int64_t k, int64_t a) const {
  const GroupData& d = data();
  int64_t out = 0;
  for (size_t i = 0; i < d.factors.size(); ++i) {
    int64_t c = a / d.strides[i];
    a %= d.strides[i];
    int64_t m = (c * (k % d.factors[i])) % d.factors[i];
    if (m < 0) m += d.factors[i];
    out += m * d.strides[i];
  }
  return out;
}

int64_t Group::order_of_i(int64_t a) const {
  const GroupData& d = data();
  int64_t ord = 1;
  for (size_t i = 0; i < d.factors.size(); ++i) {
    int64_t c = a / d.strides[i];
    a %= d.strides[i];
    int64_t oi = d.factors[i] / std::gcd(c, d.factors[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

Element Group::element_at(int64_t index) const {
  if (index < 0 || index >= order()) fail(Errc::invalid_input, "element index out of range");
  return Element(d_ptr(), index);
}

Element Group::add(const Element& a, const Element& b) const {
  require_same_group(a.group(), *this, "add: element from another group");
  require_same_group(b.group(), *this, "add: element from another group");
  return Element(d_ptr(), add_i(a.index(), b.index()));
}

Element Group::neg(const Element& a) const {
  require_same_group(a.group(), *this, "neg: element from another group");
  return Element(d_ptr(), neg_i(a.index()));
}

Element Group::smul(int64_t k, const Element& a) const {
  require_same_group(a.group(), *this, "smul: element from another group");
  return Element(d_ptr(), smul_i(k, a.index()));
}

int64_t Group::order_of(const Element& a) const {
  require_same_group(a.group(), *this, "order_of: element from another group");
  return order_of_i(a.index());
}

std::vector<Element> Group::canonical_basis() const {
  std::vector<Element> basis;
  const GroupData& d = data();
  for (size_t i = 0; i < d.factors.size(); ++i) basis.push_back(Element(d_ptr(), d.strides[i]));
  return basis;
}

std::vector<Element> Group::all_elements() const {
  std::vector<Element> out;
  out.reserve(order());
  for (int64_t i = 0; i < order(); ++i) out.push_back(Element(d_ptr(), i));
  return out;
}

int64_t Group::d_star() const {
  int64_t s = 0;
  for (int64_t f : factors()) s += f - 1;
  return s;
}

std::string Group::spec_string() const {
  std::ostringstream os;
  const auto& f = factors();
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) os << ',';
    os << f[i];
  }
  return os.str();
}

Group parse_group_spec(const std::string& spec) {
  std::vector<int64_t> moduli;
  std::string token;
  std::istringstream is(spec);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    try {
      moduli.push_back(std::stoll(token));
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad group spec token '" + token + "'");
    }
  }
  return make_group(moduli);
}

std::vector<int64_t> Element::coords() const { return group().coords_of(index_); }

Group Element::group() const { return Group(d_); }

bool Element::operator==(const Element& o) const {
  return index_ == o.index_ && group().same_as(o.group());
}

bool Element::operator<(const Element& o) const { return index_ < o.index_; }

}  // namespace zsum
