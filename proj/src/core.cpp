#include "pclone/core.hpp"

#include <algorithm>

namespace pclone {

std::string tuple_to_string(std::uint32_t bits, int length) {
  std::string s(std::size_t(length), '0');
  for (int i = 0; i < length; ++i)
    if (tuple_bit(bits, length, i)) s[std::size_t(i)] = '1';
  return s;
}

std::uint32_t tuple_from_string(const std::string& s, int expected_length) {
  require(int(s.size()) == expected_length,
          "expected " + std::to_string(expected_length) + " characters, got " +
              std::to_string(s.size()));
  std::uint32_t bits = 0;
  for (char c : s) {
    require(c == '0' || c == '1', std::string("invalid character '") + c +
                                      "' in tuple (expected 0 or 1)");
    bits = (bits << 1) | std::uint32_t(c == '1');
  }
  return bits;
}

BitTuple::BitTuple(int length_, std::uint32_t bits_) : length(length_), bits(bits_) {
  check_arity(length);
  require(bits < (std::uint32_t(1) << length), "tuple bits out of range");
}

BitTuple BitTuple::of(std::initializer_list<int> coords) {
  require(coords.size() >= 1 && int(coords.size()) <= kMaxArity,
          "tuple length out of range");
  std::uint32_t bits = 0;
  for (int c : coords) {
    require(c == 0 || c == 1, "tuple coordinates must be 0 or 1");
    bits = (bits << 1) | std::uint32_t(c);
  }
  return BitTuple(int(coords.size()), bits);
}

int BitTuple::coord(int i) const {
  require(i >= 1 && i <= length, "coordinate index out of range");
  return tuple_bit(bits, length, i - 1);
}

std::vector<std::uint32_t> Relation::tuples() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  members_.for_each_set([&](std::size_t t) { out.push_back(std::uint32_t(t)); });
  return out;
}

Relation Relation::product(const Relation& other) const {
  int a = arity_ + other.arity_;
  check_arity(a);
  Relation r(a);
  members_.for_each_set([&](std::size_t s) {
    other.members_.for_each_set([&](std::size_t t) {
      r.members_.set((s << other.arity_) | t);
    });
  });
  return r;
}

Relation Relation::dualized() const {
  Relation r(arity_);
  std::uint32_t mask = (arity_ == 32) ? ~0u : ((std::uint32_t(1) << arity_) - 1);
  members_.for_each_set([&](std::size_t t) { r.members_.set(~std::uint32_t(t) & mask); });
  return r;
}

std::string Relation::to_string() const {
  std::string s = "{";
  bool first = true;
  members_.for_each_set([&](std::size_t t) {
    if (!first) s += ", ";
    first = false;
    s += tuple_to_string(std::uint32_t(t), arity_);
  });
  return s + "}";
}

RelationPair::RelationPair(Relation antecedent, Relation consequent)
    : antecedent_(std::move(antecedent)), consequent_(std::move(consequent)) {
  require(antecedent_.arity() == consequent_.arity(),
          "relation pair arity mismatch");
  require(consequent_.members().is_subset_of(antecedent_.members()),
          "relation pair consequent must be contained in the antecedent");
}

PartialFunction PartialFunction::projection(int arity, int coord) {
  check_arity(arity);
  require(coord >= 1 && coord <= arity, "projection coordinate out of range");
  PartialFunction f(arity);
  std::uint32_t n = std::uint32_t(1) << arity;
  for (std::uint32_t x = 0; x < n; ++x)
    f.define(x, tuple_bit(x, arity, coord - 1) != 0);
  return f;
}

PartialFunction PartialFunction::constant(int arity, bool value) {
  check_arity(arity);
  PartialFunction f(arity);
  std::uint32_t n = std::uint32_t(1) << arity;
  for (std::uint32_t x = 0; x < n; ++x) f.define(x, value);
  return f;
}

std::vector<std::uint32_t> PartialFunction::domain_points() const {
  std::vector<std::uint32_t> out;
  out.reserve(domain_size());
  domain_.for_each_set([&](std::size_t x) { out.push_back(std::uint32_t(x)); });
  return out;
}

PartialFunction PartialFunction::restricted_to(const Bitset& points) const {
  require(points.is_subset_of(domain_),
          "restriction points must lie inside the domain");
  PartialFunction f(arity_);
  f.domain_ = points;
  f.values_ = values_ & points;
  return f;
}

std::uint64_t PartialFunction::code() const {
  require(arity_ <= 5, "base-3 codes are supported up to arity 5");
  std::uint64_t c = 0;
  std::uint32_t n = std::uint32_t(1) << arity_;
  for (std::uint32_t x = n; x-- > 0;) {
    c *= 3;
    if (domain_.test(x)) c += values_.test(x) ? 2 : 1;
  }
  return c;
}

PartialFunction PartialFunction::from_code(int arity, std::uint64_t code) {
  check_arity(arity);
  require(arity <= 5, "base-3 codes are supported up to arity 5");
  PartialFunction f(arity);
  std::uint32_t n = std::uint32_t(1) << arity;
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint64_t digit = code % 3;
    code /= 3;
    if (digit != 0) f.define(x, digit == 2);
  }
  require(code == 0, "function code out of range for arity");
  return f;
}

std::string PartialFunction::to_string() const {
  std::string s = "{";
  bool first = true;
  domain_.for_each_set([&](std::size_t x) {
    if (!first) s += ", ";
    first = false;
    s += tuple_to_string(std::uint32_t(x), arity_);
    s += "->";
    s += values_.test(x) ? '1' : '0';
  });
  return s + "}";
}

PartialFunction encode_function(
    int arity, const std::vector<std::pair<std::uint32_t, bool>>& points) {
  check_arity(arity);
  PartialFunction f(arity);
  for (const auto& [x, v] : points) {
    require(x < (std::uint32_t(1) << arity),
            "point " + std::to_string(x) + " out of range for arity " +
                std::to_string(arity));
    require(!f.defined_at(x),
            "duplicate point " + tuple_to_string(x, arity));
    f.define(x, v);
  }
  return f;
}

bool is_restriction(const PartialFunction& f, const PartialFunction& g) {
  if (f.arity() != g.arity()) return false;
  if (!f.domain().is_subset_of(g.domain())) return false;
  return (f.values() ^ (g.values() & f.domain())).none();
}

PartialFunction expand_symmetric(const SymmetricPartialFunction& sf) {
  check_arity(sf.arity());
  int n = sf.arity();
  PartialFunction f(n);
  std::uint32_t total = std::uint32_t(1) << n;
  for (std::uint32_t x = 0; x < total; ++x) {
    int w = std::popcount(x);
    if (sf.defined_at_weight(w)) f.define(x, sf.value_at_weight(w));
  }
  return f;
}

std::uint64_t pow3(int e) {
  require(e >= 0 && e <= 40, "3^e overflow guard");
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

std::vector<Bitset> tuple_prefix_levels(const Bitset& members, int width) {
  require(std::size_t(1) << width == members.size(),
          "prefix table width does not match the member set");
  std::vector<Bitset> levels(std::size_t(width) + 1);
  levels[std::size_t(width)] = members;
  for (int d = width - 1; d >= 0; --d) {
    Bitset level(std::size_t(1) << d);
    const Bitset& below = levels[std::size_t(d) + 1];
    for (std::size_t c = 0; c < level.size(); ++c)
      if (below.test(2 * c) || below.test(2 * c + 1)) level.set(c);
    levels[std::size_t(d)] = std::move(level);
  }
  return levels;
}

}  // namespace pclone
