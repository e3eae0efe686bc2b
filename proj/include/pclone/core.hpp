#pragma once

// Core value types for strong partial clones on the two-element domain:
// Boolean tuples, relations, partial functions, relation pairs, and
// weight-indexed symmetric partial functions.
//
// Tuple packing convention used everywhere: a tuple (x_1,...,x_n) is the
// n-bit word with x_1 in the most significant position, i.e.
// bits = sum_i x_i << (n-i). Strings render x_1 first ("x_1 x_2 ... x_n").

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "pclone/bitset.hpp"

namespace pclone {

inline constexpr int kMaxArity = 24;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline void check_arity(int arity) {
  require(arity >= 1 && arity <= kMaxArity,
          "arity must be between 1 and " + std::to_string(kMaxArity) +
              ", got " + std::to_string(arity));
}

// x_i of a packed tuple; pos is 0-based (pos = i-1).
inline int tuple_bit(std::uint32_t bits, int length, int pos) {
  return int((bits >> (length - 1 - pos)) & 1u);
}

std::string tuple_to_string(std::uint32_t bits, int length);
std::uint32_t tuple_from_string(const std::string& s, int expected_length);

// A packed Boolean tuple with explicit length.
struct BitTuple {
  int length = 1;
  std::uint32_t bits = 0;

  BitTuple() = default;
  BitTuple(int length_, std::uint32_t bits_);
  static BitTuple of(std::initializer_list<int> coords);

  int coord(int i) const;  // 1-based, coord(1) = x_1
  std::string to_string() const { return tuple_to_string(bits, length); }

  bool operator==(const BitTuple& o) const {
    return length == o.length && bits == o.bits;
  }
};

// A finitary Boolean relation: a set of tuples of one arity, stored as a
// membership bitset indexed by packed tuple.
class Relation {
 public:
  explicit Relation(int arity) : arity_(check(arity)), members_(1u << arity) {}

  static Relation full(int arity) {
    Relation r(arity);
    r.members_ = Bitset::full(std::size_t(1) << arity);
    return r;
  }
  static Relation of(int arity, std::initializer_list<std::uint32_t> tuples) {
    Relation r(arity);
    for (auto t : tuples) r.add(t);
    return r;
  }
  static Relation from_tuples(int arity, const std::vector<std::uint32_t>& ts) {
    Relation r(arity);
    for (auto t : ts) r.add(t);
    return r;
  }

  int arity() const { return arity_; }
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }

  bool contains(std::uint32_t t) const { return members_.test(t); }
  void add(std::uint32_t t) {
    require(t < (std::uint32_t(1) << arity_), "tuple out of range for arity");
    members_.set(t);
  }
  void remove(std::uint32_t t) { members_.reset(t); }

  const Bitset& members() const { return members_; }
  std::vector<std::uint32_t> tuples() const;  // ascending

  // Cartesian product; arities add, this relation occupies the leading
  // coordinates.
  Relation product(const Relation& other) const;

  // Complement every tuple coordinatewise (0 <-> 1).
  Relation dualized() const;

  bool operator==(const Relation& o) const {
    return arity_ == o.arity_ && members_ == o.members_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }
  bool operator<(const Relation& o) const {
    if (arity_ != o.arity_) return arity_ < o.arity_;
    return members_ < o.members_;
  }

  std::string to_string() const;  // "{0011, 0101}" style, ascending

 private:
  static int check(int arity) { check_arity(arity); return arity; }

  int arity_;
  Bitset members_;
};

// An ordered pair of same-arity relations with consequent contained in the
// antecedent. Preservation of a pair: every matrix with rows in dom f and
// columns in the antecedent must map to a column in the consequent.
class RelationPair {
 public:
  RelationPair(Relation antecedent, Relation consequent);

  const Relation& antecedent() const { return antecedent_; }
  const Relation& consequent() const { return consequent_; }
  int arity() const { return antecedent_.arity(); }

  bool operator==(const RelationPair& o) const {
    return antecedent_ == o.antecedent_ && consequent_ == o.consequent_;
  }
  bool operator<(const RelationPair& o) const {
    if (!(antecedent_ == o.antecedent_)) return antecedent_ < o.antecedent_;
    return consequent_ < o.consequent_;
  }

 private:
  Relation antecedent_;
  Relation consequent_;
};

// A partial Boolean function of fixed arity: a domain set plus a value bit
// for each domain point. Value-semantic; all operations return new objects.
class PartialFunction {
 public:
  explicit PartialFunction(int arity)
      : arity_(check(arity)),
        domain_(std::size_t(1) << arity),
        values_(std::size_t(1) << arity) {}

  // Projection onto the coord-th argument (1-based), total.
  static PartialFunction projection(int arity, int coord);
  // Total constant function.
  static PartialFunction constant(int arity, bool value);

  int arity() const { return arity_; }
  std::size_t domain_size() const { return domain_.count(); }
  bool is_total() const { return domain_size() == (std::size_t(1) << arity_); }
  bool is_empty() const { return domain_.none(); }

  bool defined_at(std::uint32_t x) const { return domain_.test(x); }
  bool value_at(std::uint32_t x) const {
    require(defined_at(x), "function not defined at " + tuple_to_string(x, arity_));
    return values_.test(x);
  }

  void define(std::uint32_t x, bool v) {
    require(x < (std::uint32_t(1) << arity_), "point out of range for arity");
    domain_.set(x);
    values_.assign(x, v);
  }
  void undefine(std::uint32_t x) { domain_.reset(x); values_.reset(x); }

  const Bitset& domain() const { return domain_; }
  const Bitset& values() const { return values_; }
  std::vector<std::uint32_t> domain_points() const;  // ascending

  // Restriction to the given subset of the domain.
  PartialFunction restricted_to(const Bitset& points) const;

  // Base-3 code: digit d_x per point x in ascending order, weight 3^x;
  // d_x = 0 undefined, 1 value 0, 2 value 1. Bijective with functions of
  // the given arity. Fits in 64 bits for arity <= 5.
  std::uint64_t code() const;
  static PartialFunction from_code(int arity, std::uint64_t code);

  bool operator==(const PartialFunction& o) const {
    return arity_ == o.arity_ && domain_ == o.domain_ && values_ == o.values_;
  }
  bool operator!=(const PartialFunction& o) const { return !(*this == o); }
  bool operator<(const PartialFunction& o) const {
    if (arity_ != o.arity_) return arity_ < o.arity_;
    if (!(domain_ == o.domain_)) return domain_ < o.domain_;
    return values_ < o.values_;
  }

  std::string to_string() const;  // "{0101->1, 1111->0}" style

 private:
  static int check(int arity) { check_arity(arity); return arity; }

  int arity_;
  Bitset domain_;
  Bitset values_;
};

// Builds a partial function from explicit (point, value) pairs.
// Rejects duplicate points and out-of-range points.
PartialFunction encode_function(
    int arity, const std::vector<std::pair<std::uint32_t, bool>>& points);

// True iff f is a restriction of g: same arity, dom f within dom g, and
// values agree on dom f.
bool is_restriction(const PartialFunction& f, const PartialFunction& g);

enum class Ternary : unsigned char { kUndefined, kZero, kOne };

// A totally symmetric partial function stored by Hamming weight: entry w
// gives the behaviour on all inputs of weight w. Arity may exceed the
// packed-tuple cap; only expansion is capped.
class SymmetricPartialFunction {
 public:
  explicit SymmetricPartialFunction(int arity)
      : arity_(check(arity)), by_weight_(std::size_t(arity) + 1, Ternary::kUndefined) {}

  int arity() const { return arity_; }

  Ternary at_weight(int w) const { return by_weight_.at(std::size_t(w)); }
  void set_weight(int w, Ternary v) { by_weight_.at(std::size_t(w)) = v; }

  bool defined_at_weight(int w) const {
    return at_weight(w) != Ternary::kUndefined;
  }
  bool value_at_weight(int w) const {
    require(defined_at_weight(w), "symmetric function undefined at weight " +
                                      std::to_string(w));
    return at_weight(w) == Ternary::kOne;
  }

  bool operator==(const SymmetricPartialFunction& o) const {
    return arity_ == o.arity_ && by_weight_ == o.by_weight_;
  }

 private:
  static int check(int arity) {
    require(arity >= 1, "arity must be positive");
    return arity;
  }

  int arity_;
  std::vector<Ternary> by_weight_;
};

// Expands the weight table into an explicit partial function.
// Requires arity <= kMaxArity.
PartialFunction expand_symmetric(const SymmetricPartialFunction& sf);

// 3^e for e up to 40 (fits in 64 bits).
std::uint64_t pow3(int e);

// Prefix feasibility tables for a set of packed tuples of the given
// width: result[d] is a bitset over 2^d whose bit c is set iff some
// member has c as its leading-d-bits prefix. result[width] is the set
// itself; result[0] has bit 0 set iff the set is nonempty.
std::vector<Bitset> tuple_prefix_levels(const Bitset& members, int width);

}  // namespace pclone
