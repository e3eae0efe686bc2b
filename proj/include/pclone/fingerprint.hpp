#pragma once

// CloneFingerprint: for each arity n <= max_arity, the set of all partial
// functions of that arity belonging to some class, stored as a bitset
// indexed by base-3 function code. Exhaustive storage is practical for
// arities up to 3 (9 + 81 + 6561 codes); arity 4 fits in memory but is
// normally reached only by streaming searches.

#include <cstdint>
#include <string>
#include <vector>

#include "pclone/core.hpp"

namespace pclone {

inline std::uint64_t function_code_count(int arity) {
  return pow3(1 << arity);
}

class CloneFingerprint {
 public:
  explicit CloneFingerprint(int max_arity) : max_arity_(check(max_arity)) {
    for (int n = 1; n <= max_arity_; ++n)
      per_arity_.emplace_back(function_code_count(n));
  }

  static CloneFingerprint all(int max_arity) {
    CloneFingerprint fp(max_arity);
    for (auto& b : fp.per_arity_) b = Bitset::full(b.size());
    return fp;
  }

  int max_arity() const { return max_arity_; }

  bool test_code(int arity, std::uint64_t code) const {
    return layer(arity).test(code);
  }
  void insert_code(int arity, std::uint64_t code) { layer(arity).set(code); }

  bool contains(const PartialFunction& f) const {
    return test_code(f.arity(), f.code());
  }
  void insert(const PartialFunction& f) { insert_code(f.arity(), f.code()); }

  std::size_t count(int arity) const { return layer(arity).count(); }
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c;
    for (const auto& b : per_arity_) c.push_back(b.count());
    return c;
  }

  const Bitset& layer(int arity) const {
    require(arity >= 1 && arity <= max_arity_,
            "fingerprint arity out of range");
    return per_arity_[std::size_t(arity) - 1];
  }
  Bitset& layer(int arity) {
    require(arity >= 1 && arity <= max_arity_,
            "fingerprint arity out of range");
    return per_arity_[std::size_t(arity) - 1];
  }

  CloneFingerprint intersect(const CloneFingerprint& o) const {
    check_same(o);
    CloneFingerprint r(max_arity_);
    for (std::size_t i = 0; i < per_arity_.size(); ++i)
      r.per_arity_[i] = per_arity_[i] & o.per_arity_[i];
    return r;
  }
  CloneFingerprint unite(const CloneFingerprint& o) const {
    check_same(o);
    CloneFingerprint r(max_arity_);
    for (std::size_t i = 0; i < per_arity_.size(); ++i)
      r.per_arity_[i] = per_arity_[i] | o.per_arity_[i];
    return r;
  }
  bool is_subset_of(const CloneFingerprint& o) const {
    check_same(o);
    for (std::size_t i = 0; i < per_arity_.size(); ++i)
      if (!per_arity_[i].is_subset_of(o.per_arity_[i])) return false;
    return true;
  }

  // The total functions in the fingerprint (codes without digit 0).
  CloneFingerprint total_part() const;

  bool operator==(const CloneFingerprint& o) const {
    return max_arity_ == o.max_arity_ && per_arity_ == o.per_arity_;
  }
  bool operator!=(const CloneFingerprint& o) const { return !(*this == o); }

  // Stable digest over all layers; suitable for reports.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& b : per_arity_) {
      std::uint64_t v = b.hash();
      for (int k = 0; k < 8; ++k) {
        h ^= (v >> (8 * k)) & 0xff;
        h *= 0x100000001b3ull;
      }
    }
    return h;
  }

 private:
  static int check(int max_arity) {
    require(max_arity >= 1 && max_arity <= 4,
            "fingerprint max arity must be between 1 and 4");
    return max_arity;
  }
  void check_same(const CloneFingerprint& o) const {
    require(max_arity_ == o.max_arity_, "fingerprint arity bound mismatch");
  }

  int max_arity_;
  std::vector<Bitset> per_arity_;
};

}  // namespace pclone
