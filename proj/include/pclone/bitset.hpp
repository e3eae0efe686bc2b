#pragma once

// Dynamic bitset over 64-bit blocks. Sizes are fixed at construction;
// binary operations require equal sizes. Used for relation membership
// tables (2^arity bits), function domains/values, and fingerprint sets
// (3^(2^n) bits).

#include <cstddef>
#include <cstdint>
#include <bit>
#include <stdexcept>
#include <vector>

namespace pclone {

class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(std::size_t size)
      : size_(size), blocks_((size + 63) / 64, 0) {}

  static Bitset full(std::size_t size) {
    Bitset b(size);
    for (auto& w : b.blocks_) w = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) { blocks_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void assign(std::size_t i, bool v) {
    if (v) set(i); else reset(i);
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : blocks_) c += std::size_t(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : blocks_) if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool is_subset_of(const Bitset& other) const {
    check_size(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~other.blocks_[i]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    check_size(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    check_size(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    check_size(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= o.blocks_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  Bitset complemented() const {
    Bitset r(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = ~blocks_[i];
    r.trim();
    return r;
  }

  bool operator==(const Bitset& o) const {
    return size_ == o.size_ && blocks_ == o.blocks_;
  }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Lexicographic on (size, blocks); a stable total order for use as map keys.
  bool operator<(const Bitset& o) const {
    if (size_ != o.size_) return size_ < o.size_;
    return blocks_ < o.blocks_;
  }

  // First set bit at position >= from, or size() if none.
  std::size_t next_set(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t blk = from >> 6;
    std::uint64_t w = blocks_[blk] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return (blk << 6) + std::size_t(std::countr_zero(w));
      if (++blk == blocks_.size()) return size_;
      w = blocks_[blk];
    }
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::uint64_t w = blocks_[b];
      while (w) {
        fn((b << 6) + std::size_t(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  // FNV-1a over the block contents; stable across runs and platforms.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
      for (int k = 0; k < 8; ++k) {
        h ^= (v >> (8 * k)) & 0xff;
        h *= 0x100000001b3ull;
      }
    };
    mix(size_);
    for (auto w : blocks_) mix(w);
    return h;
  }

 private:
  void check_size(const Bitset& o) const {
    if (size_ != o.size_) throw std::invalid_argument("bitset size mismatch");
  }
  void trim() {
    if (size_ & 63) blocks_.back() &= (~std::uint64_t{0}) >> (64 - (size_ & 63));
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace pclone
