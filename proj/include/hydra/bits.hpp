#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hydra {

// Dynamic bitset over [0, size). Bits beyond size are always zero.
class Bits {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  Bits() = default;
  explicit Bits(std::size_t size, bool value = false)
      : size_(size), words_((size + word_bits - 1) / word_bits, value ? ~Word{0} : 0) {
    trim();
  }

  static std::size_t words_for(std::size_t size) { return (size + word_bits - 1) / word_bits; }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1; }
  void set(std::size_t i) { words_[i / word_bits] |= Word{1} << (i % word_bits); }
  void reset(std::size_t i) { words_[i / word_bits] &= ~(Word{1} << (i % word_bits)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  void fill(bool value) {
    for (auto& w : words_) w = value ? ~Word{0} : 0;
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool all() const { return count() == size_; }

  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bits& subtract(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  Bits operator|(const Bits& o) const { return Bits(*this) |= o; }
  Bits operator&(const Bits& o) const { return Bits(*this) &= o; }
  Bits operator-(const Bits& o) const { return Bits(*this).subtract(o); }
  Bits operator~() const {
    Bits r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  bool operator==(const Bits& o) const = default;
  bool operator<(const Bits& o) const {
    if (size_ != o.size_) return size_ < o.size_;
    for (std::size_t k = words_.size(); k-- > 0;)
      if (words_[k] != o.words_[k]) return words_[k] < o.words_[k];
    return false;
  }

  // Index of the first set bit at or after i, or size() if none.
  std::size_t next(std::size_t i) const {
    if (i >= size_) return size_;
    std::size_t k = i / word_bits;
    Word w = words_[k] & (~Word{0} << (i % word_bits));
    while (true) {
      if (w) return k * word_bits + std::countr_zero(w);
      if (++k == words_.size()) return size_;
      w = words_[k];
    }
  }
  std::size_t first() const { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w) {
        f(k * word_bits + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (Word w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

 private:
  void trim() {
    if (size_ % word_bits && !words_.empty())
      words_.back() &= (Word{1} << (size_ % word_bits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace hydra
