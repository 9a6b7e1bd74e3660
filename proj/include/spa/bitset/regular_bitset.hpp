// Flat growable bit set over 64-bit words.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spa::bits {

class RegularBitSet {
 public:
  RegularBitSet() = default;
  // Preallocates capacity for indices [0, capacityBits).
  explicit RegularBitSet(size_t capacityBits) {
    words_.resize((capacityBits + 63) / 64, 0);
  }

  bool set(uint32_t i) {
    ensure(i);
    uint64_t& w = words_[i >> 6];
    uint64_t mask = uint64_t{1} << (i & 63);
    if (w & mask) return false;
    w |= mask;
    return true;
  }

  bool clear(uint32_t i) {
    if ((i >> 6) >= words_.size()) return false;
    uint64_t& w = words_[i >> 6];
    uint64_t mask = uint64_t{1} << (i & 63);
    if (!(w & mask)) return false;
    w &= ~mask;
    return true;
  }

  bool test(uint32_t i) const {
    if ((i >> 6) >= words_.size()) return false;
    return words_[i >> 6] & (uint64_t{1} << (i & 63));
  }

  size_t count() const {
    size_t n = 0;
    for (uint64_t w : words_) n += __builtin_popcountll(w);
    return n;
  }

  bool empty() const { return count() == 0; }

  bool unionWith(const RegularBitSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    bool changed = false;
    for (size_t i = 0; i < o.words_.size(); ++i) {
      uint64_t before = words_[i];
      words_[i] |= o.words_[i];
      changed |= words_[i] != before;
    }
    return changed;
  }

  bool intersectWith(const RegularBitSet& o) {
    bool changed = false;
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      uint64_t before = words_[i];
      words_[i] &= other;
      changed |= words_[i] != before;
    }
    return changed;
  }

  // this := this \ o
  bool subtract(const RegularBitSet& o) {
    bool changed = false;
    size_t n = std::min(words_.size(), o.words_.size());
    for (size_t i = 0; i < n; ++i) {
      uint64_t before = words_[i];
      words_[i] &= ~o.words_[i];
      changed |= words_[i] != before;
    }
    return changed;
  }

  template <typename F>
  void forEach(F f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        int b = __builtin_ctzll(w);
        f(static_cast<uint32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<uint32_t> toVector() const {
    std::vector<uint32_t> out;
    forEach([&out](uint32_t i) { out.push_back(i); });
    return out;
  }

  // Exact storage: allocated word capacity in bits.
  size_t allocatedBits() const { return words_.size() * 64; }

 private:
  void ensure(uint32_t i) {
    size_t need = (i >> 6) + 1;
    if (need > words_.size()) words_.resize(need, 0);
  }

  std::vector<uint64_t> words_;
};

}  // namespace spa::bits
