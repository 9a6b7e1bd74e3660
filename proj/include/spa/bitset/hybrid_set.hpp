// Hybrid index set: a sorted inline array while the cardinality stays at or
// below the threshold, a sparse bit set afterwards. The transition to the
// bit-set representation is one-way.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spa/bitset/sparse_bitset.hpp"

namespace spa::bits {

class HybridSet {
 public:
  static constexpr size_t kDefaultThreshold = 8;

  explicit HybridSet(size_t threshold = kDefaultThreshold)
      : threshold_(threshold) {}

  bool set(uint32_t i) {
    if (small_) {
      auto it = std::lower_bound(array_.begin(), array_.end(), i);
      if (it != array_.end() && *it == i) return false;
      if (array_.size() < threshold_) {
        array_.insert(it, i);
        return true;
      }
      spill();
      return large_.set(i);
    }
    return large_.set(i);
  }

  bool clear(uint32_t i) {
    if (small_) {
      auto it = std::lower_bound(array_.begin(), array_.end(), i);
      if (it == array_.end() || *it != i) return false;
      array_.erase(it);
      return true;
    }
    return large_.clear(i);
  }

  bool test(uint32_t i) const {
    if (small_) return std::binary_search(array_.begin(), array_.end(), i);
    return large_.test(i);
  }

  size_t count() const { return small_ ? array_.size() : large_.count(); }
  bool empty() const { return count() == 0; }
  bool isSmallMode() const { return small_; }

  bool unionWith(const HybridSet& o) {
    bool changed = false;
    o.forEach([&](uint32_t i) { changed |= set(i); });
    return changed;
  }

  bool intersectWith(const HybridSet& o) {
    bool changed = false;
    if (small_) {
      std::vector<uint32_t> kept;
      kept.reserve(array_.size());
      for (uint32_t i : array_) {
        if (o.test(i)) kept.push_back(i);
      }
      changed = kept.size() != array_.size();
      array_ = std::move(kept);
    } else {
      for (uint32_t i : large_.toVector()) {
        if (!o.test(i)) changed |= large_.clear(i);
      }
    }
    return changed;
  }

  bool subtract(const HybridSet& o) {
    bool changed = false;
    if (small_) {
      std::vector<uint32_t> kept;
      kept.reserve(array_.size());
      for (uint32_t i : array_) {
        if (!o.test(i)) kept.push_back(i);
      }
      changed = kept.size() != array_.size();
      array_ = std::move(kept);
    } else {
      for (uint32_t i : large_.toVector()) {
        if (o.test(i)) changed |= large_.clear(i);
      }
    }
    return changed;
  }

  template <typename F>
  void forEach(F f) const {
    if (small_) {
      for (uint32_t i : array_) f(i);
    } else {
      large_.forEach(f);
    }
  }

  std::vector<uint32_t> toVector() const {
    if (small_) return array_;
    return large_.toVector();
  }

 private:
  void spill() {
    for (uint32_t i : array_) large_.set(i);
    array_.clear();
    array_.shrink_to_fit();
    small_ = false;
  }

  size_t threshold_;
  bool small_ = true;
  std::vector<uint32_t> array_;  // sorted ascending
  SparseBitSet large_;
};

}  // namespace spa::bits
