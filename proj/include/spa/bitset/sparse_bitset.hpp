// Two-level page-table bit set. Bits live in 256-bit leaf pages reached
// through a top directory and second-level directories; only pages that hold
// at least one set bit are materialized, and directory fan-outs grow by
// doubling as the maximum index grows.
//
// For a bit index i with second-level fan-out D2:
//   page        = i >> 8
//   top slot    = page / D2
//   second slot = page % D2
//   bit in page = i % 256
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace spa::bits {

class SparseBitSet {
 public:
  static constexpr uint32_t kPageBits = 256;
  static constexpr uint32_t kDirEntryBits = 32;  // accounted width per entry

  SparseBitSet() = default;
  SparseBitSet(const SparseBitSet& o) { copyFrom(o); }
  SparseBitSet& operator=(const SparseBitSet& o) {
    if (this != &o) {
      top_.clear();
      copyFrom(o);
    }
    return *this;
  }
  SparseBitSet(SparseBitSet&&) = default;
  SparseBitSet& operator=(SparseBitSet&&) = default;

  bool set(uint32_t i);
  bool clear(uint32_t i);  // never frees pages; see compact()
  bool test(uint32_t i) const;
  size_t count() const;
  bool empty() const;

  bool unionWith(const SparseBitSet& o);
  bool intersectWith(const SparseBitSet& o);
  bool subtract(const SparseBitSet& o);

  template <typename F>
  void forEach(F f) const {
    for (size_t t = 0; t < top_.size(); ++t) {
      if (!top_[t]) continue;
      for (size_t s = 0; s < top_[t]->size(); ++s) {
        const Page* page = (*top_[t])[s].get();
        if (!page) continue;
        uint32_t base =
            static_cast<uint32_t>((t * d2_ + s) * kPageBits);
        for (int w = 0; w < 4; ++w) {
          uint64_t word = page->words[w];
          while (word) {
            int b = __builtin_ctzll(word);
            f(base + w * 64 + b);
            word &= word - 1;
          }
        }
      }
    }
  }

  std::vector<uint32_t> toVector() const {
    std::vector<uint32_t> out;
    forEach([&out](uint32_t i) { out.push_back(i); });
    return out;
  }

  // Materialized leaf pages (clear/intersect may leave all-zero pages around
  // until compact() reclaims them).
  size_t leafPages() const;
  // Leaf pages that currently hold at least one bit.
  size_t livePages() const;
  // Frees all-zero leaf pages and empty second-level directories.
  void compact();

  // Exact storage: 256 bits per materialized leaf page plus 32 bits per
  // directory entry (top directory plus every materialized second level).
  size_t allocatedBits() const;

  // Accounting for a flat one-level table in front of the same leaf pages,
  // matching the 16 x 32-bit directory layout: dirEntries * entryBits +
  // 256 * leafPages().
  size_t allocatedBitsOneLevel(size_t dirEntries = 16,
                               size_t entryBits = kDirEntryBits) const {
    return dirEntries * entryBits + leafPages() * kPageBits;
  }

  uint32_t topFanout() const { return d1_; }
  uint32_t secondFanout() const { return d2_; }

 private:
  struct Page {
    std::array<uint64_t, 4> words{};
    bool any() const {
      return words[0] | words[1] | words[2] | words[3];
    }
  };
  using SecondLevel = std::vector<std::unique_ptr<Page>>;

  template <typename F>
  void forEachPageDo(F f) const {
    for (size_t t = 0; t < top_.size(); ++t) {
      if (!top_[t]) continue;
      for (size_t s = 0; s < top_[t]->size(); ++s) {
        if ((*top_[t])[s]) {
          f(static_cast<uint32_t>(t * d2_ + s), *(*top_[t])[s]);
        }
      }
    }
  }

  Page* pageFor(uint32_t page, bool create);
  const Page* pageAt(uint32_t page) const;
  // Grows directory fan-outs (rebalancing existing pages) until the page
  // number fits; top and second level double alternately.
  void growTo(uint32_t page);
  void copyFrom(const SparseBitSet& o);

  std::vector<std::unique_ptr<SecondLevel>> top_;  // size d1_ once allocated
  uint32_t d1_ = 1;
  uint32_t d2_ = 1;
};

}  // namespace spa::bits
