#include "spa/bitset/sparse_bitset.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace spa::bits {

bool SparseBitSet::set(uint32_t i) {
  uint32_t page = i >> 8;
  Page* p = pageFor(page, /*create=*/true);
  uint64_t& w = p->words[(i & 255) >> 6];
  uint64_t mask = uint64_t{1} << (i & 63);
  if (w & mask) return false;
  w |= mask;
  return true;
}

bool SparseBitSet::clear(uint32_t i) {
  Page* p = pageFor(i >> 8, /*create=*/false);
  if (!p) return false;
  uint64_t& w = p->words[(i & 255) >> 6];
  uint64_t mask = uint64_t{1} << (i & 63);
  if (!(w & mask)) return false;
  w &= ~mask;
  return true;
}

bool SparseBitSet::test(uint32_t i) const {
  const Page* p = pageAt(i >> 8);
  if (!p) return false;
  return p->words[(i & 255) >> 6] & (uint64_t{1} << (i & 63));
}

size_t SparseBitSet::count() const {
  size_t n = 0;
  for (const auto& sl : top_) {
    if (!sl) continue;
    for (const auto& page : *sl) {
      if (!page) continue;
      for (uint64_t w : page->words) n += __builtin_popcountll(w);
    }
  }
  return n;
}

bool SparseBitSet::empty() const {
  for (const auto& sl : top_) {
    if (!sl) continue;
    for (const auto& page : *sl) {
      if (page && page->any()) return false;
    }
  }
  return true;
}

bool SparseBitSet::unionWith(const SparseBitSet& o) {
  bool changed = false;
  o.forEachPageDo([&](uint32_t pageNo, const Page& src) {
    if (!src.any()) return;
    Page* dst = pageFor(pageNo, /*create=*/true);
    for (int w = 0; w < 4; ++w) {
      uint64_t before = dst->words[w];
      dst->words[w] |= src.words[w];
      changed |= dst->words[w] != before;
    }
  });
  return changed;
}

bool SparseBitSet::intersectWith(const SparseBitSet& o) {
  bool changed = false;
  for (size_t t = 0; t < top_.size(); ++t) {
    if (!top_[t]) continue;
    for (size_t s = 0; s < top_[t]->size(); ++s) {
      Page* page = (*top_[t])[s].get();
      if (!page) continue;
      uint32_t pageNo = static_cast<uint32_t>(t * d2_ + s);
      const Page* other = o.pageAt(pageNo);
      for (int w = 0; w < 4; ++w) {
        uint64_t before = page->words[w];
        page->words[w] &= other ? other->words[w] : 0;
        changed |= page->words[w] != before;
      }
    }
  }
  return changed;
}

bool SparseBitSet::subtract(const SparseBitSet& o) {
  bool changed = false;
  for (size_t t = 0; t < top_.size(); ++t) {
    if (!top_[t]) continue;
    for (size_t s = 0; s < top_[t]->size(); ++s) {
      Page* page = (*top_[t])[s].get();
      if (!page) continue;
      const Page* other = o.pageAt(static_cast<uint32_t>(t * d2_ + s));
      if (!other) continue;
      for (int w = 0; w < 4; ++w) {
        uint64_t before = page->words[w];
        page->words[w] &= ~other->words[w];
        changed |= page->words[w] != before;
      }
    }
  }
  return changed;
}

size_t SparseBitSet::leafPages() const {
  size_t n = 0;
  for (const auto& sl : top_) {
    if (!sl) continue;
    for (const auto& page : *sl) n += page != nullptr;
  }
  return n;
}

size_t SparseBitSet::livePages() const {
  size_t n = 0;
  for (const auto& sl : top_) {
    if (!sl) continue;
    for (const auto& page : *sl) n += page && page->any();
  }
  return n;
}

void SparseBitSet::compact() {
  for (auto& sl : top_) {
    if (!sl) continue;
    bool anyPage = false;
    for (auto& page : *sl) {
      if (page && !page->any()) page.reset();
      anyPage |= page != nullptr;
    }
    if (!anyPage) sl.reset();
  }
}

size_t SparseBitSet::allocatedBits() const {
  size_t dirEntries = d1_;  // top directory is always accounted in full
  for (const auto& sl : top_) {
    if (sl) dirEntries += d2_;
  }
  return leafPages() * kPageBits + dirEntries * kDirEntryBits;
}

SparseBitSet::Page* SparseBitSet::pageFor(uint32_t page, bool create) {
  if (page >= d1_ * d2_) {
    if (!create) return nullptr;
    growTo(page);
  }
  uint32_t t = page / d2_;
  uint32_t s = page % d2_;
  if (top_.empty()) {
    if (!create) return nullptr;
    top_.resize(d1_);
  }
  auto& sl = top_[t];
  if (!sl) {
    if (!create) return nullptr;
    sl = std::make_unique<SecondLevel>(d2_);
  }
  auto& p = (*sl)[s];
  if (!p) {
    if (!create) return nullptr;
    p = std::make_unique<Page>();
  }
  return p.get();
}

const SparseBitSet::Page* SparseBitSet::pageAt(uint32_t page) const {
  if (top_.empty() || page >= d1_ * d2_) return nullptr;
  const auto& sl = top_[page / d2_];
  return sl ? (*sl)[page % d2_].get() : nullptr;
}

void SparseBitSet::growTo(uint32_t page) {
  // Collect existing pages, then rebuild under the larger fan-outs.
  std::vector<std::pair<uint32_t, std::unique_ptr<Page>>> pages;
  for (size_t t = 0; t < top_.size(); ++t) {
    if (!top_[t]) continue;
    for (size_t s = 0; s < top_[t]->size(); ++s) {
      if ((*top_[t])[s]) {
        pages.emplace_back(static_cast<uint32_t>(t * d2_ + s),
                           std::move((*top_[t])[s]));
      }
    }
  }
  while (static_cast<uint64_t>(d1_) * d2_ <= page) {
    if (d2_ <= d1_) {
      d2_ *= 2;
    } else {
      d1_ *= 2;
    }
  }
  top_.clear();
  top_.resize(d1_);
  for (auto& [pageNo, p] : pages) {
    auto& sl = top_[pageNo / d2_];
    if (!sl) sl = std::make_unique<SecondLevel>(d2_);
    (*sl)[pageNo % d2_] = std::move(p);
  }
}

void SparseBitSet::copyFrom(const SparseBitSet& o) {
  d1_ = o.d1_;
  d2_ = o.d2_;
  top_.resize(o.top_.size());
  for (size_t t = 0; t < o.top_.size(); ++t) {
    if (!o.top_[t]) continue;
    top_[t] = std::make_unique<SecondLevel>(d2_);
    for (size_t s = 0; s < o.top_[t]->size(); ++s) {
      if ((*o.top_[t])[s]) {
        (*top_[t])[s] = std::make_unique<Page>(*(*o.top_[t])[s]);
      }
    }
  }
}

}  // namespace spa::bits
