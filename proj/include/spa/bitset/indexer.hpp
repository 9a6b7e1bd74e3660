// Dense first-seen-order indexing of arbitrary keys; the bridge between
// object identities and bit positions.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace spa::bits {

template <typename T>
class Indexer {
 public:
  // Returns the stable index of key, assigning the next one on first sight.
  uint32_t indexOf(const T& key) {
    auto [it, inserted] =
        index_.emplace(key, static_cast<uint32_t>(objects_.size()));
    if (inserted) objects_.push_back(key);
    return it->second;
  }

  const T& objectAt(uint32_t index) const { return objects_.at(index); }
  size_t size() const { return objects_.size(); }

 private:
  std::unordered_map<T, uint32_t> index_;
  std::vector<T> objects_;
};

}  // namespace spa::bits
