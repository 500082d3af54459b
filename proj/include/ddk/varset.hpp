#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace ddk {

/// Dynamic bitset over variable ids.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(int universe) : words_((universe + 63) / 64, 0) {}

  void insert(int v) { words_[v >> 6] |= uint64_t{1} << (v & 63); }
  bool contains(int v) const {
    return (v >> 6) < static_cast<int>(words_.size()) && ((words_[v >> 6] >> (v & 63)) & 1);
  }

  VarSet& operator|=(const VarSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool subset_of(const VarSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t ow = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~ow) return false;
    }
    return true;
  }

  bool intersects(const VarSet& o) const {
    size_t m = std::min(words_.size(), o.words_.size());
    for (size_t i = 0; i < m; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Smallest shared element, -1 when disjoint.
  int first_common(const VarSet& o) const {
    size_t m = std::min(words_.size(), o.words_.size());
    for (size_t i = 0; i < m; ++i)
      if (uint64_t w = words_[i] & o.words_[i]) return static_cast<int>(i * 64 + std::countr_zero(w));
    return -1;
  }

  bool operator==(const VarSet& o) const { return subset_of(o) && o.subset_of(*this); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

 private:
  std::vector<uint64_t> words_;
};

}  // namespace ddk
