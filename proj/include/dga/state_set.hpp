#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace dga {

using StateId = std::uint32_t;

/// Dense bitset over state ids. Sets over different universes compare and
/// intersect as if padded with zeros.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<StateId> ids) {
    for (StateId id : ids) insert(id);
  }

  static StateSet of(const std::vector<StateId>& ids) {
    StateSet s;
    for (StateId id : ids) s.insert(id);
    return s;
  }

  void insert(StateId id) {
    const std::size_t w = id / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (id % 64);
  }

  void erase(StateId id) {
    const std::size_t w = id / 64;
    if (w < words_.size()) words_[w] &= ~(std::uint64_t{1} << (id % 64));
  }

  bool contains(StateId id) const {
    const std::size_t w = id / 64;
    return w < words_.size() && ((words_[w] >> (id % 64)) & 1U) != 0;
  }

  bool intersects(const StateSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  bool subset_of(const StateSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~o) != 0) return false;
    }
    return true;
  }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  StateSet& operator|=(const StateSet& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  StateSet& operator&=(const StateSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
    return *this;
  }

  /// Removes every member of `other`.
  StateSet& operator-=(const StateSet& other) {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    const std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t x = i < a.words_.size() ? a.words_[i] : 0;
      const std::uint64_t y = i < b.words_.size() ? b.words_[i] : 0;
      if (x != y) return false;
    }
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(static_cast<StateId>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<StateId> members() const {
    std::vector<StateId> out;
    for_each([&](StateId id) { out.push_back(id); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0;
    for (std::size_t i = words_.size(); i-- > 0;) {
      if (words_[i] == 0 && h == 0) continue;
      h = h * 1000003U ^ std::hash<std::uint64_t>{}(words_[i]);
    }
    return h;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace dga
