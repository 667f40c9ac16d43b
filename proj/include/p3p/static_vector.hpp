#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>

namespace p3p {

// Fixed-capacity sequence used for solver outputs (at most 4 roots / poses),
// so the hot path never touches the heap.
template <typename T, std::size_t Capacity>
class StaticVector {
 public:
  using value_type = T;
  using iterator = T*;
  using const_iterator = const T*;

  constexpr StaticVector() = default;

  void push_back(const T& value) {
    assert(count_ < Capacity);
    items_[count_++] = value;
  }

  void clear() { count_ = 0; }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] static constexpr std::size_t capacity() { return Capacity; }

  T& operator[](std::size_t i) { return items_[i]; }
  const T& operator[](std::size_t i) const { return items_[i]; }

  iterator begin() { return items_.data(); }
  iterator end() { return items_.data() + count_; }
  const_iterator begin() const { return items_.data(); }
  const_iterator end() const { return items_.data() + count_; }

  friend bool operator==(const StaticVector& a, const StaticVector& b) {
    return a.count_ == b.count_ && std::equal(a.begin(), a.end(), b.begin());
  }

 private:
  std::array<T, Capacity> items_{};
  std::size_t count_ = 0;
};

}  // namespace p3p
