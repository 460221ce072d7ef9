#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>

#include "abc/tables.hpp"

namespace abc {

using u128 = unsigned __int128;

/// One equation c = a + b with a < b and gcd(a, b) = 1, plus the radicals
/// of its three terms. Pairwise coprimality makes R(abc) = R(a)R(b)R(c).
struct Decomposition {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t rad_a = 0;
  std::uint64_t rad_b = 0;
  std::uint64_t rad_c = 0;

  u128 rad_ab() const noexcept { return u128{rad_a} * rad_b; }
  u128 rad_abc() const noexcept { return rad_ab() * rad_c; }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Lazy, ascending-in-a view over the coprime decompositions of c.
class DecompositionRange {
 public:
  class iterator {
   public:
    using value_type = Decomposition;
    using difference_type = std::ptrdiff_t;
    using iterator_concept = std::input_iterator_tag;

    iterator() = default;
    const Decomposition& operator*() const noexcept { return current_; }
    const Decomposition* operator->() const noexcept { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept {
      return it.current_.a > it.half_;
    }

   private:
    friend class DecompositionRange;
    iterator(const RadicalTable* radicals, std::uint64_t c);
    void settle();

    const RadicalTable* radicals_ = nullptr;
    std::uint64_t half_ = 0;
    Decomposition current_{};
  };

  DecompositionRange(std::uint64_t c, const RadicalTable& radicals);

  iterator begin() const { return iterator(radicals_, c_); }
  std::default_sentinel_t end() const noexcept { return {}; }

  std::uint64_t c() const noexcept { return c_; }

 private:
  std::uint64_t c_;
  const RadicalTable* radicals_;
};

/// Every a in [1, (c-1)/2] with gcd(a, c) = 1, ascending. Throws DomainError
/// for c < 3 and OutOfRange if the table does not reach c.
DecompositionRange enumerate_decompositions(std::uint64_t c, const RadicalTable& radicals);

/// phi(c)/2, read from the totient table. Throws DomainError for c < 3.
std::uint64_t count_decompositions(std::uint64_t c, const TotientTable& totients);

}  // namespace abc
