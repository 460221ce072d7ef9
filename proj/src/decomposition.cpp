#include "abc/decomposition.hpp"

#include <numeric>
#include <string>

#include "abc/error.hpp"

namespace abc {

namespace {

void require_valid_c(std::uint64_t c) {
  if (c < 3) throw DomainError("c = " + std::to_string(c) + " admits no split a < b; need c >= 3");
}

}  // namespace

DecompositionRange::iterator::iterator(const RadicalTable* radicals, std::uint64_t c)
    : radicals_(radicals), half_((c - 1) / 2) {
  current_.c = c;
  current_.rad_c = (*radicals)[c];
  current_.a = 1;
  settle();
}

void DecompositionRange::iterator::settle() {
  const std::uint64_t c = current_.c;
  while (current_.a <= half_ && std::gcd(current_.a, c) != 1) ++current_.a;
  if (current_.a > half_) return;
  current_.b = c - current_.a;
  current_.rad_a = (*radicals_)[current_.a];
  current_.rad_b = (*radicals_)[current_.b];
}

DecompositionRange::iterator& DecompositionRange::iterator::operator++() {
  ++current_.a;
  settle();
  return *this;
}

DecompositionRange::DecompositionRange(std::uint64_t c, const RadicalTable& radicals)
    : c_(c), radicals_(&radicals) {
  require_valid_c(c);
  if (c > radicals.limit()) {
    throw OutOfRange("c = " + std::to_string(c) + " exceeds radical table limit " +
                     std::to_string(radicals.limit()));
  }
}

DecompositionRange enumerate_decompositions(std::uint64_t c, const RadicalTable& radicals) {
  return DecompositionRange(c, radicals);
}

std::uint64_t count_decompositions(std::uint64_t c, const TotientTable& totients) {
  require_valid_c(c);
  return totients.at(c) / 2;
}

}  // namespace abc
