#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace abc {

/// Largest table limit accepted by the sieves. At 8 bytes per entry a full
/// table needs ~800 MB; the census kernel also relies on R(a)R(b) < 2^53,
/// which holds for every c below this cap.
inline constexpr std::uint64_t kMaxTableLimit = 100'000'000;

enum class TableKind : std::uint8_t { radical = 0x01, totient = 0x02 };

/// Immutable per-integer table for 1 <= n <= limit. Built once by a sieve,
/// then shared read-only across workers.
template <TableKind K>
class ArithmeticTable {
 public:
  static constexpr TableKind kind = K;

  /// Takes ownership of values[0..limit]; values[0] is unused and must be 0.
  explicit ArithmeticTable(std::vector<std::uint64_t> values);

  std::uint64_t limit() const noexcept { return values_.size() - 1; }

  /// Checked access; throws OutOfRange for n == 0 or n > limit().
  std::uint64_t at(std::uint64_t n) const;

  /// Unchecked access for hot loops, 1 <= n <= limit().
  std::uint64_t operator[](std::uint64_t n) const noexcept { return values_[n]; }

  /// Entries 1..limit in order.
  std::span<const std::uint64_t> values() const noexcept {
    return std::span<const std::uint64_t>(values_).subspan(1);
  }

  /// Raw storage indexed directly by n (slot 0 unused).
  const std::uint64_t* data() const noexcept { return values_.data(); }

  friend bool operator==(const ArithmeticTable&, const ArithmeticTable&) = default;

 private:
  std::vector<std::uint64_t> values_;
};

using RadicalTable = ArithmeticTable<TableKind::radical>;
using TotientTable = ArithmeticTable<TableKind::totient>;

extern template class ArithmeticTable<TableKind::radical>;
extern template class ArithmeticTable<TableKind::totient>;

/// R(n) for every n <= limit. Every entry starts at 1; an entry still equal
/// to 1 when reached is prime and multiplies itself into all its multiples.
RadicalTable build_radical_table(std::uint64_t limit);

/// phi(n) for every n <= limit, by the analogous prime-driven sieve.
TotientTable build_totient_table(std::uint64_t limit);

/// Product of the distinct primes dividing n, by trial division up to
/// sqrt(n). Independent of any table. R(1) = 1.
std::uint64_t radical_by_factorization(std::uint64_t n);

/// Distinct prime factors of n in ascending order, by trial division.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Binary table file:
//   "ABCT" | u16 version=1 | u8 kind | u8 0 | u64 limit | limit x u64 | u64 checksum
// All integers little-endian; checksum is the wrapping sum of the values.

inline constexpr std::uint16_t kTableFormatVersion = 1;

template <TableKind K>
void save_table(const std::filesystem::path& path, const ArithmeticTable<K>& table);

/// Throws FormatError naming the offending field on any mismatch.
template <TableKind K>
ArithmeticTable<K> load_table(const std::filesystem::path& path);

/// Reads only the kind byte and limit from a table file header.
struct TableHeader {
  TableKind kind;
  std::uint64_t limit;
};
TableHeader read_table_header(const std::filesystem::path& path);

}  // namespace abc
