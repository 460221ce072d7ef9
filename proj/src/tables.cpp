#include "abc/tables.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <new>
#include <string>

#include "abc/error.hpp"
#include "abc/atomic_file.hpp"

namespace abc {

template <TableKind K>
ArithmeticTable<K>::ArithmeticTable(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidArgument("table must hold at least one entry");
  if (values_[0] != 0) throw InvalidArgument("table slot 0 must be zero");
}

template <TableKind K>
std::uint64_t ArithmeticTable<K>::at(std::uint64_t n) const {
  if (n == 0 || n > limit()) {
    throw OutOfRange("index " + std::to_string(n) + " outside table range [1, " +
                     std::to_string(limit()) + "]");
  }
  return values_[n];
}

template class ArithmeticTable<TableKind::radical>;
template class ArithmeticTable<TableKind::totient>;

namespace {

std::vector<std::uint64_t> allocate_table(std::uint64_t limit, std::uint64_t fill) {
  if (limit == 0) throw InvalidArgument("limit must be at least 1");
  if (limit > kMaxTableLimit) {
    throw ResourceLimit("limit " + std::to_string(limit) + " exceeds table cap " +
                        std::to_string(kMaxTableLimit));
  }
  try {
    return std::vector<std::uint64_t>(limit + 1, fill);
  } catch (const std::bad_alloc&) {
    throw ResourceLimit("cannot allocate table of " + std::to_string(limit) + " entries");
  }
}

}  // namespace

RadicalTable build_radical_table(std::uint64_t limit) {
  auto values = allocate_table(limit, 1);
  values[0] = 0;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (values[n] != 1) continue;
    for (std::uint64_t k = n; k <= limit; k += n) values[k] *= n;
  }
  return RadicalTable(std::move(values));
}

TotientTable build_totient_table(std::uint64_t limit) {
  auto values = allocate_table(limit, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) values[n] = n;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (values[p] != p) continue;  // composite: already reduced by a smaller prime
    for (std::uint64_t k = p; k <= limit; k += p) values[k] -= values[k] / p;
  }
  return TotientTable(std::move(values));
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    primes.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

std::uint64_t radical_by_factorization(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto p : distinct_prime_factors(n)) r *= p;
  return r;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::array<char, 4> kMagic{'A', 'B', 'C', 'T'};
constexpr std::size_t kHeaderSize = 4 + 2 + 1 + 1 + 8;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("file", "cannot open table file " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string kind_name(TableKind k) { return k == TableKind::radical ? "radical" : "totient"; }

TableHeader parse_header(const std::string& bytes, const std::filesystem::path& path) {
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::string where = " in " + path.string();
  if (bytes.size() < 4 || std::memcmp(p, kMagic.data(), 4) != 0)
    throw FormatError("magic", "bad magic bytes" + where);
  if (bytes.size() < kHeaderSize) throw FormatError("limit", "truncated header" + where);
  const unsigned version = p[4] | (unsigned{p[5]} << 8);
  if (version != kTableFormatVersion)
    throw FormatError("version", "unsupported format version " + std::to_string(version) + where);
  const auto kind = p[6];
  if (kind != 0x01 && kind != 0x02)
    throw FormatError("kind", "unknown table kind " + std::to_string(kind) + where);
  if (p[7] != 0) throw FormatError("reserved", "reserved byte is not zero" + where);
  const std::uint64_t limit = get_u64(p + 8);
  if (limit == 0 || limit > kMaxTableLimit)
    throw FormatError("limit", "limit " + std::to_string(limit) + " out of range" + where);
  return {static_cast<TableKind>(kind), limit};
}

}  // namespace

template <TableKind K>
void save_table(const std::filesystem::path& path, const ArithmeticTable<K>& table) {
  std::string out;
  out.reserve(kHeaderSize + 8 * (table.limit() + 1));
  out.append(kMagic.data(), kMagic.size());
  out.push_back(static_cast<char>(kTableFormatVersion & 0xff));
  out.push_back(static_cast<char>(kTableFormatVersion >> 8));
  out.push_back(static_cast<char>(K));
  out.push_back('\0');
  put_u64(out, table.limit());
  std::uint64_t checksum = 0;
  for (auto v : table.values()) {
    put_u64(out, v);
    checksum += v;
  }
  put_u64(out, checksum);
  write_file_atomically(path, out);
}

template <TableKind K>
ArithmeticTable<K> load_table(const std::filesystem::path& path) {
  const std::string bytes = read_all(path);
  const TableHeader header = parse_header(bytes, path);
  if (header.kind != K) {
    throw FormatError("kind", "expected " + kind_name(K) + " table, found " +
                                  kind_name(header.kind) + " in " + path.string());
  }
  const std::uint64_t expected = kHeaderSize + 8 * (header.limit + 1);
  if (bytes.size() != expected) {
    throw FormatError("length", "file holds " + std::to_string(bytes.size()) + " bytes, expected " +
                                    std::to_string(expected) + " for limit " +
                                    std::to_string(header.limit) + " in " + path.string());
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + kHeaderSize;
  std::vector<std::uint64_t> values(header.limit + 1, 0);
  std::uint64_t sum = 0;
  for (std::uint64_t n = 1; n <= header.limit; ++n, p += 8) {
    values[n] = get_u64(p);
    sum += values[n];
  }
  if (get_u64(p) != sum) throw FormatError("checksum", "checksum mismatch in " + path.string());
  return ArithmeticTable<K>(std::move(values));
}

TableHeader read_table_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("file", "cannot open table file " + path.string());
  std::string bytes(kHeaderSize, '\0');
  in.read(bytes.data(), kHeaderSize);
  bytes.resize(static_cast<std::size_t>(in.gcount()));
  return parse_header(bytes, path);
}

template void save_table(const std::filesystem::path&, const RadicalTable&);
template void save_table(const std::filesystem::path&, const TotientTable&);
template RadicalTable load_table<TableKind::radical>(const std::filesystem::path&);
template TotientTable load_table<TableKind::totient>(const std::filesystem::path&);

}  // namespace abc
