#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "abc/decomposition.hpp"
#include "abc/inequality.hpp"
#include "abc/tables.hpp"

namespace abc {

/// Aggregate over all coprime decompositions of one c.
struct CensusRow {
  std::uint64_t c = 0;
  std::uint64_t phi = 0;
  std::uint64_t pairs = 0;   // phi / 2
  std::uint64_t n_thm1 = 0;  // N(c)
  std::uint64_t n_thm2 = 0;  // N1(c)
  double density1 = 0.0;     // 2 N(c) / phi
  double density2 = 0.0;     // 2 N1(c) / phi
  double geo_mean = 0.0;     // geometric mean of R(a_i b_i c)
  double eq1_ratio = 0.0;    // geo_mean / (R(c)^(1-eps) c^2)
  std::uint64_t exact_fallbacks = 0;  // triples decided by big integers; not reported

  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

/// Smallest eq1_ratio over a range. Any constant kappa below min_ratio
/// satisfies the geometric-mean bound on every scanned c.
struct KappaEstimate {
  Epsilon eps;
  std::uint64_t c_min = 0;
  std::uint64_t c_max = 0;
  double min_ratio = 0.0;
  std::uint64_t argmin_c = 0;
};

struct Hit {
  Decomposition triple;
  double quality = 0.0;
};

struct ScanOptions {
  unsigned workers = 1;
  // Consecutive c values per work unit; 0 picks a size from the range and worker count.
  std::uint64_t block_size = 0;
};

using RowSink = std::function<void(const CensusRow&)>;

/// Counts, geometric mean and ratio for one c. Requires 3 <= c <= radicals.limit().
CensusRow census_row(std::uint64_t c, const Epsilon& eps, const RadicalTable& radicals);

/// Calls sink once per c in [c_min, c_max], in ascending order, on the
/// calling thread. Output does not depend on options.workers.
void scan_range(std::uint64_t c_min, std::uint64_t c_max, const Epsilon& eps,
                const RadicalTable& radicals, const RowSink& sink, ScanOptions options = {});

KappaEstimate estimate_kappa(std::uint64_t c_min, std::uint64_t c_max, const Epsilon& eps,
                             const RadicalTable& radicals, ScanOptions options = {});

/// Triples with quality > threshold, ordered by quality descending, then c
/// and a ascending. Requires threshold >= 1.
std::vector<Hit> find_hits(std::uint64_t c_min, std::uint64_t c_max, double threshold,
                           const RadicalTable& radicals, ScanOptions options = {});

}  // namespace abc
