#include "abc/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "abc/error.hpp"
#include "ordered_blocks.hpp"

namespace abc {

namespace {

void check_range(std::uint64_t c_min, std::uint64_t c_max, const RadicalTable& radicals) {
  if (c_min < 3) throw DomainError("c_min = " + std::to_string(c_min) + " must be at least 3");
  if (c_min > c_max) {
    throw InvalidArgument("empty range [" + std::to_string(c_min) + ", " + std::to_string(c_max) + "]");
  }
  if (c_max > radicals.limit()) {
    throw OutOfRange("c_max = " + std::to_string(c_max) + " exceeds radical table limit " +
                     std::to_string(radicals.limit()));
  }
}

// Product of doubles kept as mantissa * 2^exponent so that thousands of
// factors below 2^53 never overflow. Renormalises every 16 factors
// (16 * 53 bits stays below the double exponent range).
class LogProduct {
 public:
  void multiply(double x) noexcept {
    mantissa_ *= x;
    if (++pending_ == 16) normalise();
  }
  double log() noexcept {
    normalise();
    return std::log(mantissa_) + static_cast<double>(exponent_) * std::numbers::ln2;
  }

 private:
  // Moves the binary exponent of the (positive, normal) mantissa into exponent_.
  void normalise() noexcept {
    auto bits = std::bit_cast<std::uint64_t>(mantissa_);
    exponent_ += static_cast<std::int64_t>(bits >> 52) - 1023;
    bits = (bits & ((std::uint64_t{1} << 52) - 1)) | (std::uint64_t{1023} << 52);
    mantissa_ = std::bit_cast<double>(bits);
    pending_ = 0;
  }
  double mantissa_ = 1.0;
  std::int64_t exponent_ = 0;
  int pending_ = 0;
};

// Per-worker scratch for the coprimality mask over a in [1, (c-1)/2].
class CensusKernel {
 public:
  explicit CensusKernel(const RadicalTable& radicals) : radicals_(radicals) {}

  // Marks every a <= (c-1)/2 sharing no prime with c and returns phi(c).
  std::uint64_t prepare(std::uint64_t c) {
    const std::uint64_t rad_c = radicals_[c];
    const std::uint64_t half = (c - 1) / 2;
    mask_.assign(half + 1, 1);
    mask_[0] = 0;
    std::uint64_t phi = c / rad_c;
    for (auto p : distinct_prime_factors(rad_c)) {
      phi *= p - 1;
      for (std::uint64_t k = p; k <= half; k += p) mask_[k] = 0;
    }
    return phi;
  }

  CensusRow row(std::uint64_t c, const Epsilon& eps) {
    const std::uint64_t* rad = radicals_.data();
    const std::uint64_t rad_c = rad[c];
    const std::uint64_t half = (c - 1) / 2;

    CensusRow row;
    row.c = c;
    row.phi = prepare(c);

    const ProductBand band1 = thm1_band(c, rad_c, eps);
    const ProductBand band2 = thm2_band(c, rad_c, eps);
    LogProduct product;
    std::uint64_t pairs = 0, n1 = 0, n2 = 0, fallbacks = 0;
    const std::uint8_t* mask = mask_.data();

    for (std::uint64_t a = 1; a <= half; ++a) {
      if (!mask[a]) continue;
      const double x = static_cast<double>(rad[a] * rad[c - a]);
      ++pairs;
      n1 += x > band1.hi;
      n2 += x > band2.hi;
      product.multiply(x);
      if (x >= band1.lo && x <= band1.hi) [[unlikely]] {
        ++fallbacks;
        n1 += satisfies_thm1_exact(triple(a, c, rad), eps);
      }
      if (x >= band2.lo && x <= band2.hi) [[unlikely]] {
        ++fallbacks;
        n2 += satisfies_thm2_exact(triple(a, c, rad), eps);
      }
    }
    if (2 * pairs != row.phi) {
      throw std::logic_error("decomposition count mismatch at c = " + std::to_string(c));
    }

    row.pairs = pairs;
    row.n_thm1 = n1;
    row.n_thm2 = n2;
    row.exact_fallbacks = fallbacks;
    const double phi = static_cast<double>(row.phi);
    row.density1 = 2.0 * static_cast<double>(n1) / phi;
    row.density2 = 2.0 * static_cast<double>(n2) / phi;

    const double log_c = std::log(static_cast<double>(c));
    const double log_rad_c = std::log(static_cast<double>(rad_c));
    const double mean_log = product.log() / static_cast<double>(pairs) + log_rad_c;
    const double one_minus_eps =
        static_cast<double>(eps.q() - eps.p()) / static_cast<double>(eps.q());
    row.geo_mean = std::exp(mean_log);
    row.eq1_ratio = std::exp(mean_log - (one_minus_eps * log_rad_c + 2.0 * log_c));
    return row;
  }

  void collect_hits(std::uint64_t c, double threshold, std::vector<Hit>& out) {
    prepare(c);
    const std::uint64_t* rad = radicals_.data();
    const std::uint64_t half = (c - 1) / 2;
    // quality > t  <=>  R(abc) < c^(1/t); the slack only widens the candidate set.
    const double bound =
        std::exp(std::log(static_cast<double>(c)) / threshold) * (1.0 + 1e-9) /
        static_cast<double>(rad[c]);
    for (std::uint64_t a = 1; a <= half; ++a) {
      if (!mask_[a]) continue;
      if (static_cast<double>(rad[a] * rad[c - a]) >= bound) continue;
      const Decomposition d = triple(a, c, rad);
      const double q = abc_quality(d);
      if (q > threshold) out.push_back({d, q});
    }
  }

 private:
  static Decomposition triple(std::uint64_t a, std::uint64_t c, const std::uint64_t* rad) {
    return {a, c - a, c, rad[a], rad[c - a], rad[c]};
  }

  const RadicalTable& radicals_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace

CensusRow census_row(std::uint64_t c, const Epsilon& eps, const RadicalTable& radicals) {
  check_range(c, c, radicals);
  CensusKernel kernel(radicals);
  return kernel.row(c, eps);
}

void scan_range(std::uint64_t c_min, std::uint64_t c_max, const Epsilon& eps,
                const RadicalTable& radicals, const RowSink& sink, ScanOptions options) {
  check_range(c_min, c_max, radicals);
  detail::run_ordered_blocks<std::vector<CensusRow>>(
      c_min, c_max, options.workers, options.block_size,
      [&](std::uint64_t lo, std::uint64_t hi) {
        CensusKernel kernel(radicals);
        std::vector<CensusRow> rows;
        rows.reserve(hi - lo + 1);
        for (std::uint64_t c = lo; c <= hi; ++c) rows.push_back(kernel.row(c, eps));
        return rows;
      },
      [&](std::vector<CensusRow> rows) {
        for (const auto& row : rows) sink(row);
      });
}

KappaEstimate estimate_kappa(std::uint64_t c_min, std::uint64_t c_max, const Epsilon& eps,
                             const RadicalTable& radicals, ScanOptions options) {
  KappaEstimate estimate{eps, c_min, c_max, 0.0, 0};
  scan_range(
      c_min, c_max, eps, radicals,
      [&](const CensusRow& row) {
        if (estimate.argmin_c == 0 || row.eq1_ratio < estimate.min_ratio) {
          estimate.min_ratio = row.eq1_ratio;
          estimate.argmin_c = row.c;
        }
      },
      options);
  return estimate;
}

std::vector<Hit> find_hits(std::uint64_t c_min, std::uint64_t c_max, double threshold,
                           const RadicalTable& radicals, ScanOptions options) {
  check_range(c_min, c_max, radicals);
  if (!(threshold >= 1.0)) {
    throw InvalidArgument("quality threshold " + std::to_string(threshold) + " must be >= 1");
  }
  std::vector<Hit> hits;
  detail::run_ordered_blocks<std::vector<Hit>>(
      c_min, c_max, options.workers, options.block_size,
      [&](std::uint64_t lo, std::uint64_t hi) {
        CensusKernel kernel(radicals);
        std::vector<Hit> found;
        for (std::uint64_t c = lo; c <= hi; ++c) kernel.collect_hits(c, threshold, found);
        return found;
      },
      [&](std::vector<Hit> found) { hits.insert(hits.end(), found.begin(), found.end()); });
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    if (x.quality != y.quality) return x.quality > y.quality;
    if (x.triple.c != y.triple.c) return x.triple.c < y.triple.c;
    return x.triple.a < y.triple.a;
  });
  return hits;
}

}  // namespace abc
