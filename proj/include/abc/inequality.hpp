#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "abc/decomposition.hpp"

namespace abc {

/// Rational exponent p/q with 0 < p/q < 1, held in lowest terms. A bounded
/// denominator keeps every inequality decidable by integer powers of
/// bounded degree.
class Epsilon {
 public:
  static constexpr std::uint64_t kDefaultMaxDenominator = 64;

  /// Reduces p/q; throws InvalidArgument unless 0 < p < q <= max_denominator
  /// after reduction.
  Epsilon(std::uint64_t p, std::uint64_t q,
          std::uint64_t max_denominator = kDefaultMaxDenominator);

  /// Parses "P/Q" (two base-10 integers separated by '/').
  static Epsilon parse(std::string_view text,
                       std::uint64_t max_denominator = kDefaultMaxDenominator);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t q() const noexcept { return q_; }
  double value() const noexcept { return static_cast<double>(p_) / static_cast<double>(q_); }
  std::string to_string() const;

  friend bool operator==(const Epsilon&, const Epsilon&) = default;
  friend std::strong_ordering operator<=>(const Epsilon& x, const Epsilon& y) noexcept {
    return x.p_ * y.q_ <=> y.p_ * x.q_;
  }

 private:
  std::uint64_t p_;
  std::uint64_t q_;
};

enum class Verdict { holds, fails, ambiguous };

struct TripleVerdict {
  bool thm1 = false;
  bool thm2 = false;
  double quality = 0.0;
  bool exact_fallback_used = false;
};

// Per-triple inequalities, with R = radical and eps = p/q:
//
//   first   c < R(c)^(eps/(1+eps)) R(a)^(1/(1+eps)) R(b)^(1/(1+eps))
//           <=> c^(p+q) < R(c)^p (R(a)R(b))^q
//           <=> R(c)^(1-eps) c^(1+eps) < R(abc)
//   second  c < R(abc)^(1+eps)
//           <=> c^q < R(abc)^(p+q)
//
// Both are strict; equality counts as not satisfied.

/// Decided exactly: the double-precision filter first, big integers when it
/// is ambiguous.
bool satisfies_thm1(const Decomposition& d, const Epsilon& eps);
bool satisfies_thm2(const Decomposition& d, const Epsilon& eps);

/// Big-integer comparison only.
bool satisfies_thm1_exact(const Decomposition& d, const Epsilon& eps);
bool satisfies_thm2_exact(const Decomposition& d, const Epsilon& eps);

/// Safety margin on the log-gap: 64 * machine epsilon * (p+q) * log c.
double ambiguity_margin(std::uint64_t c, const Epsilon& eps) noexcept;

/// Compares p log R(c) + q log(R(a)R(b)) against (p+q) log c in doubles.
/// Returns ambiguous when the two sides are within ambiguity_margin().
Verdict fast_filter_thm1(const Decomposition& d, const Epsilon& eps) noexcept;

/// Compares (p+q) log R(abc) against q log c, same margin rule.
Verdict fast_filter_thm2(const Decomposition& d, const Epsilon& eps) noexcept;

/// log c / log R(abc). Reporting only; never used for counting.
double abc_quality(const Decomposition& d) noexcept;

TripleVerdict evaluate_triple(const Decomposition& d, const Epsilon& eps);

/// For fixed c both inequalities reduce to a threshold on P = R(a)R(b).
/// A band brackets that threshold by the same log-space margin as the
/// fast filters, so classify() never contradicts the exact comparison.
struct ProductBand {
  double lo = 0.0;
  double hi = 0.0;

  Verdict classify(double product) const noexcept {
    if (product > hi) return Verdict::holds;
    if (product < lo) return Verdict::fails;
    return Verdict::ambiguous;
  }
};

ProductBand thm1_band(std::uint64_t c, std::uint64_t rad_c, const Epsilon& eps) noexcept;
ProductBand thm2_band(std::uint64_t c, std::uint64_t rad_c, const Epsilon& eps) noexcept;

}  // namespace abc
