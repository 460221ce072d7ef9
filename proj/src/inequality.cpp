#include "abc/inequality.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <gmpxx.h>

#include "abc/error.hpp"

namespace abc {

Epsilon::Epsilon(std::uint64_t p, std::uint64_t q, std::uint64_t max_denominator) {
  if (p == 0 || q == 0 || p >= q) {
    throw InvalidArgument("epsilon " + std::to_string(p) + "/" + std::to_string(q) +
                          " must lie strictly between 0 and 1");
  }
  const auto g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
  if (q_ > max_denominator) {
    throw InvalidArgument("epsilon " + to_string() + " has denominator above " +
                          std::to_string(max_denominator));
  }
}

Epsilon Epsilon::parse(std::string_view text, std::uint64_t max_denominator) {
  const auto slash = text.find('/');
  auto parse_part = [&](std::string_view part) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size()) {
      throw InvalidArgument("malformed epsilon '" + std::string(text) + "', expected P/Q");
    }
    return v;
  };
  if (slash == std::string_view::npos) {
    throw InvalidArgument("malformed epsilon '" + std::string(text) + "', expected P/Q");
  }
  return Epsilon(parse_part(text.substr(0, slash)), parse_part(text.substr(slash + 1)),
                 max_denominator);
}

std::string Epsilon::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

namespace {

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

mpz_class power(std::uint64_t base, std::uint64_t exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), to_mpz(base).get_mpz_t(), exp);
  return r;
}

mpz_class power(const mpz_class& base, std::uint64_t exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

double log_u64(std::uint64_t v) noexcept { return std::log(static_cast<double>(v)); }

Verdict classify_gap(double gap, double margin) noexcept {
  if (gap > margin) return Verdict::holds;
  if (gap < -margin) return Verdict::fails;
  return Verdict::ambiguous;
}

}  // namespace

bool satisfies_thm1_exact(const Decomposition& d, const Epsilon& eps) {
  const mpz_class lhs = power(d.c, eps.p() + eps.q());
  const mpz_class rhs = power(d.rad_c, eps.p()) * power(to_mpz(d.rad_a) * to_mpz(d.rad_b), eps.q());
  return lhs < rhs;
}

bool satisfies_thm2_exact(const Decomposition& d, const Epsilon& eps) {
  const mpz_class rad_abc = to_mpz(d.rad_a) * to_mpz(d.rad_b) * to_mpz(d.rad_c);
  return power(d.c, eps.q()) < power(rad_abc, eps.p() + eps.q());
}

double ambiguity_margin(std::uint64_t c, const Epsilon& eps) noexcept {
  return 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(eps.p() + eps.q()) *
         log_u64(c);
}

Verdict fast_filter_thm1(const Decomposition& d, const Epsilon& eps) noexcept {
  const double p = static_cast<double>(eps.p());
  const double q = static_cast<double>(eps.q());
  const double gap = p * log_u64(d.rad_c) + q * (log_u64(d.rad_a) + log_u64(d.rad_b)) -
                     (p + q) * log_u64(d.c);
  return classify_gap(gap, ambiguity_margin(d.c, eps));
}

Verdict fast_filter_thm2(const Decomposition& d, const Epsilon& eps) noexcept {
  const double p = static_cast<double>(eps.p());
  const double q = static_cast<double>(eps.q());
  const double log_rad_abc = log_u64(d.rad_a) + log_u64(d.rad_b) + log_u64(d.rad_c);
  const double gap = (p + q) * log_rad_abc - q * log_u64(d.c);
  return classify_gap(gap, ambiguity_margin(d.c, eps));
}

bool satisfies_thm1(const Decomposition& d, const Epsilon& eps) {
  switch (fast_filter_thm1(d, eps)) {
    case Verdict::holds: return true;
    case Verdict::fails: return false;
    case Verdict::ambiguous: break;
  }
  return satisfies_thm1_exact(d, eps);
}

bool satisfies_thm2(const Decomposition& d, const Epsilon& eps) {
  switch (fast_filter_thm2(d, eps)) {
    case Verdict::holds: return true;
    case Verdict::fails: return false;
    case Verdict::ambiguous: break;
  }
  return satisfies_thm2_exact(d, eps);
}

double abc_quality(const Decomposition& d) noexcept {
  return log_u64(d.c) / std::log(static_cast<double>(d.rad_abc()));
}

TripleVerdict evaluate_triple(const Decomposition& d, const Epsilon& eps) {
  TripleVerdict v;
  v.quality = abc_quality(d);
  const Verdict f1 = fast_filter_thm1(d, eps);
  const Verdict f2 = fast_filter_thm2(d, eps);
  v.exact_fallback_used = f1 == Verdict::ambiguous || f2 == Verdict::ambiguous;
  v.thm1 = f1 == Verdict::ambiguous ? satisfies_thm1_exact(d, eps) : f1 == Verdict::holds;
  v.thm2 = f2 == Verdict::ambiguous ? satisfies_thm2_exact(d, eps) : f2 == Verdict::holds;
  return v;
}

// Thresholds in log P space:
//   first:  log P > ((p+q) log c - p log R(c)) / q,   margin delta / q
//   second: log P > q log c / (p+q) - log R(c),       margin delta / (p+q)

ProductBand thm1_band(std::uint64_t c, std::uint64_t rad_c, const Epsilon& eps) noexcept {
  const double p = static_cast<double>(eps.p());
  const double q = static_cast<double>(eps.q());
  const double centre = ((p + q) * log_u64(c) - p * log_u64(rad_c)) / q;
  const double width = ambiguity_margin(c, eps) / q;
  return {std::exp(centre - width), std::exp(centre + width)};
}

ProductBand thm2_band(std::uint64_t c, std::uint64_t rad_c, const Epsilon& eps) noexcept {
  const double p = static_cast<double>(eps.p());
  const double q = static_cast<double>(eps.q());
  const double centre = q * log_u64(c) / (p + q) - log_u64(rad_c);
  const double width = ambiguity_margin(c, eps) / (p + q);
  return {std::exp(centre - width), std::exp(centre + width)};
}

}  // namespace abc
