#pragma once

#include <cstdint>
#include <deque>
#include <ostream>
#include <span>
#include <string>

#include "abc/census.hpp"

namespace abc {

/// printf "%.12g": 12 significant digits, locale independent.
std::string format_real(double x);

// Census rows: c,phi,pairs,n_thm1,n_thm2,density1,density2,geo_mean,eq1_ratio
void write_census_csv_header(std::ostream& out);
void write_census_csv_row(std::ostream& out, const CensusRow& row);

/// Streams rows as a JSON array of objects with the CSV column names.
class CensusJsonWriter {
 public:
  explicit CensusJsonWriter(std::ostream& out) : out_(out) {}
  void row(const CensusRow& row);
  void finish();

 private:
  std::ostream& out_;
  bool first_ = true;
};

// Hits: quality,c,a,b,rad_abc
void write_hits_csv(std::ostream& out, std::span<const Hit> hits);

struct TrendPoint {
  std::uint64_t c = 0;
  double density1 = 0.0;
  double density2 = 0.0;
  double density1_rolling = 0.0;
  double density2_rolling = 0.0;
};

/// Trailing mean of the per-c densities over a fixed number of consecutive
/// rows. push() reports a point once the window is full.
class RollingDensity {
 public:
  explicit RollingDensity(std::size_t window);
  bool push(const CensusRow& row, TrendPoint& point);
  std::size_t window() const noexcept { return window_; }

 private:
  std::size_t window_;
  std::deque<std::pair<double, double>> recent_;
};

// Trend: c,density1,density2,density1_rolling,density2_rolling,reference
// where reference = 1 - eps.
void write_trend_csv_header(std::ostream& out);
void write_trend_csv_row(std::ostream& out, const TrendPoint& point, const Epsilon& eps);

}  // namespace abc
