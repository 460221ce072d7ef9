#include "abc/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace abc {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace

void write_census_csv_header(std::ostream& out) {
  out << "c,phi,pairs,n_thm1,n_thm2,density1,density2,geo_mean,eq1_ratio\n";
}

void write_census_csv_row(std::ostream& out, const CensusRow& r) {
  out << r.c << ',' << r.phi << ',' << r.pairs << ',' << r.n_thm1 << ',' << r.n_thm2 << ','
      << format_real(r.density1) << ',' << format_real(r.density2) << ','
      << format_real(r.geo_mean) << ',' << format_real(r.eq1_ratio) << '\n';
}

void CensusJsonWriter::row(const CensusRow& r) {
  out_ << (first_ ? "[\n" : ",\n");
  first_ = false;
  out_ << "  {\"c\": " << r.c << ", \"phi\": " << r.phi << ", \"pairs\": " << r.pairs
       << ", \"n_thm1\": " << r.n_thm1 << ", \"n_thm2\": " << r.n_thm2
       << ", \"density1\": " << format_real(r.density1)
       << ", \"density2\": " << format_real(r.density2)
       << ", \"geo_mean\": " << format_real(r.geo_mean)
       << ", \"eq1_ratio\": " << format_real(r.eq1_ratio) << "}";
}

void CensusJsonWriter::finish() { out_ << (first_ ? "[]\n" : "\n]\n"); }

void write_hits_csv(std::ostream& out, std::span<const Hit> hits) {
  out << "quality,c,a,b,rad_abc\n";
  for (const auto& h : hits) {
    out << format_real(h.quality) << ',' << h.triple.c << ',' << h.triple.a << ',' << h.triple.b
        << ',' << u128_to_string(h.triple.rad_abc()) << '\n';
  }
}

RollingDensity::RollingDensity(std::size_t window) : window_(window) {
  if (window == 0) throw std::invalid_argument("rolling window must be positive");
}

bool RollingDensity::push(const CensusRow& row, TrendPoint& point) {
  recent_.emplace_back(row.density1, row.density2);
  if (recent_.size() > window_) recent_.pop_front();
  if (recent_.size() < window_) return false;
  // Summed afresh each time; a running sum would drift outside [0, 1].
  double sum1 = 0.0, sum2 = 0.0;
  for (const auto& [d1, d2] : recent_) {
    sum1 += d1;
    sum2 += d2;
  }
  const double n = static_cast<double>(window_);
  point = {row.c, row.density1, row.density2, sum1 / n, sum2 / n};
  return true;
}

void write_trend_csv_header(std::ostream& out) {
  out << "c,density1,density2,density1_rolling,density2_rolling,reference\n";
}

void write_trend_csv_row(std::ostream& out, const TrendPoint& p, const Epsilon& eps) {
  const double reference = static_cast<double>(eps.q() - eps.p()) / static_cast<double>(eps.q());
  out << p.c << ',' << format_real(p.density1) << ',' << format_real(p.density2) << ','
      << format_real(p.density1_rolling) << ',' << format_real(p.density2_rolling) << ','
      << format_real(reference) << '\n';
}

}  // namespace abc
