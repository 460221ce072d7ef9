#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "abc/report.hpp"

using namespace abc;

namespace {

CensusRow sample_row() {
  return census_row(10, Epsilon(1, 2), build_radical_table(10));
}

}  // namespace

TEST_CASE("reals carry 12 significant digits") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(79.37253933193772) == "79.3725393319");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("census csv") {
  std::ostringstream out;
  write_census_csv_header(out);
  write_census_csv_row(out, sample_row());
  CHECK(out.str() ==
        "c,phi,pairs,n_thm1,n_thm2,density1,density2,geo_mean,eq1_ratio\n"
        "10,4,2,1,2,0.5,1,79.3725393319,0.25099800796\n");
}

TEST_CASE("census json uses the csv field names") {
  std::ostringstream out;
  CensusJsonWriter json(out);
  json.row(sample_row());
  json.row(sample_row());
  json.finish();
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  const auto& r = doc[0];
  CHECK(r["c"] == 10);
  CHECK(r["phi"] == 4);
  CHECK(r["pairs"] == 2);
  CHECK(r["n_thm1"] == 1);
  CHECK(r["n_thm2"] == 2);
  CHECK(r["density1"] == 0.5);
  CHECK(r["density2"] == 1);
  CHECK(r["geo_mean"].get<double>() == doctest::Approx(79.3725393319));
  CHECK(r["eq1_ratio"].get<double>() == doctest::Approx(0.25099800796));
  CHECK(r.size() == 9);

  std::ostringstream empty;
  CensusJsonWriter none(empty);
  none.finish();
  CHECK(nlohmann::json::parse(empty.str()).empty());
}

TEST_CASE("hits csv") {
  std::ostringstream out;
  const Hit h{{3, 125, 128, 3, 5, 2}, 1.4265653296335432};
  write_hits_csv(out, std::span<const Hit>(&h, 1));
  CHECK(out.str() == "quality,c,a,b,rad_abc\n1.42656532963,128,3,125,30\n");
}

TEST_CASE("rolling density over full windows") {
  RollingDensity rolling(3);
  TrendPoint p;
  CensusRow row;
  auto push = [&](std::uint64_t c, double d1) {
    row.c = c;
    row.density1 = d1;
    row.density2 = 1.0;
    return rolling.push(row, p);
  };
  CHECK(!push(3, 0.0));
  CHECK(!push(4, 0.5));
  CHECK(push(5, 1.0));
  CHECK(p.c == 5);
  CHECK(p.density1_rolling == doctest::Approx(0.5));
  CHECK(p.density2_rolling == 1.0);
  CHECK(push(6, 1.0));
  CHECK(p.density1_rolling == doctest::Approx(2.5 / 3));

  std::ostringstream out;
  write_trend_csv_header(out);
  write_trend_csv_row(out, p, Epsilon(1, 4));
  CHECK(out.str() ==
        "c,density1,density2,density1_rolling,density2_rolling,reference\n"
        "6,1,1,0.833333333333,1,0.75\n");
  CHECK_THROWS(RollingDensity(0));
}
