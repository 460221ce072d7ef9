#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "abc/atomic_file.hpp"
#include "abc/census.hpp"
#include "abc/error.hpp"
#include "abc/report.hpp"
#include "abc/tables.hpp"

namespace abc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kVerifyCap = 100'000;
// Suites that visit every coprime pair are quadratic in c; they stop here.
constexpr std::uint64_t kVerifyPairCap = 2'000;

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Epsilon parse_eps(const std::string& text) {
  try {
    return Epsilon::parse(text);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
}

void check_range(std::uint64_t c_min, std::uint64_t c_max) {
  if (c_min < 3) throw UsageError("--min must be at least 3, got " + std::to_string(c_min));
  if (c_max < c_min) {
    throw UsageError("--max " + std::to_string(c_max) + " is below --min " + std::to_string(c_min));
  }
  if (c_max > kMaxTableLimit) {
    throw UsageError("--max " + std::to_string(c_max) + " exceeds the table cap " +
                     std::to_string(kMaxTableLimit));
  }
}

// Loads the radical table from path when it exists, otherwise sieves one
// and, if a path was given, persists it there for the next run.
RadicalTable obtain_radicals(const std::string& path, std::uint64_t needed) {
  if (!path.empty() && std::filesystem::exists(path)) {
    auto table = load_table<TableKind::radical>(path);
    if (table.limit() < needed) {
      throw UsageError("--max " + std::to_string(needed) + " exceeds limit " +
                       std::to_string(table.limit()) + " of --table " + path);
    }
    return table;
  }
  auto table = build_radical_table(needed);
  if (!path.empty()) save_table(path, table);
  return table;
}

// Sends text to --out atomically, or to stdout when no path was given.
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    out.flush();
    return;
  }
  AtomicOutputFile file(path);
  write(file.stream());
  file.commit();
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string counterexample;
};

class Verifier {
 public:
  explicit Verifier(std::uint64_t max) : max_(max), pair_max_(std::min(max, kVerifyPairCap)) {}

  std::vector<SuiteResult> run(const std::string& table_path) {
    const auto radicals = build_radical_table(std::max<std::uint64_t>(max_, 3));
    const auto totients = build_totient_table(std::max<std::uint64_t>(max_, 3));
    std::vector<SuiteResult> results;
    if (!table_path.empty()) results.push_back(table_file(table_path, radicals));
    results.push_back(radical_oracle(radicals));
    results.push_back(radical_squarefree(radicals));
    results.push_back(totient_divisor_sum(totients));
    results.push_back(decomposition_count(radicals, totients));
    results.push_back(exact_vs_float(radicals));
    results.push_back(radical_product_bound(radicals));
    results.push_back(count_domination(radicals));
    return results;
  }

 private:
  std::string upto(std::uint64_t bound, const char* var = "n") const {
    return std::string(" (") + var + " <= " + std::to_string(bound) + ")";
  }

  static void fail(SuiteResult& r, const std::string& what) {
    if (!r.passed) return;
    r.passed = false;
    r.counterexample = what;
  }

  SuiteResult table_file(const std::string& path, const RadicalTable& fresh) const {
    SuiteResult r{"table file " + path, true, {}};
    const auto loaded = load_table<TableKind::radical>(path);  // FormatError -> exit 1
    const auto n = std::min(loaded.limit(), fresh.limit());
    for (std::uint64_t i = 1; i <= n; ++i) {
      if (loaded[i] != fresh[i]) {
        fail(r, "R(" + std::to_string(i) + ") stored as " + std::to_string(loaded[i]) +
                    ", sieve gives " + std::to_string(fresh[i]));
        break;
      }
    }
    return r;
  }

  SuiteResult radical_oracle(const RadicalTable& radicals) const {
    SuiteResult r{"radical sieve vs trial division" + upto(max_), true, {}};
    for (std::uint64_t n = 1; n <= max_ && r.passed; ++n) {
      const auto expected = radical_by_factorization(n);
      if (radicals[n] != expected) {
        fail(r, "n=" + std::to_string(n) + " sieve=" + std::to_string(radicals[n]) +
                    " trial=" + std::to_string(expected));
      }
    }
    return r;
  }

  SuiteResult radical_squarefree(const RadicalTable& radicals) const {
    SuiteResult r{"radical divides n and is squarefree" + upto(max_), true, {}};
    for (std::uint64_t n = 1; n <= max_ && r.passed; ++n) {
      const auto v = radicals[n];
      if (n % v != 0) fail(r, "R(" + std::to_string(n) + ")=" + std::to_string(v) + " does not divide n");
      for (std::uint64_t p = 2; p <= v / p && r.passed; ++p) {
        if (v % (p * p) == 0) {
          fail(r, "R(" + std::to_string(n) + ")=" + std::to_string(v) + " divisible by " +
                      std::to_string(p) + "^2");
        }
      }
    }
    return r;
  }

  SuiteResult totient_divisor_sum(const TotientTable& totients) const {
    SuiteResult r{"totient divisor sum" + upto(max_), true, {}};
    std::vector<std::uint64_t> sums(max_ + 1, 0);
    for (std::uint64_t d = 1; d <= max_; ++d)
      for (std::uint64_t k = d; k <= max_; k += d) sums[k] += totients[d];
    for (std::uint64_t n = 1; n <= max_ && r.passed; ++n) {
      if (sums[n] != n) fail(r, "n=" + std::to_string(n) + " sum=" + std::to_string(sums[n]));
    }
    return r;
  }

  SuiteResult decomposition_count(const RadicalTable& radicals, const TotientTable& totients) const {
    SuiteResult r{"decomposition count equals phi(c)/2" + upto(pair_max_, "c"), true, {}};
    for (std::uint64_t c = 3; c <= pair_max_ && r.passed; ++c) {
      std::uint64_t n = 0;
      for (const auto& d : enumerate_decompositions(c, radicals)) {
        if (d.a + d.b != c || d.a >= d.b || std::gcd(d.a, d.b) != 1) {
          fail(r, "invalid triple (" + std::to_string(d.a) + "," + std::to_string(d.b) + "," +
                      std::to_string(c) + ")");
        }
        ++n;
      }
      if (n != count_decompositions(c, totients)) {
        fail(r, "c=" + std::to_string(c) + " enumerated " + std::to_string(n) + ", phi/2=" +
                    std::to_string(count_decompositions(c, totients)));
      }
    }
    return r;
  }

  SuiteResult exact_vs_float(const RadicalTable& radicals) const {
    SuiteResult r{"fast filter never contradicts exact comparison" + upto(pair_max_, "c"), true, {}};
    const Epsilon grid[] = {{1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}};
    for (std::uint64_t c = 3; c <= pair_max_ && r.passed; ++c) {
      for (const auto& eps : grid) {
        for (const auto& d : enumerate_decompositions(c, radicals)) {
          const auto f1 = fast_filter_thm1(d, eps);
          const auto f2 = fast_filter_thm2(d, eps);
          const bool e1 = satisfies_thm1_exact(d, eps);
          const bool e2 = satisfies_thm2_exact(d, eps);
          const bool bad1 = f1 != Verdict::ambiguous && (f1 == Verdict::holds) != e1;
          const bool bad2 = f2 != Verdict::ambiguous && (f2 == Verdict::holds) != e2;
          if (bad1 || bad2) {
            fail(r, std::string(bad1 ? "first" : "second") + " inequality at (" +
                        std::to_string(d.a) + "," + std::to_string(d.b) + "," +
                        std::to_string(c) + ") eps=" + eps.to_string());
            break;
          }
        }
      }
    }
    return r;
  }

  SuiteResult radical_product_bound(const RadicalTable& radicals) const {
    SuiteResult r{"R(abc) = R(a)R(b)R(c) < R(c)c^2" + upto(pair_max_, "c"), true, {}};
    for (std::uint64_t c = 3; c <= pair_max_ && r.passed; ++c) {
      for (const auto& d : enumerate_decompositions(c, radicals)) {
        const bool coprime = std::gcd(d.rad_a, d.rad_b) == 1 && std::gcd(d.rad_a, d.rad_c) == 1 &&
                             std::gcd(d.rad_b, d.rad_c) == 1;
        const u128 bound = u128{d.rad_c} * c * c;
        if (!coprime || d.rad_abc() >= bound) {
          fail(r, "(" + std::to_string(d.a) + "," + std::to_string(d.b) + "," + std::to_string(c) + ")");
          break;
        }
      }
    }
    return r;
  }

  SuiteResult count_domination(const RadicalTable& radicals) const {
    SuiteResult r{"N(c) <= N1(c) <= phi(c)/2" + upto(pair_max_, "c"), true, {}};
    if (pair_max_ < 3) return r;
    for (const auto& eps : {Epsilon{1, 4}, Epsilon{1, 2}, Epsilon{3, 4}}) {
      scan_range(3, pair_max_, eps, radicals, [&](const CensusRow& row) {
        if (row.n_thm1 > row.n_thm2 || row.n_thm2 > row.pairs || 2 * row.pairs != row.phi) {
          fail(r, "c=" + std::to_string(row.c) + " eps=" + eps.to_string());
        }
      });
    }
    return r;
  }

  std::uint64_t max_;
  std::uint64_t pair_max_;
};

// ---------------------------------------------------------------------------

struct Options {
  std::uint64_t limit = 0;
  std::uint64_t c_min = 3;
  std::uint64_t c_max = 0;
  std::string eps = "1/2";
  std::string table;
  std::string out;
  std::string format = "csv";
  std::string kind = "radical";
  unsigned workers = default_workers();
  double threshold = 0.0;
  std::size_t window = 100;
};

int dispatch(const CLI::App& app, const Options& o, std::ostream& out) {
  const ScanOptions scan{o.workers, 0};

  if (app.got_subcommand("sieve")) {
    if (o.limit == 0) throw UsageError("--limit must be at least 1");
    if (o.limit > kMaxTableLimit) {
      throw UsageError("--limit " + std::to_string(o.limit) + " exceeds the table cap " +
                       std::to_string(kMaxTableLimit));
    }
    if (o.kind == "radical") {
      save_table(o.out, build_radical_table(o.limit));
    } else {
      save_table(o.out, build_totient_table(o.limit));
    }
    return 0;
  }

  if (app.got_subcommand("census")) {
    const auto eps = parse_eps(o.eps);
    check_range(o.c_min, o.c_max);
    const auto radicals = obtain_radicals(o.table, o.c_max);
    emit(o.out, out, [&](std::ostream& s) {
      if (o.format == "json") {
        CensusJsonWriter json(s);
        scan_range(o.c_min, o.c_max, eps, radicals, [&](const CensusRow& r) { json.row(r); }, scan);
        json.finish();
      } else {
        write_census_csv_header(s);
        scan_range(o.c_min, o.c_max, eps, radicals,
                   [&](const CensusRow& r) { write_census_csv_row(s, r); }, scan);
      }
    });
    return 0;
  }

  if (app.got_subcommand("kappa")) {
    const auto eps = parse_eps(o.eps);
    check_range(o.c_min, o.c_max);
    const auto radicals = obtain_radicals(o.table, o.c_max);
    const auto k = estimate_kappa(o.c_min, o.c_max, eps, radicals, scan);
    out << "eps,c_min,c_max,min_ratio,argmin_c\n"
        << k.eps.to_string() << ',' << k.c_min << ',' << k.c_max << ','
        << format_real(k.min_ratio) << ',' << k.argmin_c << '\n';
    return 0;
  }

  if (app.got_subcommand("hits")) {
    check_range(o.c_min, o.c_max);
    if (!(o.threshold >= 1.0)) throw UsageError("--threshold must be at least 1");
    const auto radicals = obtain_radicals(o.table, o.c_max);
    const auto hits = find_hits(o.c_min, o.c_max, o.threshold, radicals, scan);
    emit(o.out, out, [&](std::ostream& s) { write_hits_csv(s, hits); });
    return 0;
  }

  if (app.got_subcommand("trend")) {
    const auto eps = parse_eps(o.eps);
    check_range(o.c_min, o.c_max);
    if (o.window == 0) throw UsageError("--window must be at least 1");
    const auto radicals = obtain_radicals(o.table, o.c_max);
    emit(o.out, out, [&](std::ostream& s) {
      RollingDensity rolling(o.window);
      TrendPoint point;
      write_trend_csv_header(s);
      scan_range(o.c_min, o.c_max, eps, radicals, [&](const CensusRow& r) {
        if (rolling.push(r, point)) write_trend_csv_row(s, point, eps);
      }, scan);
    });
    return 0;
  }

  // verify
  if (o.c_max == 0) throw UsageError("--max must be at least 1");
  if (o.c_max > kVerifyCap) {
    throw UsageError("--max " + std::to_string(o.c_max) + " exceeds the verify cap " +
                     std::to_string(kVerifyCap));
  }
  bool all = true;
  for (const auto& r : Verifier(o.c_max).run(o.table)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) out << ": " << r.counterexample;
    out << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coprime decomposition census for radical inequalities", "abccensus"};
  app.require_subcommand(1);
  Options o;

  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--min", o.c_min, "smallest c (>= 3)")->required();
    cmd->add_option("--max", o.c_max, "largest c")->required();
  };
  auto add_scan = [&](CLI::App* cmd) {
    cmd->add_option("--table", o.table, "radical table file; built and saved if missing");
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* sieve = app.add_subcommand("sieve", "build a table and write it to a file");
  sieve->add_option("--limit", o.limit, "largest n")->required();
  sieve->add_option("--out", o.out, "output file")->required();
  sieve->add_option("--kind", o.kind, "radical or totient")
      ->check(CLI::IsMember({"radical", "totient"}));

  auto* census = app.add_subcommand("census", "per-c counts and geometric-mean ratio");
  add_range(census);
  census->add_option("--eps", o.eps, "epsilon as P/Q");
  add_scan(census);
  census->add_option("--out", o.out, "output file (default stdout)");
  census->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* kappa = app.add_subcommand("kappa", "minimum geometric-mean ratio over a range");
  add_range(kappa);
  kappa->add_option("--eps", o.eps, "epsilon as P/Q");
  add_scan(kappa);

  auto* hits = app.add_subcommand("hits", "triples with quality above a threshold");
  add_range(hits);
  hits->add_option("--threshold", o.threshold, "quality threshold (>= 1)")->required();
  hits->add_option("--out", o.out, "output file (default stdout)");
  add_scan(hits);

  auto* trend = app.add_subcommand("trend", "rolling-mean densities");
  trend->add_option("--min", o.c_min, "smallest c (default 3)");
  trend->add_option("--max", o.c_max, "largest c")->required();
  trend->add_option("--eps", o.eps, "epsilon as P/Q");
  trend->add_option("--window", o.window, "consecutive c per rolling mean (default 100)");
  trend->add_option("--out", o.out, "output file (default stdout)");
  add_scan(trend);

  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->add_option("--max", o.c_max, "largest n checked")->required();
  verify->add_option("--table", o.table, "also check this radical table file");

  std::vector<const char*> argv{"abccensus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    return dispatch(app, o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    err << "error: " << e.field() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace abc::cli
