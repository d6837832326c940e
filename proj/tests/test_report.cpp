#include <catch2/catch.hpp>

#include <random>
#include <sstream>
#include <vector>

#include "gpi/gridspec.hpp"
#include "gpi/report.hpp"
#include "gpi/verify.hpp"

using gpi::parse_grid;
using gpi::VerdictRecord;

TEST_CASE("parse_grid lists") {
  CHECK(parse_grid("1,2,3") == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(parse_grid("-0.5") == std::vector<double>{-0.5});
  CHECK(parse_grid("0.9975,-0.9975") == std::vector<double>{0.9975, -0.9975});
}

TEST_CASE("parse_grid ranges expand inclusively") {
  CHECK(parse_grid("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto down = parse_grid("1:0:-0.5");
  REQUIRE(down.size() == 3);
  CHECK(down[0] == 1.0);
  CHECK(down[2] == 0.0);
  // floating steps that do not land exactly still produce the full count
  const auto nine = parse_grid("0.1:0.9:0.1");
  REQUIRE(nine.size() == 9);
  CHECK(nine.back() == Approx(0.9).epsilon(1e-12));
}

TEST_CASE("parse_grid rejects malformed specs") {
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:-0.25"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0.25:2"), std::invalid_argument);
}

TEST_CASE("verdict records round-trip through JSON field-for-field") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> alpha(-0.95, 4.0);
  std::uniform_real_distribution<double> rho(-0.9975, 0.9975);
  for (int i = 0; i < 100; ++i) {
    VerdictRecord rec;
    rec.alpha1 = alpha(gen);
    rec.alpha2 = alpha(gen);
    rec.rho = rho(gen);
    rec.has_rho = (i % 4 != 0);
    rec.verdict = gpi::check_bivariate({rec.alpha1, rec.alpha2}, rec.rho, 1e-9);
    const nlohmann::json j = gpi::to_json(rec);
    const VerdictRecord back = gpi::verdict_record_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.alpha1 == rec.alpha1);
    CHECK(back.alpha2 == rec.alpha2);
    CHECK(back.has_rho == rec.has_rho);
    if (rec.has_rho) CHECK(back.rho == rec.rho);
    CHECK(back.verdict.statement == rec.verdict.statement);
    CHECK(back.verdict.ratio == rec.verdict.ratio);
    CHECK(back.verdict.threshold == rec.verdict.threshold);
    CHECK(back.verdict.margin == rec.verdict.margin);
    CHECK(back.verdict.tolerance == rec.verdict.tolerance);
    CHECK(back.verdict.verdict == rec.verdict.verdict);
    CHECK(back.verdict.error_bound == rec.verdict.error_bound);
    CHECK(back.verdict.method == rec.verdict.method);
  }
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::pow(10.0, dist(gen)) * (i % 2 == 0 ? 1.0 : -1.0);
    const std::string s = gpi::detail::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(std::stod(gpi::detail::format_double(0.875)) == 0.875);
  CHECK(std::stod(gpi::detail::format_double(0.0)) == 0.0);
}

TEST_CASE("sweep serialization is deterministic and carries no timestamp in JSON") {
  gpi::SweepGrid grid{{-0.5, 2.0}, {2.0}, {0.0, 0.5}};
  gpi::SweepReport report = gpi::sweep(grid, 1e-9);
  report.timestamp = "2000-01-01T00:00:00Z";
  std::ostringstream a, b;
  gpi::write_sweep(a, report, gpi::OutputFormat::json);
  gpi::SweepReport again = gpi::sweep(grid, 1e-9);
  again.timestamp = "1999-12-31T23:59:59Z";
  gpi::write_sweep(b, again, gpi::OutputFormat::json);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("1999") == std::string::npos);
  CHECK(a.str().find("2000") == std::string::npos);

  // every emitted JSON line parses
  std::istringstream lines(a.str());
  std::string line;
  int parsed = 0;
  while (std::getline(lines, line)) {
    CHECK_NOTHROW(nlohmann::json::parse(line));
    ++parsed;
  }
  CHECK(parsed == 5);  // 4 records + summary
}

TEST_CASE("sweep CSV has a header and one row per record") {
  gpi::SweepGrid grid{{-0.5}, {2.0}, {0.0, 0.5, 0.999}};
  const gpi::SweepReport report = gpi::sweep(grid, 1e-9);
  std::ostringstream os;
  gpi::write_sweep(os, report, gpi::OutputFormat::csv);
  std::istringstream lines(os.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);  // header + 3 records (one skipped)
  CHECK(rows[0].rfind("alpha1,alpha2,rho,", 0) == 0);
  CHECK(rows[3].find("skipped") != std::string::npos);
}
