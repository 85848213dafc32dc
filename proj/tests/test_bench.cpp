#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tlcs/bench.hpp"
#include "tlcs/lcs_core.hpp"

using namespace tlcs;
using namespace tlcs::bench;

TEST_CASE("generators are deterministic") {
  CHECK(gen_sequence(8, 2, 1, Structure::uniform_random).symbols ==
        gen_sequence(8, 2, 1, Structure::uniform_random).symbols);
  CHECK(gen_sequence(64, 4, 1, Structure::uniform_random).symbols !=
        gen_sequence(64, 4, 2, Structure::uniform_random).symbols);

  for (const Structure s : {Structure::uniform_random, Structure::repeated_block, Structure::near_identical}) {
    BenchCase c;
    c.n = 40;
    c.m = 30;
    c.sigma = 5;
    c.seed = 9;
    c.structure = s;
    const auto [x1, y1] = generate_pair(c);
    const auto [x2, y2] = generate_pair(c);
    CHECK(x1.symbols == x2.symbols);
    CHECK(y1.symbols == y2.symbols);
    CHECK(x1.size() == 30);
    CHECK(y1.size() == 40);
  }
}

TEST_CASE("sigma = 1 forces R = n^2 and L = n against itself") {
  for (const std::uint64_t seed : {1u, 2u, 77u}) {
    const auto s = gen_sequence(8, 1, seed, Structure::uniform_random);
    const auto r = lcs_length(s, s, Backend::veb);
    CHECK(r.stats.matches == 64);
    CHECK(r.length == 8);
  }
}

TEST_CASE("uniform R concentrates around n^2 / sigma") {
  // R is a sum of n^2 pairwise-uncorrelated Bernoulli(1/sigma) indicators, so
  // its standard deviation is sqrt(n^2 p (1 - p)) <= sqrt(n^2 / sigma).
  const double mean = 100.0 * 100.0 / 26.0;
  const double slack = 5.0 * std::sqrt(mean);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    BenchCase c;
    c.n = c.m = 100;
    c.sigma = 26;
    c.seed = seed;
    const auto [x, y] = generate_pair(c);
    const double r = static_cast<double>(count_matches(x, PositionLists(y)).matches);
    CHECK(std::abs(r - mean) <= slack);
  }
}

TEST_CASE("R quadruples when n doubles") {
  auto matches = [](std::size_t n) {
    BenchCase c;
    c.n = c.m = n;
    c.sigma = 2;
    c.seed = 5;
    const auto [x, y] = generate_pair(c);
    return static_cast<double>(count_matches(x, PositionLists(y)).matches);
  };
  const double ratio = matches(512) / matches(256);
  CHECK(ratio >= 4.0 * 0.8);
  CHECK(ratio <= 4.0 * 1.2);
}

TEST_CASE("near_identical keeps L close to n") {
  BenchCase c;
  c.n = c.m = 256;
  c.sigma = 4;
  c.structure = Structure::near_identical;
  const auto [x, y] = generate_pair(c);
  CHECK(lcs_length(x, y, Backend::veb).length >= 256 - 256 / 32);
}

TEST_CASE("run_bench cross-checks engines and counter bounds") {
  BenchCase c;
  c.case_id = "t";
  c.n = c.m = 200;
  c.sigma = 3;
  c.structure = Structure::repeated_block;
  const auto report = run_bench({c}, BenchOptions{1});
  REQUIRE(report.ok());
  REQUIRE(report.records.size() == 4);
  for (const auto& r : report.records) {
    CHECK(r.length == report.records.front().length);
    CHECK(r.matches == report.records.front().matches);
  }
  const auto& veb = report.records.front();
  CHECK(veb.backend == "veb");
  CHECK(veb.ops_succ + veb.ops_pred + veb.ops_insert + veb.ops_delete <= 4 * veb.matches);
  CHECK(veb.peak_trace_entries > 0);

  BenchCase two = c;
  two.engines = {Engine::veb, Engine::array};
  CHECK(run_bench({two}, BenchOptions{1}).records.size() == 2);
}

TEST_CASE("emit_report") {
  CHECK(emit_report({}, ReportFormat::csv) ==
        "case_id,structure,n,m,sigma,seed,backend,R,L,time_ns,ops_succ,ops_pred,ops_insert,"
        "ops_delete,ops_update,peak_trace_entries\n");

  BenchCase c;
  c.case_id = "rt";
  c.n = c.m = 50;
  c.sigma = 4;
  c.engines = {Engine::veb, Engine::tree};
  const auto report = run_bench({c}, BenchOptions{1});
  const auto csv = emit_report(report.records, ReportFormat::csv);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 3);

  const auto json = emit_report(report.records, ReportFormat::json);
  CHECK(parse_report_json(json) == report.records);
  CHECK(parse_report_json(emit_report({}, ReportFormat::json)).empty());
}

TEST_CASE("timing advisories flag steep growth only") {
  std::vector<BenchRecord> records(2);
  for (auto& r : records) {
    r.backend = "veb";
    r.structure = "uniform_random";
    r.sigma = 2;
  }
  records[0].n = records[0].m = 256;
  records[0].time_ns = 1000;
  records[1].n = records[1].m = 512;
  records[1].time_ns = 4000;
  auto notes = timing_advisories(records);
  REQUIRE(notes.size() == 1);
  CHECK(notes[0].find("WARNING") == std::string::npos);
  records[1].time_ns = 7000;
  notes = timing_advisories(records);
  CHECK(notes[0].find("WARNING") != std::string::npos);
}

TEST_CASE("engine list parsing") {
  CHECK(parse_engines("veb,array") == std::vector<Engine>{Engine::veb, Engine::array});
  CHECK(parse_engines("dp") == std::vector<Engine>{Engine::dp});
  CHECK_THROWS(parse_engines(""));
  CHECK_THROWS(parse_engines("veb,quux"));
}
