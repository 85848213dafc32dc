#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "tlcs/errors.hpp"
#include "tlcs/shadow.hpp"

using namespace tlcs;
using Profile = std::vector<std::uint32_t>;
using Cols = std::vector<Column>;

TEST_CASE("profile helpers on the worked example") {
  // Slot 0 is the 1-based padding.
  const Profile heights{0, 0, 1, 2, 1, 2, 0, 1};
  const Profile q = prefix_max(heights);
  CHECK(q == Profile{0, 0, 1, 2, 2, 2, 2, 2});

  const Cols p = break_points(q);
  CHECK(p == Cols{0, 2, 3, 8, 8, 8, 8, 8});
  CHECK(thresholds_from_breakpoints(p) == Cols{2, 3});
  CHECK(profile_from_thresholds({2, 3}, 7) == q);
}

TEST_CASE("processing match (4,6) from the worked state") {
  for (const Backend b : {Backend::veb, Backend::tree, Backend::array}) {
    CAPTURE(to_string(b));
    auto tracker = ShadowTracker::from_heights({0, 0, 1, 2, 1, 2, 0, 1}, b);
    CHECK(tracker.profile() == Profile{0, 0, 1, 2, 2, 2, 2, 2});
    CHECK(tracker.thresholds() == Cols{2, 3});

    CHECK(tracker.process_match(4, 6) == 3);
    CHECK(tracker.profile() == Profile{0, 0, 1, 2, 2, 2, 3, 3});
    CHECK(tracker.thresholds() == Cols{2, 3, 6});
    tracker.end_row(4);
    CHECK(tracker.violations().empty());
  }
}

TEST_CASE("shadow_run on random instances reports no violations") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = testing::random_string(rng, rng() % 60, 1 + rng() % 5);
    const auto b = testing::random_string(rng, rng() % 60, 1 + rng() % 5);
    const auto x = bytes_sequence(a);
    const auto y = bytes_sequence(b);
    const auto report = shadow_run(x, y);
    CAPTURE(a);
    CAPTURE(b);
    for (const auto& v : report.violations) FAIL_CHECK(v.describe());
    CHECK(report.snapshots.size() == a.size());
    CHECK(check_threshold_endpoint(report.thresholds, dp_oracle(x, y)).empty());
    // Every T value is the LCS of the two prefixes ending at that match.
    const auto dp = dp_oracle(x, y);
    for (const auto& mv : report.values) REQUIRE(mv.value == dp.at(mv.row, mv.column));
  }
}

TEST_CASE("shadow detects a corrupted threshold set") {
  ShadowTracker broken = ShadowTracker::from_heights({0, 0, 1});
  CHECK(broken.thresholds() == Cols{2});
  // S becomes {1} while the dense profile still breaks at column 2.
  broken.set().update(1);
  broken.end_row(1);
  CHECK_FALSE(broken.violations().empty());
}

TEST_CASE("endpoint check flags a wrong threshold") {
  const auto x = bytes_sequence("abcbdab");
  const auto y = bytes_sequence("bdcaba");
  const auto dp = dp_oracle(x, y);
  // Last DP row is (1,2,2,3,4,4): ranks first reached at columns 1, 2, 4, 5.
  CHECK(check_threshold_endpoint({1, 2, 4, 5}, dp).empty());
  CHECK(lcs_length(x, y, Backend::veb).thresholds == Cols{1, 2, 4, 5});
  CHECK_FALSE(check_threshold_endpoint({1, 2, 4, 6}, dp).empty());
  CHECK_FALSE(check_threshold_endpoint({1, 2, 4}, dp).empty());
}

TEST_CASE("shadow_run size limit") {
  ShadowOptions options;
  options.max_side = 4;
  CHECK_THROWS_AS(shadow_run(bytes_sequence("abcde"), bytes_sequence("ab"), options), ResourceError);
}
