#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tlcs/lcs_core.hpp"
#include "tlcs/match_index.hpp"
#include "tlcs/threshold_set.hpp"

namespace tlcs {

// Dense reference state for checking the compact threshold set. All profiles
// below are 1-based vectors of length n + 1 whose slot 0 is 0.

/// Q(j) = max over l <= j of H(l).
std::vector<std::uint32_t> prefix_max(const std::vector<std::uint32_t>& heights);

/// Break points of a unit-step profile Q: P(t) = min{ j : Q(j) = t } for
/// t <= max Q, n + 1 otherwise, for t = 1..n.
std::vector<Column> break_points(const std::vector<std::uint32_t>& profile);

/// The members of P that fall inside 1..n, ascending.
std::vector<Column> thresholds_from_breakpoints(const std::vector<Column>& breakpoints);

/// Rebuilds Q from the thresholds: Q(j) = #{ s in S : s <= j }.
std::vector<std::uint32_t> profile_from_thresholds(const std::vector<Column>& thresholds,
                                                   std::size_t n);

struct Violation {
  std::size_t row = 0;
  std::size_t column = 0;
  std::string what;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  std::string describe() const;
};

struct ShadowSnapshot {
  std::size_t row = 0;
  std::vector<std::uint32_t> heights;  // H
  std::vector<std::uint32_t> profile;  // Q
  std::vector<Column> breakpoints;     // P, 1-based
  std::vector<Column> thresholds;      // S
};

/// Value T(i, j) computed for a match.
struct MatchValue {
  std::size_t row;
  Column column;
  std::uint32_t value;
};

/**
 * Runs a ThresholdSet in lock-step with dense H and Q arrays maintained
 * literally by definition:
 *
 *   T(i,j) = 1 + max_{l < j} H(l)        (range maximum over H)
 *   H(j)   = max(H(j), T(i,j))
 *   Q[j .. j'-1] = T(i,j), j' the first column >= j with Q > Q(j-1)
 *
 * and cross-checks them against each other and against S at the end of
 * every row. Quadratic; intended for small instances.
 */
class ShadowTracker {
 public:
  ShadowTracker(std::size_t n, Backend backend = Backend::veb);

  /// Starts from an existing column-height vector H (1-based, slot 0 = 0).
  /// S is seeded with the break points of prefix_max(H).
  static ShadowTracker from_heights(std::vector<std::uint32_t> heights,
                                    Backend backend = Backend::veb);

  /// Processes match (i, j) and returns T(i, j). Within a row, columns must
  /// arrive in decreasing order.
  std::uint32_t process_match(std::size_t row, Column column);

  /// Runs all end-of-row checks, records a snapshot, and resets the row baseline.
  void end_row(std::size_t row);

  std::size_t n() const noexcept { return n_; }
  const std::vector<std::uint32_t>& heights() const noexcept { return heights_; }
  const std::vector<std::uint32_t>& profile() const noexcept { return profile_; }
  std::vector<Column> thresholds() const { return set_->contents(); }
  ThresholdSet& set() noexcept { return *set_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  const std::vector<ShadowSnapshot>& snapshots() const noexcept { return snapshots_; }
  const std::vector<MatchValue>& values() const noexcept { return values_; }

 private:
  void fail(std::size_t row, std::size_t column, std::string what, std::int64_t expected,
            std::int64_t actual);

  std::size_t n_;
  std::vector<std::uint32_t> heights_;
  std::vector<std::uint32_t> profile_;
  std::vector<std::uint32_t> row_start_heights_;
  std::unique_ptr<ThresholdSet> set_;
  std::vector<Violation> violations_;
  std::vector<ShadowSnapshot> snapshots_;
  std::vector<MatchValue> values_;
};

struct ShadowOptions {
  Backend backend = Backend::veb;
  /// Both sequences must be at most this long.
  std::size_t max_side = 256;
  bool keep_snapshots = true;
};

struct ShadowReport {
  std::vector<ShadowSnapshot> snapshots;
  std::vector<Violation> violations;
  std::vector<MatchValue> values;
  std::vector<Column> thresholds;
  std::vector<std::uint32_t> profile;

  bool ok() const noexcept { return violations.empty(); }
};

/// Drives a ShadowTracker over every match of X against Y. Throws
/// ResourceError when either side exceeds options.max_side.
ShadowReport shadow_run(const Sequence& x, const Sequence& y, const ShadowOptions& options = {});

/// Endpoint check against the DP table: S(t) = min{ j : dp[m][j] = t } for
/// every t, and |S| = dp[m][n].
std::vector<Violation> check_threshold_endpoint(const std::vector<Column>& thresholds,
                                                const DpTable& dp);

}  // namespace tlcs
