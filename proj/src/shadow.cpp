#include "tlcs/shadow.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tlcs/errors.hpp"

namespace tlcs {

std::vector<std::uint32_t> prefix_max(const std::vector<std::uint32_t>& heights) {
  std::vector<std::uint32_t> q(heights.size(), 0);
  std::uint32_t running = 0;
  for (std::size_t j = 1; j < heights.size(); ++j) {
    running = std::max(running, heights[j]);
    q[j] = running;
  }
  return q;
}

std::vector<Column> break_points(const std::vector<std::uint32_t>& profile) {
  const std::size_t n = profile.empty() ? 0 : profile.size() - 1;
  std::vector<Column> p(n + 1, n + 1);
  p[0] = 0;
  for (std::size_t j = n; j >= 1; --j) {
    const std::uint32_t t = profile[j];
    if (t >= 1 && t <= n) p[t] = j;
  }
  return p;
}

std::vector<Column> thresholds_from_breakpoints(const std::vector<Column>& breakpoints) {
  const std::size_t n = breakpoints.empty() ? 0 : breakpoints.size() - 1;
  std::vector<Column> s;
  for (std::size_t t = 1; t <= n; ++t) {
    if (breakpoints[t] >= 1 && breakpoints[t] <= n) s.push_back(breakpoints[t]);
  }
  return s;
}

std::vector<std::uint32_t> profile_from_thresholds(const std::vector<Column>& thresholds,
                                                   std::size_t n) {
  std::vector<std::uint32_t> q(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    while (k < thresholds.size() && thresholds[k] <= j) ++k;
    q[j] = static_cast<std::uint32_t>(k);
  }
  return q;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << what << " at row " << row << ", column " << column << ": expected " << expected
     << ", got " << actual;
  return os.str();
}

ShadowTracker::ShadowTracker(std::size_t n, Backend backend)
    : n_(n),
      heights_(n + 1, 0),
      profile_(n + 1, 0),
      row_start_heights_(n + 1, 0),
      set_(make_threshold_set(std::max<std::size_t>(n, 1), backend)) {}

ShadowTracker ShadowTracker::from_heights(std::vector<std::uint32_t> heights, Backend backend) {
  if (heights.empty() || heights[0] != 0) {
    throw std::invalid_argument("heights must be 1-based with slot 0 == 0");
  }
  ShadowTracker tracker(heights.size() - 1, backend);
  tracker.heights_ = std::move(heights);
  tracker.row_start_heights_ = tracker.heights_;
  tracker.profile_ = prefix_max(tracker.heights_);
  for (const Column s : thresholds_from_breakpoints(break_points(tracker.profile_))) {
    tracker.set_->update(s);
  }
  return tracker;
}

void ShadowTracker::fail(std::size_t row, std::size_t column, std::string what,
                         std::int64_t expected, std::int64_t actual) {
  violations_.push_back(Violation{row, column, std::move(what), expected, actual});
}

std::uint32_t ShadowTracker::process_match(std::size_t row, Column column) {
  if (column < 1 || column > n_) throw DomainError("shadow match column out of range");

  std::uint32_t rmq = 0;
  for (std::size_t l = 1; l < column; ++l) rmq = std::max(rmq, heights_[l]);
  const std::uint32_t value = rmq + 1;
  if (profile_[column - 1] + 1 != value) {
    fail(row, column, "T(i,j) from Q(j-1) disagrees with range maximum over H", value,
         profile_[column - 1] + 1);
  }
  heights_[column] = std::max(heights_[column], value);

  // Raise Q on [j, j') where j' is the first column whose Q exceeds Q(j-1).
  const std::uint32_t base = profile_[column - 1];
  for (std::size_t l = column; l <= n_ && profile_[l] <= base; ++l) profile_[l] = value;

  set_->update(column);
  values_.push_back(MatchValue{row, column, value});
  return value;
}

void ShadowTracker::end_row(std::size_t row) {
  const auto dense = prefix_max(heights_);
  for (std::size_t j = 1; j <= n_; ++j) {
    if (dense[j] != profile_[j]) fail(row, j, "Q is not the prefix maximum of H", dense[j], profile_[j]);
    if (heights_[j] < row_start_heights_[j]) {
      fail(row, j, "H decreased across rows", row_start_heights_[j], heights_[j]);
    }
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const std::int64_t step = std::int64_t{profile_[j + 1]} - profile_[j];
    if (step != 0 && step != 1) fail(row, j + 1, "Q step not in {0,1}", 1, step);
  }

  const auto s = set_->contents();
  const auto from_s = profile_from_thresholds(s, n_);
  for (std::size_t j = 1; j <= n_; ++j) {
    if (from_s[j] != profile_[j]) fail(row, j, "Q rebuilt from S disagrees with dense Q", profile_[j], from_s[j]);
  }
  const auto p = break_points(profile_);
  for (std::size_t t = 1; t <= n_; ++t) {
    const Column from_set = t <= s.size() ? s[t - 1] : n_ + 1;
    if (p[t] != from_set) fail(row, t, "break point P(t) disagrees with S", p[t], from_set);
  }

  snapshots_.push_back(ShadowSnapshot{row, heights_, profile_, p, s});
  row_start_heights_ = heights_;
}

ShadowReport shadow_run(const Sequence& x, const Sequence& y, const ShadowOptions& options) {
  if (x.size() > options.max_side || y.size() > options.max_side) {
    throw ResourceError("shadow run limited to sequences of length <= " +
                        std::to_string(options.max_side));
  }
  const PositionLists pl(y);
  ShadowTracker tracker(y.size(), options.backend);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    tracker.set().begin_row();
    for (const Column j : pl.positions(x.symbols[i - 1])) tracker.process_match(i, j);
    tracker.end_row(i);
  }
  ShadowReport report;
  if (options.keep_snapshots) report.snapshots = tracker.snapshots();
  report.violations = tracker.violations();
  report.values = tracker.values();
  report.thresholds = tracker.thresholds();
  report.profile = tracker.profile();
  return report;
}

std::vector<Violation> check_threshold_endpoint(const std::vector<Column>& thresholds,
                                                const DpTable& dp) {
  std::vector<Violation> out;
  const std::size_t m = dp.m();
  const std::size_t n = dp.n();
  if (thresholds.size() != dp.length()) {
    out.push_back(Violation{m, n, "|S| differs from DP length", dp.length(),
                            static_cast<std::int64_t>(thresholds.size())});
  }
  for (std::size_t t = 1; t <= dp.length(); ++t) {
    std::size_t first = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (dp.at(m, j) == t) {
        first = j;
        break;
      }
    }
    const std::int64_t actual = t <= thresholds.size() ? static_cast<std::int64_t>(thresholds[t - 1]) : 0;
    if (actual != static_cast<std::int64_t>(first)) {
      out.push_back(Violation{m, t, "S(t) differs from first DP column reaching t",
                              static_cast<std::int64_t>(first), actual});
    }
  }
  return out;
}

}  // namespace tlcs
