#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tlcs/match_index.hpp"
#include "tlcs/threshold_set.hpp"

namespace tlcs {

/// Default cap on per-match trace entries (B and C each hold one per match).
inline constexpr std::uint64_t kDefaultMemoryCap = std::uint64_t{1} << 26;

/// Cost of one row of the generic driver, reported to LcsOptions::row_observer.
struct RowCost {
  std::size_t row = 0;
  /// |S| when the row began.
  std::size_t alpha = 0;
  std::size_t updates = 0;
  std::uint64_t comparisons = 0;
};

struct LcsOptions {
  UpdateRule rule = UpdateRule::definition;
  std::function<void(const RowCost&)> row_observer;
};

struct LcsResult {
  std::size_t length = 0;
  std::optional<std::vector<Symbol>> subsequence;
  MatchStats stats;
  OpCounters counters;
  Backend backend = Backend::veb;
  /// Ascending members of S at termination; element t is the shortest prefix
  /// of Y whose LCS with X reaches t.
  std::vector<Column> thresholds;
};

/**
 * LCS length by threshold-set updates: for each row i, every column j of
 * L_Y(x_i) in decreasing order is fed to update(S, j); the answer is |S|.
 * Runs in O(n) plus R updates of the chosen backend.
 */
LcsResult lcs_length(const Sequence& x, const Sequence& y, Backend backend,
                     const LcsOptions& options = {});
LcsResult lcs_length(const Sequence& x, const PositionLists& pl, Backend backend,
                     const LcsOptions& options = {});

/// The ordered-array driver; O(nL) comparisons in total.
LcsResult lcs_vector_scan(const Sequence& x, const Sequence& y, const LcsOptions& options = {});

/// Per-match trace recorded during reconstruction. Match numbers are 1-based;
/// slot 0 of `pred_match` and `column` is unused.
struct TraceTable {
  /// Match number of the predecessor in the chain, 0 if none.
  std::vector<std::uint64_t> pred_match;
  /// Column j of each match.
  std::vector<Column> column;
  /// Live match number for each column currently in S; index 0 is the sentinel 0.
  std::vector<std::uint64_t> live_match;
  /// Row i of each match; only filled when TraceOptions::record_rows is set.
  std::vector<std::size_t> row;
  std::uint64_t matches = 0;

  /// Entries held by the trace vectors.
  std::uint64_t entries() const noexcept {
    return pred_match.size() + column.size() + live_match.size() + row.size();
  }
};

struct TraceOptions {
  Backend backend = Backend::veb;
  std::uint64_t memory_cap = kDefaultMemoryCap;
  UpdateRule rule = UpdateRule::definition;
  bool record_rows = false;
};

struct TraceRun {
  LcsResult result;
  TraceTable trace;
  /// Match number whose chain spells the LCS, 0 when L = 0.
  std::uint64_t final_match = 0;
};

/// Runs the driver while recording the B/C/D trace. Throws MemoryCapExceeded
/// when R exceeds options.memory_cap.
TraceRun lcs_trace(const Sequence& x, const Sequence& y, const TraceOptions& options = {});

/// lcs_trace followed by extract_lcs; the result carries the subsequence.
LcsResult lcs_reconstruct(const Sequence& x, const Sequence& y, const TraceOptions& options = {});

/// Symbols of the chain ending at match k, predecessors first. k = 0 gives an empty result.
std::vector<Symbol> extract_lcs(const TraceTable& trace, std::uint64_t k, const Sequence& y);

/// Classic (m+1) x (n+1) dynamic-programming table of prefix LCS lengths.
class DpTable {
 public:
  DpTable(std::size_t m, std::size_t n) : m_(m), n_(n), cells_((m + 1) * (n + 1), 0) {}

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }
  std::uint32_t length() const { return at(m_, n_); }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint32_t> cells_;
};

/// Default cap on DP cells.
inline constexpr std::uint64_t kDefaultDpCellCap = std::uint64_t{1} << 26;

/// Throws ResourceError when (m+1)(n+1) exceeds cell_cap.
DpTable dp_oracle(const Sequence& x, const Sequence& y, std::uint64_t cell_cap = kDefaultDpCellCap);
/// One LCS by standard traceback through the table.
std::vector<Symbol> dp_traceback(const DpTable& table, const Sequence& x, const Sequence& y);

bool is_subsequence(std::span<const Symbol> sub, std::span<const Symbol> of);
bool is_common_subsequence(std::span<const Symbol> sub, const Sequence& x, const Sequence& y);

/**
 * Heuristic backend choice. Uses the multiset-intersection bound
 * L <= sum_c min(count_X(c), count_Y(c)): when m * L_bound is within a small
 * multiple of R * log log n the array scan is no slower than the tree-based
 * updates, so pick it; otherwise pick veb.
 */
Backend choose_backend(const Sequence& x, const PositionLists& pl);

}  // namespace tlcs
