#include "tlcs/lcs_core.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

#include "tlcs/errors.hpp"

namespace tlcs {

namespace {

/// Answers that need no threshold set: an empty side, no matches, or a
/// single-symbol side. Returns the matched symbol (if any) for the
/// one-symbol case through `witness`.
std::optional<std::size_t> trivial_length(const Sequence& x, const PositionLists& pl,
                                          const MatchStats& stats, std::optional<Symbol>& witness) {
  witness.reset();
  if (stats.matches == 0) return 0;
  if (x.size() == 1) {
    witness = x.symbols[0];
    return 1;
  }
  if (pl.total_positions() == 1) {
    // The only column of Y matched somewhere in X.
    for (Symbol c = 0; c < pl.alphabet_size(); ++c) {
      if (!pl.positions(c).empty()) witness = c;
    }
    return 1;
  }
  return std::nullopt;
}

template <typename Set>
void drive(const Sequence& x, const PositionLists& pl, Set& set, const LcsOptions& options) {
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto columns = pl.positions(x.symbols[i - 1]);
    if (columns.empty()) continue;
    set.begin_row();
    RowCost cost;
    if (options.row_observer) {
      cost.row = i;
      cost.alpha = set.contents().size();
      cost.comparisons = set.counters().comparisons;
    }
    for (const Column j : columns) set.update(j);
    if (options.row_observer) {
      cost.updates = columns.size();
      cost.comparisons = set.counters().comparisons - cost.comparisons;
      options.row_observer(cost);
    }
  }
}

LcsResult finish(ThresholdSet& set, MatchStats stats) {
  LcsResult result;
  result.length = set.size();
  result.backend = set.backend();
  result.thresholds = set.contents();
  result.counters = set.counters();
  stats.lcs_length = result.length;
  result.stats = stats;
  return result;
}

LcsResult trivial_result(MatchStats stats, std::size_t length, Backend backend) {
  LcsResult result;
  result.length = length;
  result.backend = backend;
  stats.lcs_length = length;
  result.stats = stats;
  return result;
}

}  // namespace

LcsResult lcs_length(const Sequence& x, const Sequence& y, Backend backend,
                     const LcsOptions& options) {
  return lcs_length(x, PositionLists(y), backend, options);
}

LcsResult lcs_length(const Sequence& x, const PositionLists& pl, Backend backend,
                     const LcsOptions& options) {
  const MatchStats stats = count_matches(x, pl);
  std::optional<Symbol> witness;
  if (const auto trivial = trivial_length(x, pl, stats, witness)) {
    auto result = trivial_result(stats, *trivial, backend);
    if (*trivial == 1) {
      // The lone threshold is the first column of Y holding the witness.
      result.thresholds = {pl.positions(*witness).back()};
    }
    return result;
  }
  if (backend == Backend::veb) {
    VebBackend set(pl.total_positions(), options.rule);
    drive(x, pl, set, options);
    return finish(set, stats);
  }
  if (backend == Backend::tree) {
    TreeBackend set(pl.total_positions());
    drive(x, pl, set, options);
    return finish(set, stats);
  }
  ArrayBackend set(pl.total_positions());
  drive(x, pl, set, options);
  return finish(set, stats);
}

LcsResult lcs_vector_scan(const Sequence& x, const Sequence& y, const LcsOptions& options) {
  return lcs_length(x, PositionLists(y), Backend::array, options);
}

TraceRun lcs_trace(const Sequence& x, const Sequence& y, const TraceOptions& options) {
  const PositionLists pl(y);
  const MatchStats stats = count_matches(x, pl);
  if (stats.matches > options.memory_cap) {
    throw MemoryCapExceeded(stats.matches, options.memory_cap);
  }

  TraceRun run;
  auto& trace = run.trace;
  const std::size_t n = y.size();
  if (stats.matches == 0) {
    run.result = trivial_result(stats, 0, options.backend);
    run.result.subsequence.emplace();
    return run;
  }

  trace.pred_match.assign(stats.matches + 1, 0);
  trace.column.assign(stats.matches + 1, 0);
  trace.live_match.assign(n + 1, 0);
  if (options.record_rows) trace.row.assign(stats.matches + 1, 0);

  auto set = make_threshold_set(n, options.backend, options.rule);
  std::uint64_t m = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto columns = pl.positions(x.symbols[i - 1]);
    if (columns.empty()) continue;
    set->begin_row();
    for (const Column j : columns) {
      set->update(j);
      // Evaluated after j is in S. Columns within a row decrease, so p and
      // its live match always come from an earlier row.
      const Column p = set->pred(j);
      ++m;
      trace.pred_match[m] = trace.live_match[p];
      trace.column[m] = j;
      trace.live_match[j] = m;
      if (options.record_rows) trace.row[m] = i;
    }
  }
  trace.matches = m;

  run.result = finish(*set, stats);
  const Column last = set->max();
  run.final_match = last == 0 ? 0 : trace.live_match[last];
  return run;
}

LcsResult lcs_reconstruct(const Sequence& x, const Sequence& y, const TraceOptions& options) {
  TraceRun run = lcs_trace(x, y, options);
  run.result.subsequence = extract_lcs(run.trace, run.final_match, y);
  return std::move(run.result);
}

std::vector<Symbol> extract_lcs(const TraceTable& trace, std::uint64_t k, const Sequence& y) {
  std::vector<Symbol> out;
  for (; k > 0; k = trace.pred_match.at(k)) out.push_back(y.at1(trace.column.at(k)));
  std::reverse(out.begin(), out.end());
  return out;
}

DpTable dp_oracle(const Sequence& x, const Sequence& y, std::uint64_t cell_cap) {
  const std::uint64_t cells = (std::uint64_t{x.size()} + 1) * (std::uint64_t{y.size()} + 1);
  if (cells > cell_cap) {
    throw ResourceError("DP table of " + std::to_string(cells) + " cells exceeds cap " +
                        std::to_string(cell_cap));
  }
  DpTable table(x.size(), y.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      if (x.symbols[i - 1] == y.symbols[j - 1]) {
        table.at(i, j) = table.at(i - 1, j - 1) + 1;
      } else {
        table.at(i, j) = std::max(table.at(i - 1, j), table.at(i, j - 1));
      }
    }
  }
  return table;
}

std::vector<Symbol> dp_traceback(const DpTable& table, const Sequence& x, const Sequence& y) {
  std::vector<Symbol> out;
  std::size_t i = table.m();
  std::size_t j = table.n();
  while (i > 0 && j > 0) {
    if (x.symbols[i - 1] == y.symbols[j - 1]) {
      out.push_back(x.symbols[i - 1]);
      --i;
      --j;
    } else if (table.at(i - 1, j) >= table.at(i, j - 1)) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_subsequence(std::span<const Symbol> sub, std::span<const Symbol> of) {
  std::size_t k = 0;
  for (const Symbol s : of) {
    if (k == sub.size()) break;
    if (s == sub[k]) ++k;
  }
  return k == sub.size();
}

bool is_common_subsequence(std::span<const Symbol> sub, const Sequence& x, const Sequence& y) {
  return is_subsequence(sub, x.symbols) && is_subsequence(sub, y.symbols);
}

Backend choose_backend(const Sequence& x, const PositionLists& pl) {
  const MatchStats stats = count_matches(x, pl);
  std::vector<std::uint64_t> x_counts(pl.alphabet_size(), 0);
  for (const Symbol c : x.symbols) {
    if (c < x_counts.size()) ++x_counts[c];
  }
  std::uint64_t length_bound = 0;
  for (Symbol c = 0; c < x_counts.size(); ++c) {
    length_bound += std::min<std::uint64_t>(x_counts[c], pl.positions(c).size());
  }
  const std::uint64_t loglog = std::max<std::uint64_t>(
      1, std::bit_width(std::bit_width(std::uint64_t{pl.total_positions()} + 1)));
  return x.size() * length_bound <= 3 * stats.matches * loglog ? Backend::array : Backend::veb;
}

}  // namespace tlcs
