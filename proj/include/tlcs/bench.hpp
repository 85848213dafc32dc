#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tlcs/match_index.hpp"

namespace tlcs::bench {

enum class Structure { uniform_random, repeated_block, near_identical };

std::string_view to_string(Structure s) noexcept;
Structure parse_structure(std::string_view name);

/// What a bench row measures. `dp` is the quadratic reference table.
enum class Engine { veb, tree, array, dp };

std::string_view to_string(Engine e) noexcept;
Engine parse_engine(std::string_view name);
/// Comma-separated list, e.g. "veb,array".
std::vector<Engine> parse_engines(std::string_view list);

struct BenchCase {
  std::string case_id;
  std::size_t n = 0;  ///< |Y|
  std::size_t m = 0;  ///< |X|
  std::size_t sigma = 2;
  std::uint64_t seed = 1;
  Structure structure = Structure::uniform_random;
  std::vector<Engine> engines{Engine::veb, Engine::tree, Engine::array, Engine::dp};
};

/**
 * Deterministic sequence of length n over sigma symbols.
 *
 *  - uniform_random: i.i.d. uniform symbols.
 *  - repeated_block: runs of ceil(n / sigma) equal symbols, the run symbols
 *    drawn at random; few distinct symbols per stretch, so R is large.
 *  - near_identical: same as uniform_random. Use generate_pair to get the
 *    perturbed partner.
 */
Sequence gen_sequence(std::size_t n, std::size_t sigma, std::uint64_t seed, Structure structure);

/// (X, Y) for a case. For near_identical, Y is X (resized to n) with about
/// one symbol in 32 substituted, so L stays close to min(m, n).
std::pair<Sequence, Sequence> generate_pair(const BenchCase& c);

/// One row of a report; field order is the CSV column order.
struct BenchRecord {
  std::string case_id;
  std::string structure;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t sigma = 0;
  std::uint64_t seed = 0;
  std::string backend;
  std::uint64_t matches = 0;  ///< R
  std::size_t length = 0;     ///< L
  std::uint64_t time_ns = 0;
  std::uint64_t ops_succ = 0;
  std::uint64_t ops_pred = 0;
  std::uint64_t ops_insert = 0;
  std::uint64_t ops_delete = 0;
  std::uint64_t ops_update = 0;
  std::uint64_t peak_trace_entries = 0;

  bool operator==(const BenchRecord&) const = default;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  /// Cases that were aborted (engine disagreement or a violated counter bound).
  std::vector<std::string> errors;
  /// Non-failing observations such as the timing trend check.
  std::vector<std::string> advisories;

  bool ok() const noexcept { return errors.empty(); }
};

struct BenchOptions {
  /// Timing repeats per (case, engine); the minimum is reported.
  unsigned repeats = 3;
};

/**
 * Runs every engine of every case. veb runs the full trace-recording driver,
 * tree and array the length-only driver, dp the reference table. Per case
 * the engines must agree on L and each engine's counters must respect its
 * bound:
 *
 *   veb    succ + delete + insert + pred <= 4R, delete <= insert
 *   tree   succ + delete + insert + pred <= 4R, depth <= 2 log2(L+2) + 2
 *   array  comparisons per row <= alpha + updates + 1
 *
 * Otherwise the case is dropped and an error recorded.
 */
BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& options = {});

/// Timing trend over doubling n on uniform_random cases: warns when the veb
/// time grows by more than 6x per doubling.
std::vector<std::string> timing_advisories(const std::vector<BenchRecord>& records);

/// Uniform random, sigma = 2, n = m in {256, 512, 1024}.
std::vector<BenchCase> default_suite(std::uint64_t seed = 1);

enum class ReportFormat { csv, json };

std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format);
/// Inverse of emit_report(..., json). Throws on malformed input.
std::vector<BenchRecord> parse_report_json(std::string_view text);

}  // namespace tlcs::bench
