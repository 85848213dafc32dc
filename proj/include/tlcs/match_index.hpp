#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tlcs {

using Symbol = std::uint32_t;

enum class TokenMode { bytes, lines };

std::string_view to_string(TokenMode mode) noexcept;
TokenMode parse_token_mode(std::string_view name);

enum class Provenance { bytes, lines, explicit_tokens };

struct Sequence {
  std::vector<Symbol> symbols;
  /// Every symbol is < alphabet_size.
  std::size_t alphabet_size = 0;
  Provenance provenance = Provenance::explicit_tokens;

  std::size_t size() const noexcept { return symbols.size(); }
  bool empty() const noexcept { return symbols.empty(); }
  /// 1-based access, matching the x_1 ... x_m convention.
  Symbol at1(std::size_t i) const { return symbols.at(i - 1); }
};

/**
 * Dense ids for tokenized input. Bytes map to their value; lines are numbered
 * in first-appearance order. Tokenize both inputs through one table so that
 * equal lines get equal ids.
 */
class SymbolTable {
 public:
  explicit SymbolTable(TokenMode mode) : mode_(mode) {}

  TokenMode mode() const noexcept { return mode_; }
  std::size_t alphabet_size() const noexcept;

  Sequence tokenize(std::string_view raw);

  /// Text of a symbol: the byte itself, or the line without its terminator.
  std::string spell(Symbol s) const;

 private:
  Symbol intern(std::string_view line);

  TokenMode mode_;
  std::unordered_map<std::string, Symbol> ids_;
  std::vector<std::string> lines_;
};

/// Convenience for tests and literals: one symbol per byte.
Sequence bytes_sequence(std::string_view text);
/// Explicit token ids; alphabet_size is max + 1.
Sequence token_sequence(std::vector<Symbol> symbols);

/**
 * For each symbol c, the 1-based positions of c in Y listed from large to
 * small. Built with a single backward scan of Y.
 */
class PositionLists {
 public:
  explicit PositionLists(const Sequence& y);

  std::size_t alphabet_size() const noexcept { return lists_.size(); }
  std::size_t total_positions() const noexcept { return total_; }
  /// Symbols visited during construction; equals |Y|.
  std::size_t symbol_visits() const noexcept { return visits_; }

  /// Strictly decreasing positions of c; empty for symbols not in Y.
  std::span<const std::size_t> positions(Symbol c) const noexcept;

 private:
  std::vector<std::vector<std::size_t>> lists_;
  std::size_t total_ = 0;
  std::size_t visits_ = 0;
};

inline PositionLists build_position_lists(const Sequence& y) { return PositionLists(y); }

struct MatchStats {
  /// Number of pairs (i, j) with x_i == y_j.
  std::uint64_t matches = 0;
  std::size_t m = 0;  ///< |X|
  std::size_t n = 0;  ///< |Y|
  /// Filled in after an LCS run.
  std::optional<std::size_t> lcs_length;
};

/// R = sum over i of |L_Y(x_i)|, without materialising any pair.
MatchStats count_matches(const Sequence& x, const PositionLists& pl);

}  // namespace tlcs
