#include "tlcs/match_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlcs {

std::string_view to_string(TokenMode mode) noexcept {
  return mode == TokenMode::bytes ? "bytes" : "lines";
}

TokenMode parse_token_mode(std::string_view name) {
  if (name == "bytes") return TokenMode::bytes;
  if (name == "lines") return TokenMode::lines;
  throw std::invalid_argument("unknown token mode '" + std::string(name) + "'");
}

std::size_t SymbolTable::alphabet_size() const noexcept {
  return mode_ == TokenMode::bytes ? 256 : lines_.size();
}

Symbol SymbolTable::intern(std::string_view line) {
  auto [it, inserted] = ids_.try_emplace(std::string(line), static_cast<Symbol>(lines_.size()));
  if (inserted) lines_.emplace_back(line);
  return it->second;
}

Sequence SymbolTable::tokenize(std::string_view raw) {
  Sequence seq;
  if (mode_ == TokenMode::bytes) {
    seq.provenance = Provenance::bytes;
    seq.symbols.reserve(raw.size());
    for (const char c : raw) seq.symbols.push_back(static_cast<unsigned char>(c));
  } else {
    seq.provenance = Provenance::lines;
    std::size_t start = 0;
    while (start < raw.size()) {
      const std::size_t end = raw.find('\n', start);
      if (end == std::string_view::npos) {
        seq.symbols.push_back(intern(raw.substr(start)));
        break;
      }
      seq.symbols.push_back(intern(raw.substr(start, end - start)));
      start = end + 1;
    }
  }
  seq.alphabet_size = alphabet_size();
  return seq;
}

std::string SymbolTable::spell(Symbol s) const {
  if (mode_ == TokenMode::bytes) return std::string(1, static_cast<char>(s));
  return lines_.at(s);
}

Sequence bytes_sequence(std::string_view text) {
  SymbolTable table(TokenMode::bytes);
  return table.tokenize(text);
}

Sequence token_sequence(std::vector<Symbol> symbols) {
  Sequence seq;
  seq.alphabet_size =
      symbols.empty() ? 0 : static_cast<std::size_t>(*std::max_element(symbols.begin(), symbols.end())) + 1;
  seq.symbols = std::move(symbols);
  seq.provenance = Provenance::explicit_tokens;
  return seq;
}

PositionLists::PositionLists(const Sequence& y) : lists_(y.alphabet_size), total_(y.size()) {
  // Scanning backwards appends positions in decreasing order.
  for (std::size_t j = y.size(); j >= 1; --j) {
    const Symbol c = y.symbols[j - 1];
    if (c >= lists_.size()) lists_.resize(static_cast<std::size_t>(c) + 1);
    lists_[c].push_back(j);
    ++visits_;
  }
}

std::span<const std::size_t> PositionLists::positions(Symbol c) const noexcept {
  if (c >= lists_.size()) return {};
  return lists_[c];
}

MatchStats count_matches(const Sequence& x, const PositionLists& pl) {
  MatchStats stats;
  stats.m = x.size();
  stats.n = pl.total_positions();
  for (const Symbol c : x.symbols) stats.matches += pl.positions(c).size();
  return stats;
}

}  // namespace tlcs
