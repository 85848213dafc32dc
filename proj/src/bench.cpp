#include "tlcs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tlcs/lcs_core.hpp"

namespace tlcs::bench {

std::string_view to_string(Structure s) noexcept {
  switch (s) {
    case Structure::uniform_random: return "uniform_random";
    case Structure::repeated_block: return "repeated_block";
    case Structure::near_identical: return "near_identical";
  }
  return "unknown";
}

Structure parse_structure(std::string_view name) {
  if (name == "uniform_random") return Structure::uniform_random;
  if (name == "repeated_block") return Structure::repeated_block;
  if (name == "near_identical") return Structure::near_identical;
  throw std::invalid_argument("unknown structure '" + std::string(name) + "'");
}

std::string_view to_string(Engine e) noexcept {
  switch (e) {
    case Engine::veb: return "veb";
    case Engine::tree: return "tree";
    case Engine::array: return "array";
    case Engine::dp: return "dp_oracle";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  if (name == "veb") return Engine::veb;
  if (name == "tree") return Engine::tree;
  if (name == "array") return Engine::array;
  if (name == "dp" || name == "dp_oracle") return Engine::dp;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::vector<Engine> parse_engines(std::string_view list) {
  std::vector<Engine> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const auto item = list.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_engine(item));
    start = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty backend list");
  return out;
}

Sequence gen_sequence(std::size_t n, std::size_t sigma, std::uint64_t seed, Structure structure) {
  if (sigma == 0) throw std::invalid_argument("sigma must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(sigma - 1));
  Sequence seq;
  seq.alphabet_size = sigma;
  seq.provenance = Provenance::explicit_tokens;
  seq.symbols.reserve(n);
  if (structure == Structure::repeated_block) {
    const std::size_t run = std::max<std::size_t>(1, (n + sigma - 1) / sigma);
    while (seq.symbols.size() < n) {
      const Symbol s = pick(rng);
      for (std::size_t k = 0; k < run && seq.symbols.size() < n; ++k) seq.symbols.push_back(s);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) seq.symbols.push_back(pick(rng));
  }
  return seq;
}

std::pair<Sequence, Sequence> generate_pair(const BenchCase& c) {
  // Independent stream for the second sequence.
  const std::uint64_t partner_seed = c.seed ^ 0x9e3779b97f4a7c15ULL;
  if (c.structure != Structure::near_identical) {
    return {gen_sequence(c.m, c.sigma, c.seed, c.structure),
            gen_sequence(c.n, c.sigma, partner_seed, c.structure)};
  }
  Sequence base = gen_sequence(std::max(c.m, c.n), c.sigma, c.seed, Structure::uniform_random);
  Sequence x = base;
  x.symbols.resize(c.m);
  Sequence y = std::move(base);
  y.symbols.resize(c.n);
  std::mt19937_64 rng(partner_seed);
  if (!y.empty()) {
    std::uniform_int_distribution<std::size_t> where(0, y.size() - 1);
    std::uniform_int_distribution<Symbol> what(0, static_cast<Symbol>(c.sigma - 1));
    const std::size_t edits = std::max<std::size_t>(1, y.size() / 32);
    for (std::size_t k = 0; k < edits; ++k) y.symbols[where(rng)] = what(rng);
  }
  return {std::move(x), std::move(y)};
}

namespace {

template <typename F>
std::uint64_t min_time_ns(unsigned repeats, F&& body) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (unsigned r = 0; r < std::max(1u, repeats); ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min<std::uint64_t>(
        best, std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  }
  return best;
}

void copy_counters(BenchRecord& rec, const OpCounters& c) {
  rec.ops_succ = c.succ;
  rec.ops_pred = c.pred;
  rec.ops_insert = c.insert;
  rec.ops_delete = c.erase;
  rec.ops_update = c.update;
}

/// Runs one engine, fills `rec` and returns a non-empty message on a bound violation.
std::string run_engine(Engine engine, const Sequence& x, const Sequence& y, unsigned repeats,
                       BenchRecord& rec) {
  std::ostringstream err;
  switch (engine) {
    case Engine::veb: {
      TraceRun run;
      rec.time_ns = min_time_ns(repeats, [&] {
        run = lcs_trace(x, y, TraceOptions{Backend::veb, kDefaultMemoryCap});
        run.result.subsequence = extract_lcs(run.trace, run.final_match, y);
      });
      rec.length = run.result.length;
      rec.peak_trace_entries = run.trace.entries();
      copy_counters(rec, run.result.counters);
      const auto& c = run.result.counters;
      if (c.dictionary_ops() > 4 * rec.matches) {
        err << "veb dictionary ops " << c.dictionary_ops() << " exceed 4R = " << 4 * rec.matches;
      } else if (c.erase > c.insert) {
        err << "veb deletes " << c.erase << " exceed inserts " << c.insert;
      }
      break;
    }
    case Engine::tree: {
      LcsResult result;
      rec.time_ns = min_time_ns(repeats, [&] { result = lcs_length(x, y, Backend::tree); });
      rec.length = result.length;
      copy_counters(rec, result.counters);
      const auto& c = result.counters;
      const double depth_bound = 2.0 * std::log2(static_cast<double>(result.length) + 2.0) + 2.0;
      if (c.dictionary_ops() > 4 * rec.matches) {
        err << "tree dictionary ops " << c.dictionary_ops() << " exceed 4R = " << 4 * rec.matches;
      } else if (static_cast<double>(c.max_depth) > depth_bound) {
        err << "tree depth " << c.max_depth << " exceeds " << depth_bound;
      }
      break;
    }
    case Engine::array: {
      LcsResult result;
      std::uint64_t worst_excess = 0;
      std::size_t worst_row = 0;
      LcsOptions options;
      options.row_observer = [&](const RowCost& cost) {
        const std::uint64_t allowed = cost.alpha + cost.updates + 1;
        if (cost.comparisons > allowed && cost.comparisons - allowed > worst_excess) {
          worst_excess = cost.comparisons - allowed;
          worst_row = cost.row;
        }
      };
      rec.time_ns = min_time_ns(repeats, [&] { result = lcs_vector_scan(x, y); });
      result = lcs_vector_scan(x, y, options);
      rec.length = result.length;
      copy_counters(rec, result.counters);
      if (worst_excess > 0) {
        err << "array row " << worst_row << " exceeds alpha + updates + 1 by " << worst_excess;
      }
      break;
    }
    case Engine::dp: {
      std::uint32_t length = 0;
      rec.time_ns = min_time_ns(repeats, [&] { length = dp_oracle(x, y).length(); });
      rec.length = length;
      break;
    }
  }
  return err.str();
}

}  // namespace

BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& options) {
  BenchReport report;
  for (const auto& c : cases) {
    const auto [x, y] = generate_pair(c);
    const std::uint64_t matches = count_matches(x, PositionLists(y)).matches;

    std::vector<BenchRecord> rows;
    std::string failure;
    for (const Engine engine : c.engines) {
      BenchRecord rec;
      rec.case_id = c.case_id;
      rec.structure = std::string(to_string(c.structure));
      rec.n = c.n;
      rec.m = c.m;
      rec.sigma = c.sigma;
      rec.seed = c.seed;
      rec.backend = std::string(to_string(engine));
      rec.matches = matches;
      try {
        failure = run_engine(engine, x, y, options.repeats, rec);
      } catch (const std::exception& e) {
        failure = rec.backend + ": " + e.what();
      }
      if (!failure.empty()) break;
      if (!rows.empty() && rows.front().length != rec.length) {
        failure = "L disagreement: " + rows.front().backend + "=" +
                  std::to_string(rows.front().length) + " " + rec.backend + "=" +
                  std::to_string(rec.length);
        break;
      }
      rows.push_back(std::move(rec));
    }
    if (!failure.empty()) {
      report.errors.push_back("case " + c.case_id + " aborted: " + failure);
      continue;
    }
    for (auto& r : rows) report.records.push_back(std::move(r));
  }
  report.advisories = timing_advisories(report.records);
  return report;
}

std::vector<std::string> timing_advisories(const std::vector<BenchRecord>& records) {
  // (sigma) -> n -> best veb time on square uniform cases.
  std::map<std::size_t, std::map<std::size_t, std::uint64_t>> series;
  for (const auto& r : records) {
    if (r.backend != "veb" || r.structure != "uniform_random" || r.n != r.m) continue;
    auto& slot = series[r.sigma][r.n];
    slot = slot == 0 ? r.time_ns : std::min(slot, r.time_ns);
  }
  std::vector<std::string> out;
  for (const auto& [sigma, by_n] : series) {
    for (auto it = by_n.begin(); it != by_n.end(); ++it) {
      const auto next = by_n.find(it->first * 2);
      if (next == by_n.end() || it->second == 0) continue;
      const double ratio = static_cast<double>(next->second) / static_cast<double>(it->second);
      std::ostringstream os;
      os.precision(3);
      os << "veb time x" << ratio << " for n " << it->first << " -> " << next->first
         << " (sigma " << sigma << ")";
      if (ratio > 6.0) os << ": WARNING, above the 6x per doubling trend";
      out.push_back(os.str());
    }
  }
  return out;
}

std::vector<BenchCase> default_suite(std::uint64_t seed) {
  std::vector<BenchCase> cases;
  for (const std::size_t n : {256u, 512u, 1024u}) {
    BenchCase c;
    c.case_id = "uniform_s2_n" + std::to_string(n);
    c.n = c.m = n;
    c.sigma = 2;
    c.seed = seed;
    cases.push_back(c);
  }
  return cases;
}

namespace {

constexpr std::string_view kColumns[] = {
    "case_id", "structure", "n",        "m",          "sigma",      "seed",
    "backend", "R",         "L",        "time_ns",    "ops_succ",   "ops_pred",
    "ops_insert", "ops_delete", "ops_update", "peak_trace_entries"};

nlohmann::ordered_json to_json(const BenchRecord& r) {
  nlohmann::ordered_json j;
  j["case_id"] = r.case_id;
  j["structure"] = r.structure;
  j["n"] = r.n;
  j["m"] = r.m;
  j["sigma"] = r.sigma;
  j["seed"] = r.seed;
  j["backend"] = r.backend;
  j["R"] = r.matches;
  j["L"] = r.length;
  j["time_ns"] = r.time_ns;
  j["ops_succ"] = r.ops_succ;
  j["ops_pred"] = r.ops_pred;
  j["ops_insert"] = r.ops_insert;
  j["ops_delete"] = r.ops_delete;
  j["ops_update"] = r.ops_update;
  j["peak_trace_entries"] = r.peak_trace_entries;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format) {
  if (format == ReportFormat::json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < std::size(kColumns); ++k) os << (k ? "," : "") << kColumns[k];
  os << "\n";
  for (const auto& r : records) {
    os << csv_field(r.case_id) << ',' << r.structure << ',' << r.n << ',' << r.m << ','
       << r.sigma << ',' << r.seed << ',' << r.backend << ',' << r.matches << ',' << r.length
       << ',' << r.time_ns << ',' << r.ops_succ << ',' << r.ops_pred << ',' << r.ops_insert
       << ',' << r.ops_delete << ',' << r.ops_update << ',' << r.peak_trace_entries << "\n";
  }
  return os.str();
}

std::vector<BenchRecord> parse_report_json(std::string_view text) {
  const auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("bench report JSON must be an array");
  std::vector<BenchRecord> out;
  for (const auto& j : arr) {
    BenchRecord r;
    r.case_id = j.at("case_id").get<std::string>();
    r.structure = j.at("structure").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.sigma = j.at("sigma").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.backend = j.at("backend").get<std::string>();
    r.matches = j.at("R").get<std::uint64_t>();
    r.length = j.at("L").get<std::size_t>();
    r.time_ns = j.at("time_ns").get<std::uint64_t>();
    r.ops_succ = j.at("ops_succ").get<std::uint64_t>();
    r.ops_pred = j.at("ops_pred").get<std::uint64_t>();
    r.ops_insert = j.at("ops_insert").get<std::uint64_t>();
    r.ops_delete = j.at("ops_delete").get<std::uint64_t>();
    r.ops_update = j.at("ops_update").get<std::uint64_t>();
    r.peak_trace_entries = j.at("peak_trace_entries").get<std::uint64_t>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tlcs::bench
