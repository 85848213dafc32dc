#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlcs/bench.hpp"
#include "tlcs/errors.hpp"
#include "tlcs/lcs_core.hpp"
#include "tlcs/match_index.hpp"
#include "tlcs/shadow.hpp"

namespace tlcs::cli {

namespace {

using nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> inputs;
  bool inline_inputs = false;
  std::string mode = "bytes";
  std::string backend = "veb";
  std::string output = "text";
  std::uint64_t memory_cap = kDefaultMemoryCap;
  bool literal_guard = false;

  std::optional<std::size_t> bench_n;
  std::optional<std::size_t> bench_m;
  std::size_t bench_sigma = 2;
  std::uint64_t bench_seed = 1;
  std::string bench_structure = "uniform_random";
  unsigned bench_repeats = 3;
  std::string bench_backends = "veb,tree,array,dp";
  bool bench_json = false;
};

std::string read_input(const std::string& path, bool allow_stdin, std::istream& in) {
  if (path == "-") {
    if (!allow_stdin) throw InputError("only the first input may be '-'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read '" + path + "'");
  std::string data{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  if (file.bad()) throw InputError("error reading '" + path + "'");
  return data;
}

struct Inputs {
  SymbolTable table;
  Sequence x;
  Sequence y;
};

Inputs load(const Config& cfg, std::istream& in) {
  Inputs io{SymbolTable(parse_token_mode(cfg.mode)), {}, {}};
  const std::string a = cfg.inline_inputs ? cfg.inputs[0] : read_input(cfg.inputs[0], true, in);
  const std::string b = cfg.inline_inputs ? cfg.inputs[1] : read_input(cfg.inputs[1], false, in);
  io.x = io.table.tokenize(a);
  io.y = io.table.tokenize(b);
  // Both sequences share the final alphabet.
  io.x.alphabet_size = io.y.alphabet_size = io.table.alphabet_size();
  return io;
}

Backend resolve_backend(const Config& cfg, const Sequence& x, const PositionLists& pl) {
  if (cfg.backend == "auto") return choose_backend(x, pl);
  return parse_backend(cfg.backend);
}

UpdateRule rule_of(const Config& cfg) {
  return cfg.literal_guard ? UpdateRule::literal_max_guard : UpdateRule::definition;
}

void print_fields(const ordered_json& fields, const Config& cfg, std::ostream& out) {
  if (cfg.output == "json") {
    out << fields.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : fields.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

std::string spell(const SymbolTable& table, const std::vector<Symbol>& seq) {
  std::string out;
  for (const Symbol s : seq) {
    out += table.spell(s);
    if (table.mode() == TokenMode::lines) out += '\n';
  }
  return out;
}

void check_length_cap(const Config& cfg, const Sequence& y) {
  // Position lists and the threshold set each hold one entry per column of Y.
  if (std::uint64_t{y.size()} + 1 > cfg.memory_cap) {
    throw ResourceError("|Y| + 1 = " + std::to_string(y.size() + 1) + " entries exceed memory cap " +
                        std::to_string(cfg.memory_cap));
  }
}

int cmd_length(const Config& cfg, std::istream& in, std::ostream& out) {
  const Inputs io = load(cfg, in);
  check_length_cap(cfg, io.y);
  const PositionLists pl(io.y);
  const Backend backend = resolve_backend(cfg, io.x, pl);
  LcsOptions options;
  options.rule = rule_of(cfg);
  const LcsResult r = lcs_length(io.x, pl, backend, options);
  ordered_json fields;
  fields["n"] = io.y.size();
  fields["m"] = io.x.size();
  fields["R"] = r.stats.matches;
  fields["L"] = r.length;
  fields["backend"] = std::string(to_string(backend));
  print_fields(fields, cfg, out);
  return kOk;
}

int cmd_subseq(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  const Inputs io = load(cfg, in);
  check_length_cap(cfg, io.y);
  const PositionLists pl(io.y);
  TraceOptions options;
  options.backend = resolve_backend(cfg, io.x, pl);
  options.memory_cap = cfg.memory_cap;
  options.rule = rule_of(cfg);
  const LcsResult r = lcs_reconstruct(io.x, io.y, options);
  const auto& sub = *r.subsequence;
  if (sub.size() != r.length || !is_common_subsequence(sub, io.x, io.y)) {
    err << "reconstructed subsequence failed the validity check (length " << sub.size()
        << ", L " << r.length << ")\n";
    return kMismatch;
  }
  if (cfg.output == "json") {
    ordered_json fields;
    fields["n"] = io.y.size();
    fields["m"] = io.x.size();
    fields["R"] = r.stats.matches;
    fields["L"] = r.length;
    fields["backend"] = std::string(to_string(r.backend));
    if (io.table.mode() == TokenMode::lines) {
      auto lines = ordered_json::array();
      for (const Symbol s : sub) lines.push_back(io.table.spell(s));
      fields["subsequence"] = lines;
    } else {
      fields["subsequence"] = spell(io.table, sub);
    }
    out << fields.dump() << "\n";
  } else {
    out << spell(io.table, sub);
    if (io.table.mode() == TokenMode::bytes) out << "\n";
    err << "L: " << r.length << "\n";
  }
  return kOk;
}

int cmd_stats(const Config& cfg, std::istream& in, std::ostream& out) {
  const Inputs io = load(cfg, in);
  check_length_cap(cfg, io.y);
  const PositionLists pl(io.y);
  const Backend backend = resolve_backend(cfg, io.x, pl);
  const LcsResult r = lcs_length(io.x, pl, backend);
  const auto distinct = [](const Sequence& s) {
    std::vector<Symbol> v = s.symbols;
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  ordered_json fields;
  fields["n"] = io.y.size();
  fields["m"] = io.x.size();
  fields["R"] = r.stats.matches;
  fields["L"] = r.length;
  fields["distinct_x"] = distinct(io.x);
  fields["distinct_y"] = distinct(io.y);
  fields["alphabet_size"] = io.table.alphabet_size();
  fields["backend"] = std::string(to_string(backend));
  fields["succ"] = r.counters.succ;
  fields["insert"] = r.counters.insert;
  fields["delete"] = r.counters.erase;
  fields["update"] = r.counters.update;
  print_fields(fields, cfg, out);
  return kOk;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

int cmd_verify(const Config& cfg, std::istream& in, std::ostream& out) {
  const Inputs io = load(cfg, in);
  check_length_cap(cfg, io.y);
  const Sequence& x = io.x;
  const Sequence& y = io.y;
  const PositionLists pl(y);
  std::vector<Check> checks;
  const auto add = [&](std::string name, bool ok, std::string detail = {}) {
    checks.push_back(Check{std::move(name), ok, std::move(detail)});
  };

  LcsOptions veb_options;
  veb_options.rule = rule_of(cfg);
  const LcsResult veb = lcs_length(x, pl, Backend::veb, veb_options);
  const LcsResult tree = lcs_length(x, pl, Backend::tree);
  std::uint64_t worst_row_excess = 0;
  std::size_t worst_row = 0;
  LcsOptions array_options;
  array_options.row_observer = [&](const RowCost& c) {
    const std::uint64_t allowed = c.alpha + c.updates + 1;
    if (c.comparisons > allowed && c.comparisons - allowed > worst_row_excess) {
      worst_row_excess = c.comparisons - allowed;
      worst_row = c.row;
    }
  };
  const LcsResult array = lcs_length(x, pl, Backend::array, array_options);

  TraceOptions trace_options;
  trace_options.memory_cap = cfg.memory_cap;
  trace_options.rule = rule_of(cfg);
  trace_options.record_rows = true;
  const TraceRun run = lcs_trace(x, y, trace_options);
  const auto sub = extract_lcs(run.trace, run.final_match, y);

  std::optional<DpTable> dp;
  try {
    dp = dp_oracle(x, y);
  } catch (const ResourceError&) {
    add("dp_oracle", true, "skipped: table too large");
  }

  const std::size_t reference = dp ? dp->length() : tree.length;
  const std::string reference_name = dp ? "dp" : "tree";
  const auto compare = [&](const std::string& name, std::size_t value) {
    std::ostringstream os;
    os << name << "=" << value << " " << reference_name << "=" << reference;
    add("length." + name, value == reference, os.str());
  };
  compare("veb", veb.length);
  compare("tree", tree.length);
  compare("array", array.length);
  compare("reconstruct", run.result.length);

  {
    const bool ok = sub.size() == run.result.length && is_common_subsequence(sub, x, y);
    add("subsequence.valid", ok,
        "length " + std::to_string(sub.size()) + ", common subsequence " +
            (is_common_subsequence(sub, x, y) ? "yes" : "no"));
  }
  {
    bool ok = true;
    std::uint64_t prev_row = 0;
    Column prev_col = 0;
    std::vector<std::uint64_t> chain;
    for (auto k = run.final_match; k > 0; k = run.trace.pred_match[k]) chain.push_back(k);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      if (run.trace.row[*it] <= prev_row || run.trace.column[*it] <= prev_col) ok = false;
      prev_row = run.trace.row[*it];
      prev_col = run.trace.column[*it];
    }
    add("trace.chain_increasing", ok);
  }
  {
    const auto& c = run.result.counters;
    const std::uint64_t r = run.result.stats.matches;
    const bool ok = c.dictionary_ops() <= 4 * r && c.erase <= c.insert;
    add("ops.veb", ok,
        "succ+delete+insert+pred=" + std::to_string(c.dictionary_ops()) +
            " 4R=" + std::to_string(4 * r) + " delete=" + std::to_string(c.erase) +
            " insert=" + std::to_string(c.insert));
  }
  add("ops.array_rows", worst_row_excess == 0,
      worst_row_excess == 0 ? "" : "row " + std::to_string(worst_row) + " over by " +
                                       std::to_string(worst_row_excess));
  {
    const double bound = 2.0 * std::log2(static_cast<double>(tree.length) + 2.0) + 2.0;
    add("ops.tree_depth", static_cast<double>(tree.counters.max_depth) <= bound,
        "depth " + std::to_string(tree.counters.max_depth));
  }
  if (dp) {
    const auto endpoint = check_threshold_endpoint(run.result.thresholds, *dp);
    add("thresholds.endpoint", endpoint.empty(),
        endpoint.empty() ? "" : endpoint.front().describe());
  }
  if (x.size() <= 256 && y.size() <= 256) {
    ShadowOptions shadow_options;
    shadow_options.keep_snapshots = false;
    const ShadowReport shadow = shadow_run(x, y, shadow_options);
    add("shadow", shadow.ok(),
        shadow.ok() ? "" : std::to_string(shadow.violations.size()) +
                               " violations, first: " + shadow.violations.front().describe());
  }

  const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  if (cfg.output == "json") {
    ordered_json j;
    j["ok"] = all_ok;
    j["n"] = y.size();
    j["m"] = x.size();
    j["R"] = run.result.stats.matches;
    j["L"] = reference;
    auto arr = ordered_json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["checks"] = arr;
    out << j.dump() << "\n";
  } else {
    for (const auto& c : checks) {
      out << (c.ok ? "ok   " : "FAIL ") << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    out << (all_ok ? "verify: all checks passed" : "verify: MISMATCH") << "\n";
  }
  return all_ok ? kOk : kMismatch;
}

int cmd_bench(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto engines = bench::parse_engines(cfg.bench_backends);
  std::vector<bench::BenchCase> cases;
  if (cfg.bench_n) {
    bench::BenchCase c;
    c.n = *cfg.bench_n;
    c.m = cfg.bench_m.value_or(c.n);
    c.sigma = cfg.bench_sigma;
    c.seed = cfg.bench_seed;
    c.structure = bench::parse_structure(cfg.bench_structure);
    c.case_id = std::string(bench::to_string(c.structure)) + "_s" + std::to_string(c.sigma) +
                "_n" + std::to_string(c.n);
    c.engines = engines;
    cases.push_back(c);
  } else {
    cases = bench::default_suite(cfg.bench_seed);
    for (auto& c : cases) c.engines = engines;
  }
  bench::BenchOptions options;
  options.repeats = cfg.bench_repeats;
  const auto report = bench::run_bench(cases, options);
  const bool json = cfg.bench_json || cfg.output == "json";
  out << bench::emit_report(report.records,
                            json ? bench::ReportFormat::json : bench::ReportFormat::csv);
  for (const auto& a : report.advisories) err << "advisory: " << a << "\n";
  for (const auto& e : report.errors) err << "error: " << e << "\n";
  return report.ok() ? kOk : kMismatch;
}

void add_compare_options(CLI::App* sub, Config& cfg) {
  sub->add_option("inputs", cfg.inputs, "Two input files (the first may be '-' for stdin)")
      ->expected(2)
      ->required();
  sub->add_flag("--inline", cfg.inline_inputs, "Treat the inputs as literal strings");
  sub->add_option("--mode", cfg.mode, "Tokenization")
      ->check(CLI::IsMember({"bytes", "lines"}))
      ->capture_default_str();
  sub->add_option("--backend", cfg.backend, "Threshold-set backend")
      ->check(CLI::IsMember({"veb", "tree", "array", "auto"}))
      ->capture_default_str();
  sub->add_option("--output", cfg.output, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--memory-cap", cfg.memory_cap, "Maximum trace entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  // Test hook: reproduce the pseudocode's "k < Max(S)" delete guard.
  sub->add_flag("--inject-literal-guard", cfg.literal_guard)->group("");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Longest common subsequence via threshold sets", "tlcs"};
  app.require_subcommand(1);
  Config cfg;

  auto* length = app.add_subcommand("length", "Print n, m, R and the LCS length L");
  auto* subseq = app.add_subcommand("subseq", "Print one longest common subsequence");
  auto* stats = app.add_subcommand("stats", "Print match and operation statistics");
  auto* verify = app.add_subcommand("verify", "Cross-check every backend and invariant");
  for (auto* sub : {length, subseq, stats, verify}) add_compare_options(sub, cfg);

  auto* bench = app.add_subcommand("bench", "Run the benchmark suite, CSV or JSON on stdout");
  bench->add_option("--n", cfg.bench_n, "Length of Y (omit for the default suite)");
  bench->add_option("--m", cfg.bench_m, "Length of X (default: n)");
  bench->add_option("--sigma", cfg.bench_sigma, "Alphabet size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", cfg.bench_seed, "Generator seed")->capture_default_str();
  bench->add_option("--structure", cfg.bench_structure, "Instance structure")
      ->check(CLI::IsMember({"uniform_random", "repeated_block", "near_identical"}))
      ->capture_default_str();
  bench->add_option("--repeats", cfg.bench_repeats, "Timing repeats (minimum is reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--backend", cfg.bench_backends, "Comma-separated: veb,tree,array,dp")
      ->capture_default_str();
  bench->add_flag("--json", cfg.bench_json, "Emit JSON instead of CSV");
  bench->add_option("--output", cfg.output, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (length->parsed()) return cmd_length(cfg, in, out);
    if (subseq->parsed()) return cmd_subseq(cfg, in, out, err);
    if (stats->parsed()) return cmd_stats(cfg, in, out);
    if (verify->parsed()) return cmd_verify(cfg, in, out);
    if (bench->parsed()) return cmd_bench(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tlcs::cli
