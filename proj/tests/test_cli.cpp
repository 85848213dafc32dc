#include <doctest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

using tlcs::testing::run_process;
using tlcs::testing::shell_quote;
using tlcs::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = tlcs::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string tool() { return shell_quote(TLCS_CLI_PATH); }

}  // namespace

TEST_CASE("length on files") {
  TempDir dir;
  const auto a = dir.write("a", "abcbdab");
  const auto b = dir.write("b", "bdcaba");
  const auto r = cli({"length", a, b});
  CHECK(r.code == 0);
  CHECK(r.out == "n: 6\nm: 7\nR: 12\nL: 4\nbackend: veb\n");

  const auto e1 = dir.write("e1", "");
  const auto e2 = dir.write("e2", "");
  CHECK(cli({"length", e1, e2}).out.find("L: 0\n") != std::string::npos);

  const auto same = dir.write("same", "the quick brown fox");
  CHECK(cli({"length", same, same}).out.find("L: 19\n") != std::string::npos);
}

TEST_CASE("text and json carry the same numbers") {
  for (const std::string backend : {"veb", "tree", "array", "auto"}) {
    const auto text = cli({"length", "--inline", "abcbdab", "bdcaba", "--backend", backend});
    const auto json = cli({"length", "--inline", "abcbdab", "bdcaba", "--backend", backend, "--output", "json"});
    REQUIRE(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    std::ostringstream expected;
    expected << "n: " << j["n"] << "\nm: " << j["m"] << "\nR: " << j["R"] << "\nL: " << j["L"]
             << "\nbackend: " << j["backend"].get<std::string>() << "\n";
    CHECK(text.out == expected.str());
    CHECK(j["L"] == 4);
  }
  const auto stats_text = cli({"stats", "--inline", "abcbdab", "bdcaba"});
  const auto stats_json = nlohmann::json::parse(cli({"stats", "--inline", "abcbdab", "bdcaba", "--output", "json"}).out);
  for (const auto& [key, value] : stats_json.items()) {
    const std::string rendered = value.is_string() ? value.get<std::string>() : value.dump();
    CHECK(stats_text.out.find(key + ": " + rendered + "\n") != std::string::npos);
  }
}

TEST_CASE("subseq") {
  CHECK(cli({"subseq", "--inline", "abc", "abc"}).out == "abc\n");
  const auto none = cli({"subseq", "--inline", "ab", "cd"});
  CHECK(none.code == 0);
  CHECK(none.out == "\n");
  CHECK(none.err.find("L: 0") != std::string::npos);

  const auto r = cli({"subseq", "--inline", "abcbdab", "bdcaba"});
  REQUIRE(r.code == 0);
  const std::string sub = r.out.substr(0, r.out.size() - 1);
  CHECK(sub.size() == 4);
  CHECK(tlcs::testing::brute_is_subsequence(sub, "abcbdab"));
  CHECK(tlcs::testing::brute_is_subsequence(sub, "bdcaba"));

  const auto lines = cli({"subseq", "--inline", "--mode", "lines", "one\ntwo\nthree\n", "zero\ntwo\nthree\n"});
  CHECK(lines.out == "two\nthree\n");
  const auto lj = nlohmann::json::parse(
      cli({"subseq", "--inline", "--mode", "lines", "--output", "json", "a\nb\n", "b\n"}).out);
  CHECK(lj["subsequence"] == nlohmann::json::array({"b"}));
  CHECK(lj["L"] == 1);
}

TEST_CASE("stdin input") {
  TempDir dir;
  const auto b = dir.write("b", "bdcaba");
  const auto r = cli({"length", "-", b}, "abcbdab");
  CHECK(r.code == 0);
  CHECK(r.out.find("L: 4\n") != std::string::npos);
  CHECK(cli({"length", b, "-"}, "x").code == 2);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto a = dir.write("a", "abcbdab");
  CHECK(cli({}).code == 2);
  CHECK(cli({"length", a}).code == 2);
  CHECK(cli({"length", a, (dir.path() / "missing").string()}).code == 2);
  CHECK(cli({"length", a, a, "--backend", "bogus"}).code == 2);
  CHECK(cli({"subseq", a, a, "--memory-cap", "3"}).code == 3);
  CHECK(cli({"length", a, a, "--memory-cap", "3"}).code == 3);
  CHECK(cli({"verify", a, a}).code == 0);
  CHECK(cli({"verify", "--inline", "ab", "ba", "--inject-literal-guard"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify reports a structured diff under the literal guard") {
  const auto r = cli({"verify", "--inline", "ab", "ba", "--inject-literal-guard"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL length.veb: veb=2 dp=1") != std::string::npos);
  const auto j = nlohmann::json::parse(
      cli({"verify", "--inline", "ab", "ba", "--inject-literal-guard", "--output", "json"}).out);
  CHECK(j["ok"] == false);
}

TEST_CASE("bench") {
  const auto csv = cli({"bench", "--n", "64", "--sigma", "4", "--repeats", "1"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("case_id,structure,n,m,sigma,seed,backend,R,L,", 0) == 0);
  std::istringstream lines(csv.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 5);

  const auto json = cli({"bench", "--n", "64", "--repeats", "1", "--json", "--backend", "veb,array"});
  const auto arr = nlohmann::json::parse(json.out);
  CHECK(arr.is_array());
  CHECK(arr.size() == 2);
}

TEST_CASE("process level: length, exit codes, verify") {
  TempDir dir;
  const auto a = dir.write("a", "abcbdab");
  const auto b = dir.write("b", "bdcaba");
  const auto r = run_process(tool() + " length " + shell_quote(a) + " " + shell_quote(b));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("L: 4\n") != std::string::npos);
  CHECK(run_process(tool() + " length " + shell_quote(a) + " /nonexistent/x 2>/dev/null").exit_code == 2);
  CHECK(run_process(tool() + " subseq " + shell_quote(a) + " " + shell_quote(b) +
                    " --memory-cap 2 2>/dev/null").exit_code == 3);
  CHECK(run_process(tool() + " verify --inline ab ba --inject-literal-guard").exit_code == 1);
  CHECK(run_process(tool() + " verify " + shell_quote(a) + " " + shell_quote(b)).exit_code == 0);
  const auto piped = run_process("printf abcbdab | " + tool() + " length - " + shell_quote(b));
  CHECK(piped.out.find("L: 4\n") != std::string::npos);
}
