// Copyright 2026 The gojun Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gojun");
  std::ostringstream out, err;
  const int code = gojun::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// A scratch directory holding a synthetic corpus and trained models.
class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "gojun_cli_test") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }
  std::string str(const std::string& name) const { return path(name).string(); }

  void build(int order = 3, int n = 400) {
    REQUIRE(cli({"synth", "--spec", GOJUN_TEST_DATA "/grammar_spec.json", "--n",
                 std::to_string(n), "--out", str("corpus.jsonl")})
                .code == 0);
    for (const std::string dir : {"fwd", "bwd"})
      REQUIRE(cli({"train", str("corpus.jsonl"), "--order", std::to_string(order), "--direction",
                   dir, "--out", str(dir + ".model")})
                  .code == 0);
  }

  std::vector<std::string> scorer_flags() const {
    return {"--fwd", str("fwd.model"), "--bwd", str("bwd.model")};
  }

 private:
  fs::path dir_;
};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("train exit codes") {
  Workspace ws;
  ws.build();
  CHECK(fs::exists(ws.path("fwd.model")));
  const auto missing = cli({"train", ws.str("absent.txt"), "--out", ws.str("m")});
  CHECK(missing.code == gojun::cli::kExitData);
  CHECK(missing.err.find("IO_ERROR") != std::string::npos);
  CHECK(cli({"train", ws.str("corpus.jsonl"), "--out", ws.str("m"), "--order", "0"}).code ==
        gojun::cli::kExitUsage);
  CHECK(cli({"train", ws.str("corpus.jsonl"), "--out", ws.str("m"), "--discount", "1"}).code ==
        gojun::cli::kExitUsage);
  CHECK(cli({"train", ws.str("corpus.jsonl")}).code == gojun::cli::kExitUsage);
  CHECK(cli({}).code == gojun::cli::kExitUsage);
}

TEST_CASE("compare marks the winner") {
  Workspace ws;
  ws.build();
  const auto r = cli(concat({"compare", "--input", ws.str("corpus.jsonl"), "--transform",
                             "enumerate"},
                            ws.scorer_flags()));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.front() == "set\tlabel\tfwd\tbwd\tcombined\twinner");

  // Count the rows of the first set and its winner marks.
  const std::string first_id = lines[1].substr(0, lines[1].find('\t'));
  int rows = 0, stars = 0;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (lines[i].rfind(first_id + "\t", 0) == 0) {
      ++rows;
      stars += lines[i].size() >= 2 && lines[i].substr(lines[i].size() - 2) == "\t*";
    }
  const std::size_t kids = static_cast<std::size_t>(
      nlohmann::json::parse(lines_of(slurp(ws.path("corpus.jsonl"))).front())["chunks"].size() -
      1);
  static const int kFactorial[] = {1, 1, 2, 6, 24, 120};
  CHECK(rows == kFactorial[kids]);
  const bool tied = lines[1].substr(lines[1].size() - 3) == "TIE";
  CHECK(stars == (tied ? 0 : 1));

  CHECK(cli(concat({"compare", "--transform", "swap"}, ws.scorer_flags())).code ==
        gojun::cli::kExitUsage);
  CHECK(cli({"compare", "--input", ws.str("corpus.jsonl"), "--fwd", ws.str("fwd.model")}).code ==
        gojun::cli::kExitUsage);
}

TEST_CASE("compare reports ties under unigram models") {
  Workspace ws;
  ws.build(1);
  const auto r = cli(concat({"compare", "--input", ws.str("corpus.jsonl"), "--transform",
                             "enumerate"},
                            ws.scorer_flags()));
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].substr(lines[i].size() - 3) == "TIE");
    if (lines[i].substr(lines[i].size() - 3) != "TIE") break;
  }
}

TEST_CASE("experiment subcommand") {
  Workspace ws;
  ws.build();
  const auto lm = cli(concat({"experiment", "case-order", "--corpus", ws.str("corpus.jsonl"),
                              "--out", ws.str("lm")},
                             ws.scorer_flags()));
  REQUIRE(lm.code == 0);
  CHECK(fs::exists(ws.path("lm") / "report.tsv"));
  CHECK(fs::exists(ws.path("lm") / "report.json"));
  const auto report = nlohmann::json::parse(slurp(ws.path("lm") / "report.json"));
  CHECK(report["name"] == "case-order");
  CHECK(report["config"]["mode"] == "lm");

  REQUIRE(cli({"experiment", "case-order", "--mode", "count", "--corpus", ws.str("corpus.jsonl"),
               "--out", ws.str("count")})
              .code == 0);
  const auto counted = nlohmann::json::parse(slurp(ws.path("count") / "report.json"));
  for (const auto& row : counted["records"]) CHECK(row["o"] == row["count_o"]);

  const auto unknown = cli({"experiment", "no-such-thing", "--corpus", ws.str("corpus.jsonl")});
  CHECK(unknown.code == gojun::cli::kExitUsage);
  CHECK(unknown.err.find("case-order") != std::string::npos);
  CHECK(cli({"experiment", "case-order", "--corpus", ws.str("corpus.jsonl"), "--out",
             ws.str("x")})
            .code == gojun::cli::kExitUsage);

  REQUIRE(cli(concat({"experiment", "case-order", "--corpus", ws.str("corpus.jsonl"), "--out",
                      ws.str("again"), "--workers", "4"},
                     ws.scorer_flags()))
              .code == 0);
  CHECK(slurp(ws.path("lm") / "report.tsv") == slurp(ws.path("again") / "report.tsv"));
}

TEST_CASE("synth subcommand") {
  Workspace ws;
  const std::string spec = GOJUN_TEST_DATA "/grammar_spec.json";
  REQUIRE(cli({"synth", "--spec", spec, "--n", "1000", "--out", ws.str("a.jsonl")}).code == 0);
  REQUIRE(cli({"synth", "--spec", spec, "--n", "1000", "--out", ws.str("b.jsonl")}).code == 0);
  const std::string a = slurp(ws.path("a.jsonl"));
  CHECK(lines_of(a).size() == 1000);
  CHECK(a == slurp(ws.path("b.jsonl")));
  REQUIRE(cli({"synth", "--spec", spec, "--n", "1000", "--out", ws.str("c.jsonl"), "--seed", "99"})
              .code == 0);
  CHECK(a != slurp(ws.path("c.jsonl")));

  auto j = nlohmann::json::parse(slurp(spec));
  j["order_adherence"] = 0.4;
  std::ofstream(ws.path("weak.json")) << j.dump();
  const auto weak = cli({"synth", "--spec", ws.str("weak.json"), "--out", ws.str("w.jsonl")});
  CHECK(weak.code == gojun::cli::kExitData);
  CHECK(weak.err.find("order_adherence") != std::string::npos);

  // A JSON config supplies the flags; a command-line flag overrides it.
  nlohmann::json config{{"spec", spec}, {"n", 20}, {"out", ws.str("cfg.jsonl")}};
  std::ofstream(ws.path("synth.json")) << config.dump();
  REQUIRE(cli({"synth", "--config", ws.str("synth.json")}).code == 0);
  CHECK(lines_of(slurp(ws.path("cfg.jsonl"))).size() == 20);
  REQUIRE(cli({"synth", "--config", ws.str("synth.json"), "--n", "5"}).code == 0);
  CHECK(lines_of(slurp(ws.path("cfg.jsonl"))).size() == 5);
}

TEST_CASE("compare through an external scorer") {
  Workspace ws;
  REQUIRE(cli({"synth", "--spec", GOJUN_TEST_DATA "/grammar_spec.json", "--n", "5", "--out",
               ws.str("corpus.jsonl")})
              .code == 0);
  // The mock scores -(character count) in both directions, so reorderings tie.
  const auto r = cli({"compare", "--input", ws.str("corpus.jsonl"), "--transform", "scramble",
                      "--scorer-cmd", GOJUN_MOCK_SCORER});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.size() == 11);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].substr(lines[i].size() - 3) == "TIE");

  CHECK(cli({"compare", "--input", ws.str("corpus.jsonl"), "--transform", "scramble",
             "--scorer-tcp", "localhost"}).code ==
        gojun::cli::kExitUsage);
  CHECK(cli({"compare", "--input", ws.str("corpus.jsonl"), "--transform", "scramble",
             "--scorer-tcp", "127.0.0.1:1"}).code ==
        gojun::cli::kExitData);
  CHECK(cli({"compare", "--input", ws.str("corpus.jsonl"), "--scorer-cmd", GOJUN_MOCK_SCORER,
             "--fwd", ws.str("x")})
            .code == gojun::cli::kExitUsage);
}
