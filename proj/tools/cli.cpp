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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gojun/corpus.hpp"
#include "gojun/error.hpp"
#include "gojun/experiments.hpp"
#include "gojun/external.hpp"
#include "gojun/ngram.hpp"
#include "gojun/random.hpp"
#include "gojun/scorer.hpp"
#include "gojun/synth.hpp"
#include "gojun/text.hpp"
#include "gojun/transform.hpp"

namespace gojun::cli {

namespace {

// Reads --config files written as one JSON object. Keys name long options
// of the subcommand being run (underscores and dashes are interchangeable);
// arrays give several values.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        if (opt->get_type_size() == 0)
          j[name] = true;
        else if (res.size() == 1)
          j[name] = res.front();
        else
          j[name] = res;
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      auto scalar = [](const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
        return v.dump();
      };
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(value));
      for (const CLI::App* sub : root_->get_subcommands()) item.parents.push_back(sub->get_name());
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

struct ScorerFlags {
  std::string fwd;
  std::string bwd;
  std::string scorer_cmd;
  std::string scorer_tcp;
  int timeout_ms = 30000;
};

void add_scorer_flags(CLI::App* sub, ScorerFlags& f) {
  sub->add_option("--fwd", f.fwd, "Forward n-gram model file");
  sub->add_option("--bwd", f.bwd, "Backward n-gram model file");
  sub->add_option("--scorer-cmd", f.scorer_cmd,
                  "Shell command of an external scorer speaking the line-JSON protocol")
      ->excludes(sub->get_option("--fwd"))
      ->excludes(sub->get_option("--bwd"));
  sub->add_option("--scorer-tcp", f.scorer_tcp, "HOST:PORT of an external scorer")
      ->excludes(sub->get_option("--fwd"))
      ->excludes(sub->get_option("--bwd"))
      ->excludes(sub->get_option("--scorer-cmd"));
  sub->add_option("--scorer-timeout-ms", f.timeout_ms, "External scorer timeout")
      ->check(CLI::PositiveNumber);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<BidirectionalScorer> make_scorer(const ScorerFlags& f, bool required) {
  if (!f.scorer_cmd.empty())
    return BidirectionalScorer::from_external(ExternalScorerClient::spawn(
        f.scorer_cmd, std::chrono::milliseconds(f.timeout_ms)));
  if (!f.scorer_tcp.empty()) {
    const auto colon = f.scorer_tcp.rfind(':');
    int port = 0;
    if (colon != std::string::npos) {
      const char* first = f.scorer_tcp.data() + colon + 1;
      const char* last = f.scorer_tcp.data() + f.scorer_tcp.size();
      if (std::from_chars(first, last, port).ptr != last) port = 0;
    }
    if (port <= 0 || port > 65535) throw UsageError("--scorer-tcp needs HOST:PORT");
    return BidirectionalScorer::from_external(ExternalScorerClient::connect(
        f.scorer_tcp.substr(0, colon), port, std::chrono::milliseconds(f.timeout_ms)));
  }
  if (f.fwd.empty() != f.bwd.empty()) throw UsageError("--fwd and --bwd must be given together");
  if (f.fwd.empty()) {
    if (required) throw UsageError("a scorer is required: --fwd/--bwd, --scorer-cmd or --scorer-tcp");
    return std::nullopt;
  }
  return BidirectionalScorer::from_models(load_model(f.fwd), load_model(f.bwd));
}

nlohmann::json scorer_echo(const ScorerFlags& f) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.scorer_cmd.empty()) {
    j["scorer_cmd"] = f.scorer_cmd;
    j["scorer_timeout_ms"] = f.timeout_ms;
  } else if (!f.scorer_tcp.empty()) {
    j["scorer_tcp"] = f.scorer_tcp;
    j["scorer_timeout_ms"] = f.timeout_ms;
  } else if (!f.fwd.empty()) {
    j["fwd"] = f.fwd;
    j["bwd"] = f.bwd;
  }
  return j;
}

std::vector<Sentence> load_corpus(const std::string& path) {
  if (ends_with(path, ".conllu") || ends_with(path, ".conll")) return import_conllu(path);
  return load_jsonl(path);
}

std::vector<CaseRole> parse_roles(const std::vector<std::string>& names) {
  std::vector<CaseRole> out;
  for (const auto& n : names) {
    auto r = parse_case_role(n);
    if (!r) throw UsageError("unknown case role '" + n + "'");
    out.push_back(*r);
  }
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// --- train -------------------------------------------------------------------

struct TrainFlags {
  std::string corpus;
  std::string out;
  int order = 3;
  std::string unit = "char";
  std::string direction = "fwd";
  double discount = 0.75;
  int unk_threshold = 1;
};

int do_train(const TrainFlags& f, std::ostream& out) {
  NGramConfig config;
  config.order = f.order;
  config.unit = parse_unit(f.unit);
  config.direction = parse_direction(f.direction);
  config.discount = f.discount;
  config.unk_threshold = f.unk_threshold;
  std::vector<std::string> lines;
  if (ends_with(f.corpus, ".jsonl") || ends_with(f.corpus, ".conllu")) {
    for (const Sentence& s : load_corpus(f.corpus))
      lines.push_back(config.unit == Unit::kPretokenized ? render_units(s) : render_text(s));
  } else {
    lines = read_lines(f.corpus);
  }
  const NGramModel model = train_ngram(lines, config);
  save_model(model, f.out);
  out << "trained order-" << f.order << " " << to_string(config.direction) << " model on "
      << lines.size() << " lines, vocabulary " << model.vocabulary().size() << " -> " << f.out
      << "\n";
  return kExitOk;
}

// --- compare -----------------------------------------------------------------

struct CompareFlags {
  ScorerFlags scorer;
  std::string variants;
  std::string input;
  std::string transform;
  std::vector<std::string> roles;
  double tie_epsilon = kDefaultTieEpsilon;
  std::uint64_t seed = 0;
  int workers = 1;
};

std::vector<std::pair<std::string, VariantSet>> read_variant_sets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::pair<std::string, VariantSet>> sets;
  VariantSet loose;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    }
    try {
      if (j.contains("variants")) {
        VariantSet set;
        for (const auto& v : j.at("variants")) {
          Sentence s = sentence_from_json(v.at("sentence"));
          validate(s);
          set.variants.push_back({v.at("label").get<std::string>(), std::move(s)});
        }
        if (set.variants.empty()) throw Error(ErrorCode::kParse, "empty variant list");
        set.base = set.variants.front().sentence;
        validate(set);
        sets.emplace_back(j.value("id", "set" + std::to_string(sets.size() + 1)), std::move(set));
      } else {
        Sentence s = sentence_from_json(j);
        validate(s);
        if (loose.variants.empty()) loose.base = s;
        const std::string label = s.id;
        loose.variants.push_back({label, std::move(s)});
      }
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    }
  }
  if (!loose.variants.empty()) {
    validate(loose);
    sets.emplace_back("input", std::move(loose));
  }
  return sets;
}

VariantSet transform_set(const Sentence& s, const CompareFlags& f, std::size_t index) {
  VariantSet set;
  set.base = s;
  if (f.transform == "swap") {
    const auto roles = parse_roles(f.roles.empty() ? std::vector<std::string>{"DAT", "ACC"} : f.roles);
    if (roles.size() != 2) throw UsageError("--transform swap takes exactly two --roles");
    set.variants.push_back({"original", s});
    set.variants.push_back({"swapped", swap_cases(s, roles[0], roles[1])});
  } else if (f.transform == "topicalize") {
    const auto roles = f.roles.empty() ? default_canonical_order() : parse_roles(f.roles);
    for (CaseRole r : roles) {
      if (s.find_role(r).size() != 1) continue;
      set.variants.push_back({std::string(to_string(r)), topicalize(s, r)});
    }
  } else if (f.transform == "enumerate") {
    return enumerate_orders(s, s.root_index());
  } else if (f.transform == "scramble") {
    set.variants.push_back({"original", s});
    set.variants.push_back({"scrambled", scramble(s, derive_seed(f.seed, index))});
  }
  if (set.variants.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "fewer than two variants for sentence " + s.id);
  return set;
}

int do_compare(const CompareFlags& f, std::ostream& out, std::ostream& err) {
  if (f.variants.empty() == f.input.empty())
    throw UsageError("give exactly one of --variants or --input");
  if (!f.input.empty() && f.transform.empty()) throw UsageError("--input needs --transform");
  const BidirectionalScorer scorer = *make_scorer(f.scorer, true);
  std::vector<std::pair<std::string, VariantSet>> sets;
  if (!f.variants.empty()) {
    sets = read_variant_sets(f.variants);
  } else {
    const auto corpus = load_corpus(f.input);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      try {
        sets.emplace_back(corpus[i].id, transform_set(corpus[i], f, i));
      } catch (const Error& e) {
        err << "skip " << corpus[i].id << ": " << e.what() << "\n";
      }
    }
  }
  if (sets.empty()) throw Error(ErrorCode::kEmptyEval, "no variant set to compare");
  std::vector<VariantSet> plain;
  for (const auto& [_, s] : sets) plain.push_back(s);
  RunOptions options;
  options.tie_epsilon = f.tie_epsilon;
  options.workers = f.workers;
  const Judge judge(&scorer, options);
  const auto results = judge.decide(plain);
  out << "set\tlabel\tfwd\tbwd\tcombined\twinner\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ComparisonResult& r = *results[i];
    const double top = r.variants.front().combined_logp();
    for (std::size_t k = 0; k < r.variants.size(); ++k) {
      const ScoredVariant& v = r.variants[k];
      std::string mark;
      if (r.is_tie())
        mark = top - v.combined_logp() <= r.tie_epsilon ? std::string(kTieLabel) : "";
      else if (k == 0)
        mark = "*";
      out << sets[i].first << '\t' << v.label << '\t' << format_fixed(v.forward_logp) << '\t'
          << format_fixed(v.backward_logp) << '\t' << format_fixed(v.combined_logp()) << '\t'
          << mark << '\n';
    }
  }
  return kExitOk;
}

// --- experiment --------------------------------------------------------------

struct ExperimentFlags {
  std::string name;
  ScorerFlags scorer;
  std::string corpus;
  std::string pairs;
  std::string mode = "lm";
  double tie_epsilon = kDefaultTieEpsilon;
  int workers = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::uint64_t order_cap = kDefaultOrderCap;
  double alpha = 0.05;
  std::vector<std::string> roles;
  std::vector<std::string> canonical_order;
  std::vector<std::string> particles;
  std::vector<std::string> show_verbs;
  std::vector<std::string> pass_verbs;
  std::string cooccurrence;
  std::string adverb_reference;
  bool all_directions = false;
  bool filter = false;
  bool no_plots = false;
};

AdverbReference load_adverb_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  AdverbReference ref;
  try {
    const auto j = nlohmann::json::parse(in);
    for (const auto& [k, v] : j.items()) {
      auto type = parse_adverb_type(k);
      if (!type) throw Error(ErrorCode::kParse, path + ": unknown adverb type " + k);
      for (const auto& p : v) ref[*type].insert(p.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  return ref;
}

int do_experiment(const ExperimentFlags& f, std::ostream& out) {
  RunOptions options;
  options.mode = parse_mode(f.mode);
  options.tie_epsilon = f.tie_epsilon;
  options.workers = f.workers;
  options.seed = f.seed;
  options.order_cap = f.order_cap;
  options.alpha = f.alpha;

  nlohmann::json echo = scorer_echo(f.scorer);
  echo["experiment"] = f.name;
  echo["workers"] = f.workers;
  echo["out"] = f.out_dir;
  echo["filter"] = f.filter;
  if (!f.corpus.empty()) echo["corpus"] = f.corpus;
  if (!f.pairs.empty()) echo["pairs"] = f.pairs;
  if (!f.cooccurrence.empty()) echo["cooccurrence"] = f.cooccurrence;
  if (!f.adverb_reference.empty()) echo["adverb_reference"] = f.adverb_reference;
  if (!f.show_verbs.empty()) echo["show_verbs"] = f.show_verbs;
  if (!f.pass_verbs.empty()) echo["pass_verbs"] = f.pass_verbs;
  options.config = echo;

  const bool needs_scorer = options.mode == Mode::kLm;
  auto scorer = make_scorer(f.scorer, needs_scorer);
  const Judge judge(scorer ? &*scorer : nullptr, options);

  ExperimentReport report;
  if (f.name == "human-agreement") {
    if (f.pairs.empty()) throw UsageError("human-agreement needs --pairs");
    report = run_human_agreement(load_preference_pairs(f.pairs), judge);
  } else {
    if (f.corpus.empty()) throw UsageError(f.name + " needs --corpus");
    std::vector<Sentence> corpus = load_corpus(f.corpus);
    if (f.filter) corpus = filter_sentences(corpus);
    const auto canonical =
        f.canonical_order.empty() ? default_canonical_order() : parse_roles(f.canonical_order);
    std::vector<VerbRecord> records;
    const std::string& n = f.name;
    if (n == "double-object") {
      report = run_double_object(corpus, judge);
    } else if (n == "verb-type") {
      if (f.show_verbs.empty() || f.pass_verbs.empty())
        throw UsageError("verb-type needs --show-verbs and --pass-verbs");
      run_double_object(corpus, judge, &records);
      report = run_verb_type_test(records, {f.show_verbs.begin(), f.show_verbs.end()},
                                  {f.pass_verbs.begin(), f.pass_verbs.end()}, options);
    } else if (n == "omission") {
      run_double_object(corpus, judge, &records);
      report = run_omission_analysis(records, options);
    } else if (n == "semantic-role") {
      report = run_semantic_role_analysis(corpus, judge, {!f.all_directions});
    } else if (n == "cooccurrence") {
      std::optional<CooccurrenceTable> table;
      if (!f.cooccurrence.empty()) table = CooccurrenceTable::load_tsv(f.cooccurrence);
      report = run_cooccurrence_analysis(corpus, judge, table ? &*table : nullptr);
    } else if (n == "case-order") {
      const auto roles = f.roles.empty() ? default_case_order_roles() : parse_roles(f.roles);
      report = run_case_order(corpus, judge, roles);
    } else if (n == "adverb-position") {
      report = run_adverb_position(corpus, judge,
                                   f.adverb_reference.empty()
                                       ? default_adverb_reference()
                                       : load_adverb_reference(f.adverb_reference));
    } else if (n == "long-before-short") {
      report = run_long_before_short(corpus, judge, canonical);
    } else if (n == "topic-i") {
      report = run_topicalization_claim_i(corpus, judge, canonical);
    } else if (n == "topic-ii") {
      run_double_object(corpus, judge, &records);
      report = run_topicalization_claim_ii(corpus, judge, records);
    } else if (n == "adverbial-particles") {
      const auto particles = f.particles.empty() ? default_adverbial_particles() : f.particles;
      const auto roles = f.roles.empty() ? canonical : parse_roles(f.roles);
      report = run_adverbial_particles(corpus, judge, particles, roles);
    }
  }
  write_report(report, f.out_dir, !f.no_plots);
  out << report.name << ": wrote " << (std::filesystem::path(f.out_dir) / "report.tsv").string()
      << "\n"
      << report.summary.dump() << "\n";
  return kExitOk;
}

// --- synth -------------------------------------------------------------------

struct SynthFlags {
  std::string spec;
  std::size_t n = 1000;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int do_synth(const SynthFlags& f, std::ostream& out) {
  GrammarSpec spec = GrammarSpec::load(f.spec);
  if (f.seed) spec.seed = *f.seed;
  const auto corpus = generate_corpus(spec, f.n);
  save_jsonl(f.out, corpus);
  out << "wrote " << corpus.size() << " sentences to " << f.out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gojun: word-order analysis with bidirectional language-model scoring", "gojun"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "JSON file of subcommand flags; command-line flags win")
      ->configurable(false);
  app.config_formatter(std::make_shared<JsonConfig>(&app));

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a character or subword n-gram model");
  train_cmd->add_option("corpus", train.corpus, "Training text (one sentence per line) or .jsonl")
      ->required();
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  train_cmd->add_option("--order", train.order, "N-gram order")->check(CLI::Range(1, kMaxOrder));
  train_cmd->add_option("--unit", train.unit, "Unit type")
      ->check(CLI::IsMember({"char", "pretokenized"}));
  train_cmd->add_option("--direction", train.direction, "Reading direction")
      ->check(CLI::IsMember({"fwd", "bwd", "forward", "backward"}));
  train_cmd->add_option("--discount", train.discount, "Absolute discount in (0, 1)")
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            double d = 0;
            try {
              d = std::stod(v);
            } catch (...) {
              return "not a number";
            }
            return d > 0 && d < 1 ? "" : "discount must lie strictly between 0 and 1";
          },
          "(0,1)"));
  train_cmd->add_option("--unk-threshold", train.unk_threshold,
                        "Units seen at most this often become <unk>")
      ->check(CLI::NonNegativeNumber);

  CompareFlags compare;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Score and rank word-order variants");
  add_scorer_flags(compare_cmd, compare.scorer);
  compare_cmd->add_option("--variants", compare.variants, "JSONL of variant sets or sentences");
  compare_cmd->add_option("--input", compare.input, "Corpus (.jsonl or .conllu) to transform");
  compare_cmd->add_option("--transform", compare.transform, "Variant builder for --input")
      ->check(CLI::IsMember({"swap", "topicalize", "enumerate", "scramble"}));
  compare_cmd->add_option("--roles", compare.roles, "Case roles for swap/topicalize")
      ->delimiter(',');
  compare_cmd->add_option("--tie-epsilon", compare.tie_epsilon, "Tie tolerance in nats")
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--seed", compare.seed, "Seed for --transform scramble");
  compare_cmd->add_option("--workers", compare.workers, "Scoring threads")
      ->check(CLI::PositiveNumber);

  ExperimentFlags exp;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run one analysis and write a report");
  exp_cmd->add_option("name", exp.name, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  add_scorer_flags(exp_cmd, exp.scorer);
  exp_cmd->add_option("--corpus", exp.corpus, "Annotated corpus (.jsonl or .conllu)");
  exp_cmd->add_option("--pairs", exp.pairs, "Preference pairs JSONL (human-agreement)");
  exp_cmd->add_option("--mode", exp.mode, "lm or count")->check(CLI::IsMember({"lm", "count"}));
  exp_cmd->add_option("--tie-epsilon", exp.tie_epsilon, "Tie tolerance in nats")
      ->check(CLI::NonNegativeNumber);
  exp_cmd->add_option("--workers", exp.workers, "Scoring threads")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp.seed, "Run seed");
  exp_cmd->add_option("--out", exp.out_dir, "Output directory");
  exp_cmd->add_option("--order-cap", exp.order_cap, "Largest number of orders per sentence")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--alpha", exp.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  exp_cmd->add_option("--roles", exp.roles, "Case roles (case-order, adverbial-particles)")
      ->delimiter(',');
  exp_cmd->add_option("--canonical-order", exp.canonical_order, "Canonical case order")
      ->delimiter(',');
  exp_cmd->add_option("--particles", exp.particles, "Adverbial particles")->delimiter(',');
  exp_cmd->add_option("--show-verbs", exp.show_verbs, "Show-type verbs (verb-type)")
      ->delimiter(',');
  exp_cmd->add_option("--pass-verbs", exp.pass_verbs, "Pass-type verbs (verb-type)")
      ->delimiter(',');
  exp_cmd->add_option("--cooccurrence", exp.cooccurrence, "noun/verb count TSV");
  exp_cmd->add_option("--adverb-reference", exp.adverb_reference,
                      "JSON map from adverb type to canonical positions");
  exp_cmd->add_flag("--all-directions", exp.all_directions,
                    "semantic-role: count every verb, not only significant ones");
  exp_cmd->add_flag("--filter", exp.filter, "Apply the default sentence filter first");
  exp_cmd->add_flag("--no-plots", exp.no_plots, "Skip SVG plots");

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic annotated corpus");
  synth_cmd->add_option("--spec", synth.spec, "Grammar spec JSON")->required();
  synth_cmd->add_option("--n", synth.n, "Number of sentences")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", synth.out, "Output JSONL")->required();
  synth_cmd->add_option("--seed", synth.seed, "Override the spec seed");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (exp_cmd->parsed() && std::string(e.what()).find("name") != std::string::npos) {
      err << "valid experiments:";
      for (const auto& n : experiment_names()) err << ' ' << n;
      err << '\n';
    }
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return do_train(train, out);
    if (compare_cmd->parsed()) return do_compare(compare, out, err);
    if (exp_cmd->parsed()) return do_experiment(exp, out);
    if (synth_cmd->parsed()) return do_synth(synth, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace gojun::cli
