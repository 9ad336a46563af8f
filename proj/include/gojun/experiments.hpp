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

// One runner per word-order analysis. Each runner turns a corpus into
// variant sets, lets a Judge pick the preferred variant of every set, and
// reduces the decisions to rates, correlations and tests. Reductions run in
// corpus order after scoring, so the worker count never changes a report.

#ifndef GOJUN_EXPERIMENTS_HPP_
#define GOJUN_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gojun/corpus.hpp"
#include "gojun/scorer.hpp"
#include "gojun/stats.hpp"
#include "gojun/transform.hpp"

namespace gojun {

enum class Mode { kLm, kCount };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct RunOptions {
  Mode mode = Mode::kLm;
  double tie_epsilon = kDefaultTieEpsilon;
  int workers = 1;
  std::uint64_t seed = 0;
  std::uint64_t order_cap = kDefaultOrderCap;
  double alpha = 0.05;
  // Copied into every report as its configuration echo.
  nlohmann::json config = nlohmann::json::object();
};

// Picks the preferred variant of each set: by bidirectional score in LM
// mode, or the variant identical to the set's base sentence in count mode.
class Judge {
 public:
  // `scorer` may be null only in count mode.
  Judge(const BidirectionalScorer* scorer, const RunOptions& options);

  Mode mode() const { return options_.mode; }
  const RunOptions& options() const { return options_; }

  // nullopt in count mode when no variant equals the base sentence.
  std::vector<std::optional<ComparisonResult>> decide(std::span<const VariantSet> sets) const;

 private:
  const BidirectionalScorer* scorer_;
  RunOptions options_;
};

struct Table {
  std::vector<std::string> columns;
  // Cells are strings, numbers or null (written as NA).
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Plot {
  std::string name;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<double> ys;
  bool regression_line = true;
};

struct NamedTest {
  std::string name;
  // nullopt when the test is undefined; `note` says why.
  std::optional<TestResult> result;
  std::string note;
};

struct ExperimentReport {
  std::string name;
  Table records;
  std::map<std::string, Table> extra;
  std::vector<NamedTest> tests;
  nlohmann::json summary = nlohmann::json::object();
  std::map<std::string, std::uint64_t> skipped;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Plot> plots;

  void skip(std::string_view reason, std::uint64_t count = 1);
  nlohmann::json to_json() const;
};

std::string format_tsv(const Table& table);
std::string render_svg(const Plot& plot);
// Writes report.tsv, report.<extra>.tsv, report.json and report.<plot>.svg.
void write_report(const ExperimentReport& report, const std::filesystem::path& directory,
                  bool plots = true);

// --- double objects ----------------------------------------------------------

struct VerbRecord {
  std::string verb_lemma;
  std::uint64_t n_acc_dat = 0;
  std::uint64_t n_dat_acc = 0;
  std::uint64_t n_tie = 0;
  std::uint64_t n_dat_only = 0;
  std::uint64_t n_acc_only = 0;

  std::optional<double> r_acc_dat() const;
  std::optional<double> r_dat_only() const;
};

inline constexpr std::string_view kAccDat = "ACC-DAT";
inline constexpr std::string_view kDatAcc = "DAT-ACC";

// Original order vs the DAT/ACC swap for sentences with unique sibling DAT
// and ACC chunks; sentences with exactly one of the two feed the omission
// counts. Records come back sorted by verb.
ExperimentReport run_double_object(std::span<const Sentence> corpus, const Judge& judge,
                                   std::vector<VerbRecord>* records_out = nullptr);

// Throws EMPTY_GROUP if either verb set has no record with a defined rate.
ExperimentReport run_verb_type_test(std::span<const VerbRecord> records,
                                    const std::set<std::string>& show_verbs,
                                    const std::set<std::string>& pass_verbs,
                                    const RunOptions& options);

// Throws EMPTY_EVAL when fewer than two verbs have both rates defined.
ExperimentReport run_omission_analysis(std::span<const VerbRecord> records,
                                       const RunOptions& options);

struct SemanticRoleOptions {
  // Count only verbs whose z-test is significant at options.alpha.
  bool significant_only = true;
};

ExperimentReport run_semantic_role_analysis(std::span<const Sentence> corpus, const Judge& judge,
                                            const SemanticRoleOptions& role_options = {});

// `table` defaults to counts over `corpus` itself.
ExperimentReport run_cooccurrence_analysis(std::span<const Sentence> corpus, const Judge& judge,
                                           const CooccurrenceTable* table = nullptr);

// --- argument order ----------------------------------------------------------

std::vector<CaseRole> default_case_order_roles();   // TIM, LOC, NOM
std::vector<CaseRole> default_canonical_order();    // TIM, LOC, NOM, DAT, ACC

// Enumerates every order of the predicate's dependents and tallies pairwise
// precedence of `roles` in the preferred order, next to the same tally over
// the original orders.
ExperimentReport run_case_order(std::span<const Sentence> corpus, const Judge& judge,
                                std::span<const CaseRole> roles);

using AdverbReference = std::map<AdverbType, std::set<std::string>>;
AdverbReference default_adverb_reference();
inline constexpr std::string_view kAsov = "ASOV";
inline constexpr std::string_view kSaov = "SAOV";
inline constexpr std::string_view kSoav = "SOAV";

// Sentences whose predicate governs one ADVERB (with a type), one NOM and one
// ACC chunk. Positions are ranked per example and averaged per adverb type.
ExperimentReport run_adverb_position(std::span<const Sentence> corpus, const Judge& judge,
                                     const AdverbReference& reference);

ExperimentReport run_long_before_short(std::span<const Sentence> corpus, const Judge& judge,
                                       std::span<const CaseRole> canonical_order);

// --- topicalization ----------------------------------------------------------

ExperimentReport run_topicalization_claim_i(std::span<const Sentence> corpus, const Judge& judge,
                                            std::span<const CaseRole> canonical_order);

ExperimentReport run_topicalization_claim_ii(std::span<const Sentence> corpus, const Judge& judge,
                                             std::span<const VerbRecord> records);

ExperimentReport run_adverbial_particles(std::span<const Sentence> corpus, const Judge& judge,
                                         std::span<const std::string> particles,
                                         std::span<const CaseRole> roles);

// --- human agreement ---------------------------------------------------------

// LM decision between order1 and order2 per gold-labelled pair. Throws
// EMPTY_EVAL without gold labels and INVALID_ARGUMENT in count mode.
ExperimentReport run_human_agreement(std::span<const PreferencePair> pairs, const Judge& judge);

// Names accepted by the CLI, in documentation order.
const std::vector<std::string>& experiment_names();

}  // namespace gojun

#endif  // GOJUN_EXPERIMENTS_HPP_
