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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "fixtures.hpp"
#include "gojun/error.hpp"
#include "gojun/experiments.hpp"
#include "gojun/random.hpp"
#include "gojun/synth.hpp"
#include "gojun/transform.hpp"

using namespace gojun;
using gojun::testing::ChunkSpec;
using gojun::testing::function_scorer;
using gojun::testing::make_sentence;

namespace {

RunOptions lm_options(int workers = 1) {
  RunOptions o;
  o.workers = workers;
  return o;
}

RunOptions count_options() {
  RunOptions o;
  o.mode = Mode::kCount;
  return o;
}

// 先生が <dat>に <acc>を <verb>, with semantic tags on the DAT noun.
Sentence ditransitive(const std::string& id, const std::string& dat, const std::string& acc,
                      const std::string& verb, const std::string& dat_tag = "animate") {
  return make_sentence(id,
                       {{"先生", "が", CaseRole::kNom},
                        {dat, "に", CaseRole::kDat, testing::kAttachToPredicate, "noun",
                         std::nullopt, {dat_tag}},
                        {acc, "を", CaseRole::kAcc}},
                       verb);
}

std::vector<nlohmann::json> row_where(const ExperimentReport& r, std::size_t col,
                                      const std::string& a, std::size_t col2 = 0,
                                      const std::string& b = "") {
  for (const auto& row : r.records.rows)
    if (row[col] == a && (b.empty() || row[col2] == b)) return row;
  FAIL("row not found: " << a << " " << b);
  return {};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mode names") {
  CHECK(parse_mode("lm") == Mode::kLm);
  CHECK(parse_mode("count") == Mode::kCount);
  CHECK(to_string(Mode::kCount) == "count");
  CHECK_THROWS_AS(parse_mode("neural"), Error);
  CHECK(experiment_names().size() == 12);
}

TEST_CASE("count-mode judge picks the original order") {
  const Sentence s = testing::teacher_gave_book();
  const auto set = enumerate_orders(s, s.root_index());
  const Judge judge(nullptr, count_options());
  const auto d = judge.decide(std::vector<VariantSet>{set});
  REQUIRE(d[0]);
  CHECK(d[0]->winner == "123");

  VariantSet no_base = set;
  no_base.variants.erase(no_base.variants.begin());
  CHECK_FALSE(judge.decide(std::vector<VariantSet>{no_base})[0]);
  CHECK_THROWS_AS(Judge(nullptr, lm_options()), Error);
}

TEST_CASE("double objects, verb types and omission") {
  std::vector<Sentence> corpus;
  // 見せる prefers DAT-ACC, 渡す prefers ACC-DAT, 送る is split evenly.
  int id = 0;
  for (const std::string verb : {"見せる", "渡す", "送る"})
    for (int i = 0; i < 6; ++i)
      corpus.push_back(ditransitive("s" + std::to_string(id++), "生徒" + std::to_string(i), "本",
                                    verb));
  corpus.push_back(make_sentence("dat-only", {{"先生", "が", CaseRole::kNom},
                                              {"生徒", "に", CaseRole::kDat}},
                                 "見せる"));
  corpus.push_back(make_sentence("acc-only", {{"本", "を", CaseRole::kAcc}}, "渡す"));
  Sentence lemma_less = corpus.front();
  lemma_less.verb_lemma.reset();
  corpus.push_back(lemma_less);

  const auto scorer = function_scorer([](const std::string& t) {
    const std::size_t dat = t.find("生徒");
    const bool acc_first = t.find("本を") < dat;
    if (t.find("見せる") != std::string::npos) return acc_first ? -1.0 : 0.0;
    if (t.find("渡す") != std::string::npos) return acc_first ? 0.0 : -1.0;
    const int k = t[dat + std::string("生徒").size()] - '0';
    return (k % 2 == 0) == acc_first ? 0.0 : -1.0;
  });
  const Judge judge(&scorer, lm_options());
  std::vector<VerbRecord> records;
  const auto report = run_double_object(corpus, judge, &records);
  REQUIRE(records.size() == 3);
  std::map<std::string, VerbRecord> by;
  for (const auto& r : records) by[r.verb_lemma] = r;
  CHECK(by["見せる"].r_acc_dat() == 0.0);
  CHECK(by["渡す"].r_acc_dat() == 1.0);
  CHECK(by["送る"].r_acc_dat() == 0.5);
  CHECK(by["見せる"].n_dat_only == 1);
  CHECK(by["渡す"].n_acc_only == 1);
  CHECK(by["見せる"].r_dat_only() == 1.0);
  CHECK(report.skipped.at("no_verb_lemma") == 1);
  CHECK(report.summary["n_compared"] == 18);

  const auto vt = run_verb_type_test(records, {"見せる", "送る"}, {"渡す"}, lm_options());
  REQUIRE(vt.tests.size() == 1);
  REQUIRE(vt.tests[0].result);
  CHECK(vt.tests[0].result->p_value == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(run_verb_type_test(records, {"ない"}, {"渡す"}, lm_options()), Error);

  VerbRecord extra{"あげる", 1, 3, 0, 2, 2};
  records.push_back(extra);
  const auto om = run_omission_analysis(records, lm_options());
  CHECK(om.records.rows.size() >= 2);
  REQUIRE(om.plots.size() == 1);
  CHECK(om.plots[0].xs.size() == om.plots[0].ys.size());
  CHECK_THROWS_AS(run_omission_analysis(std::vector<VerbRecord>{extra}, lm_options()), Error);
}

TEST_CASE("semantic-role analysis compares Type-A and Type-B") {
  std::vector<Sentence> corpus;
  for (int i = 0; i < 40; ++i) {
    corpus.push_back(ditransitive("a" + std::to_string(i), "学校", "本", "送る", "inanimate"));
    corpus.push_back(ditransitive("b" + std::to_string(i), "生徒", "本", "送る", "animate"));
  }
  corpus.push_back(ditransitive("u", "何か", "本", "送る", "location"));
  // Inanimate DAT: prefer ACC-DAT; animate DAT: prefer DAT-ACC.
  const auto scorer = function_scorer([](const std::string& t) {
    const bool acc_first = t.find("本を") < t.find("に");
    const bool inanimate = t.find("学校") != std::string::npos;
    return acc_first == inanimate ? 0.0 : -1.0;
  });
  const Judge judge(&scorer, lm_options());
  const auto r = run_semantic_role_analysis(corpus, judge);
  REQUIRE(r.records.rows.size() == 1);
  CHECK(r.records.rows[0][3] == 1.0);
  CHECK(r.records.rows[0][6] == 0.0);
  CHECK(r.records.rows[0][9] == "A");
  CHECK(r.summary["type_a_more_acc_dat"] == 1);
  CHECK(r.skipped.at("dat_untagged") == 1);
}

TEST_CASE("co-occurrence correlation equals the phi of a threshold rule") {
  // Pairs (dat, acc) with varied co-occurrence; the scorer prefers ACC-DAT
  // exactly when delta NPMI is positive.
  std::vector<Sentence> corpus;
  const std::vector<std::string> nouns{"a", "b", "c", "d", "e", "f"};
  int id = 0;
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const std::string dat = nouns[rng.uniform_index(3)];
    const std::string acc = nouns[3 + rng.uniform_index(3)];
    const std::string verb = rng.bernoulli(0.5) ? "v" : "w";
    corpus.push_back(ditransitive("c" + std::to_string(id++), dat, acc, verb));
  }
  const auto table = CooccurrenceTable::from_corpus(corpus);
  std::set<std::string> acc_first_texts;
  std::vector<double> deltas;
  for (const auto& s : corpus) {
    const std::string dat = s.chunks[1].stem(), acc = s.chunks[2].stem();
    const double d = delta_npmi(table, dat, acc, *s.verb_lemma);
    deltas.push_back(d);
    if (d > 0) acc_first_texts.insert(render_text(swap_cases(s, CaseRole::kDat, CaseRole::kAcc)));
    else acc_first_texts.insert("never:" + s.id);
  }
  const auto scorer = function_scorer([&](const std::string& t) {
    const bool acc_first = t.find("を") < t.find("に");
    // Both variants of an example: the ACC-first one wins iff it is listed.
    return acc_first ? (acc_first_texts.count(t) ? 0.0 : -1.0) : -0.5;
  });
  const Judge judge(&scorer, lm_options());
  const auto r = run_cooccurrence_analysis(corpus, judge);
  REQUIRE(r.records.rows.size() == corpus.size());

  // Direct point-biserial correlation of delta with the threshold rule.
  std::vector<double> prefs;
  for (double d : deltas) prefs.push_back(d > 0 ? 1.0 : 0.0);
  const double n = static_cast<double>(deltas.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    mx += deltas[i] / n;
    my += prefs[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    sxy += (deltas[i] - mx) * (prefs[i] - my);
    sxx += (deltas[i] - mx) * (deltas[i] - mx);
    syy += (prefs[i] - my) * (prefs[i] - my);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(r.records.rows[i][5] == prefs[i]);
  CHECK(r.summary["pearson"].get<double>() == doctest::Approx(sxy / std::sqrt(sxx * syy)));
}

TEST_CASE("case order recovers a planted canonical order") {
  const auto corpus = generate_corpus(GrammarSpec::standard(0.7, 12), 200);
  const auto scorer = function_scorer(
      [](const std::string& t) { return -static_cast<double>(testing::canonical_inversions(t)); });
  const Judge judge(&scorer, lm_options());
  const auto roles = default_case_order_roles();
  const auto r = run_case_order(corpus, judge, roles);
  CHECK(r.summary["o"]["TIM<LOC"] == 1.0);
  CHECK(r.summary["o"]["TIM<NOM"] == 1.0);
  CHECK(r.summary["o"]["LOC<NOM"] == 1.0);
  CHECK(r.summary["n_tie"] == 0);
  CHECK(r.tests.size() == 3);
  for (const auto& t : r.tests) CHECK(t.result->p_value < 0.05);

  // Count columns equal direct tallies over the original orders.
  std::uint64_t tim_loc = 0, loc_tim = 0;
  for (const auto& s : corpus) {
    const auto kids = s.children(s.root_index());
    std::size_t pt = 99, pl = 99;
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (s.chunks[kids[j]].case_role == CaseRole::kTim) pt = j;
      if (s.chunks[kids[j]].case_role == CaseRole::kLoc) pl = j;
    }
    if (pt != 99 && pl != 99) (pt < pl ? tim_loc : loc_tim) += 1;
  }
  const auto row = row_where(r, 0, "TIM", 1, "LOC");
  CHECK(row[6] == tim_loc);
  CHECK(row[7] == loc_tim);
}

TEST_CASE("case order rejects repeated roles and respects the order cap") {
  Sentence s = make_sentence("r", {{"あ", "に", CaseRole::kTim},
                                   {"い", "に", CaseRole::kTim},
                                   {"か", "で", CaseRole::kLoc}},
                             "v");
  const auto scorer = function_scorer([](const std::string&) { return 0.0; });
  const Judge judge(&scorer, lm_options());
  const auto r = run_case_order(std::vector<Sentence>{s}, judge, default_case_order_roles());
  CHECK(r.skipped.size() == 1);
  CHECK(r.summary["n_sentences"] == 0);

  RunOptions capped = lm_options();
  capped.order_cap = 2;
  const Judge small(&scorer, capped);
  const auto c = run_case_order(std::vector<Sentence>{testing::teacher_gave_book(),
                                                      generate_corpus(GrammarSpec::standard(1, 1), 1)[0]},
                                small, default_canonical_order());
  CHECK(c.skipped.at("TOO_MANY_ORDERS") == 2);
}

TEST_CASE("reports are identical across worker counts") {
  const auto corpus = generate_corpus(GrammarSpec::standard(0.8, 21), 300);
  const auto scorer =
      testing::train_pair(testing::render_all(generate_corpus(GrammarSpec::standard(0.8, 1), 1000)), 3);
  const auto roles = default_canonical_order();
  const auto one = run_case_order(corpus, Judge(&scorer, lm_options(1)), roles);
  const auto eight = run_case_order(corpus, Judge(&scorer, lm_options(8)), roles);
  CHECK(format_tsv(one.records) == format_tsv(eight.records));
  CHECK(one.to_json()["summary"] == eight.to_json()["summary"]);
}

TEST_CASE("adverb position ranks the three slots") {
  std::vector<Sentence> corpus;
  const std::vector<std::pair<std::string, AdverbType>> adverbs{
      {"たぶん", AdverbType::kModal}, {"ゆっくり", AdverbType::kManner}};
  for (const auto& [adv, type] : adverbs)
    for (int i = 0; i < 5; ++i)
      corpus.push_back(make_sentence(adv + std::to_string(i),
                                     {{adv, "", CaseRole::kAdverb, testing::kAttachToPredicate,
                                       "adverb", type},
                                      {"先生", "が", CaseRole::kNom},
                                      {"本", "を", CaseRole::kAcc}},
                                     "読んだ"));
  corpus.push_back(testing::teacher_gave_book());
  // Modal adverbs first, manner adverbs right before the object.
  const auto scorer = function_scorer([](const std::string& t) {
    const bool modal = t.find("たぶん") != std::string::npos;
    const std::size_t a = t.find(modal ? "たぶん" : "ゆっくり");
    const std::size_t s = t.find("先生"), o = t.find("本");
    if (modal) return a < s ? 0.0 : a < o ? -1.0 : -2.0;
    return (s < a && a < o) ? 0.0 : a < s ? -1.0 : -2.0;
  });
  const auto r = run_adverb_position(corpus, Judge(&scorer, lm_options()), default_adverb_reference());
  CHECK(r.skipped.at("no_adverb_frame") == 1);
  CHECK(row_where(r, 0, "MODAL", 1, "ASOV")[3] == 5);
  CHECK(row_where(r, 0, "MODAL", 1, "ASOV")[4] == 1.0);
  CHECK(row_where(r, 0, "MANNER", 1, "SAOV")[4] == 1.0);
  CHECK(r.summary["rank_correlation"]["MODAL"].get<double>() ==
        doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(r.summary["rank_correlation"]["TIME"].is_null());
  CHECK(r.extra.count("correlation") == 1);
}

TEST_CASE("long-before-short compares against the canonical slot") {
  // NOM carries a two-chunk subtree; ACC is a single chunk.
  std::vector<Sentence> corpus;
  for (int i = 0; i < 4; ++i)
    corpus.push_back(make_sentence("l" + std::to_string(i),
                                   {{"本", "を", CaseRole::kAcc},
                                    {"優しい", "", CaseRole::kOther, 2},
                                    {"先生", "が", CaseRole::kNom}},
                                   "読んだ"));
  // Prefers the long NOM phrase first.
  const auto scorer = function_scorer(
      [](const std::string& t) { return t.rfind("優しい", 0) == 0 ? 0.0 : -1.0; });
  const auto r = run_long_before_short(corpus, Judge(&scorer, lm_options()),
                                       default_canonical_order());
  CHECK(r.summary["long_precedes_short"] == 0);
  CHECK(r.skipped.at("same_position") == 4);

  // Canonical order with NOM after ACC: preferred NOM-first counts as long first.
  const std::vector<CaseRole> acc_first{CaseRole::kAcc, CaseRole::kNom};
  const auto r2 = run_long_before_short(corpus, Judge(&scorer, lm_options()), acc_first);
  CHECK(r2.summary["long_precedes_short"] == 4);
  CHECK(r2.summary["short_precedes_long"] == 0);
  REQUIRE(r2.tests[0].result);
  CHECK(r2.tests[0].result->p_value == 0.125);
}

TEST_CASE("topicalization claim i favours canonically early cases") {
  const auto corpus = generate_corpus(GrammarSpec::standard(1.0, 4), 60);
  // The topic (first chunk, marked は) should come from the earliest role.
  const auto scorer = function_scorer(
      [](const std::string& t) { return -static_cast<double>(testing::canonical_inversions(t)); });
  const auto r = run_topicalization_claim_i(corpus, Judge(&scorer, lm_options()),
                                            default_canonical_order());
  CHECK(r.summary["t"]["TIM|ACC"] == 1.0);
  CHECK(r.summary["t"]["ACC|TIM"] == 0.0);
  CHECK(r.summary["n_tie"] == 0);
}

TEST_CASE("topicalization claim ii and adverbial particles") {
  std::vector<Sentence> corpus;
  for (int i = 0; i < 4; ++i) {
    corpus.push_back(ditransitive("x" + std::to_string(i), "生徒", "本", "渡す"));
    corpus.push_back(ditransitive("y" + std::to_string(i), "生徒", "本", "見せる"));
  }
  // 渡す: ACC early in every sense; 見せる: DAT early.
  const auto scorer = function_scorer([](const std::string& t) {
    const bool acc_early = t.find("本") < t.find("生徒");
    const bool pass = t.find("渡す") != std::string::npos;
    return acc_early == pass ? 0.0 : -1.0;
  });
  const Judge judge(&scorer, lm_options());
  std::vector<VerbRecord> records;
  run_double_object(corpus, judge, &records);
  const auto r = run_topicalization_claim_ii(corpus, judge, records);
  CHECK(row_where(r, 0, "渡す")[4] == 1.0);
  CHECK(row_where(r, 0, "見せる")[4] == 0.0);
  CHECK(r.summary["pearson"].get<double>() == doctest::Approx(1.0));

  const auto particles = default_adverbial_particles();
  const std::vector<CaseRole> roles{CaseRole::kDat, CaseRole::kAcc};
  const auto p = run_adverbial_particles(corpus, judge, particles, roles);
  // ACC moved to the front wins for 渡す (4 sentences) and loses for 見せる.
  const auto acc_wa = row_where(p, 0, "は", 1, "ACC");
  CHECK(acc_wa[2] == 4);
  CHECK(acc_wa[3] == 4);
  CHECK(p.extra.at("shift").rows.size() == 2 * 2 * particles.size());
}

TEST_CASE("count mode skips runners without an original variant") {
  const auto corpus = generate_corpus(GrammarSpec::standard(1.0, 4), 20);
  const Judge judge(nullptr, count_options());
  const auto r = run_topicalization_claim_i(corpus, judge, default_canonical_order());
  CHECK(r.skipped.at("no_original_variant") == 20);
  std::vector<PreferencePair> pairs(1);
  CHECK_THROWS_AS(run_human_agreement(pairs, judge), Error);
}

TEST_CASE("human agreement") {
  const Sentence a = testing::teacher_gave_book();
  const Sentence b = swap_cases(a, CaseRole::kDat, CaseRole::kAcc);
  auto pair = [&](const std::string& id, PreferenceLabel gold, bool swap) {
    PreferencePair p;
    p.id = id;
    p.order1 = swap ? b : a;
    p.order2 = swap ? a : b;
    p.gold = gold;
    return p;
  };
  std::vector<PreferencePair> pairs{pair("1", PreferenceLabel::kPrefer1, false),
                                    pair("2", PreferenceLabel::kPrefer2, true),
                                    pair("3", PreferenceLabel::kPrefer1, true),
                                    pair("4", PreferenceLabel::kPrefer2, false)};
  pairs.push_back(pair("5", PreferenceLabel::kPrefer1, false));
  pairs.back().gold.reset();
  // The scorer prefers DAT-ACC (sentence a).
  const auto scorer = function_scorer(
      [&](const std::string& t) { return t == render_text(a) ? 0.0 : -1.0; });
  const auto r = run_human_agreement(pairs, Judge(&scorer, lm_options()));
  CHECK(r.summary["n_gold"] == 4);
  CHECK(r.summary["agreement"] == 0.5);
  CHECK(r.summary["phi"].get<double>() == doctest::Approx(0.0));
  CHECK(r.skipped.at("no_gold") == 1);
  std::vector<PreferencePair> none{pairs.back()};
  CHECK_THROWS_AS(run_human_agreement(none, Judge(&scorer, lm_options())), Error);
}

TEST_CASE("report files") {
  ExperimentReport r;
  r.name = "demo";
  r.records.columns = {"a", "b", "c"};
  r.records.rows.push_back({"x\ty", 0.5, nullptr});
  r.records.rows.push_back({"z", 2, true});
  r.extra["more"] = Table{{"k"}, {{1}}};
  r.plots.push_back({"p", "title", "x", "y", {0, 1, 2}, {1, 3, 5}, true});
  r.skip("why", 2);
  CHECK(format_tsv(r.records) == "a\tb\tc\nx y\t0.500000\tNA\nz\t2\ttrue\n");
  const std::string svg = render_svg(r.plots[0]);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "gojun_report_test";
  std::filesystem::remove_all(dir);
  write_report(r, dir);
  CHECK(read_file(dir / "report.tsv") == format_tsv(r.records));
  CHECK(std::filesystem::exists(dir / "report.more.tsv"));
  CHECK(std::filesystem::exists(dir / "report.p.svg"));
  const auto j = nlohmann::json::parse(read_file(dir / "report.json"));
  CHECK(j["skipped"]["why"] == 2);
  CHECK(j["name"] == "demo");
  std::filesystem::remove_all(dir);
  write_report(r, dir, false);
  CHECK_FALSE(std::filesystem::exists(dir / "report.p.svg"));
  std::filesystem::remove_all(dir);
}
