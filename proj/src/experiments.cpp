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

#include "gojun/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "gojun/error.hpp"
#include "gojun/kernels.hpp"
#include "gojun/text.hpp"

namespace gojun {

std::string_view to_string(Mode mode) { return mode == Mode::kLm ? "lm" : "count"; }

Mode parse_mode(std::string_view text) {
  if (text == "lm") return Mode::kLm;
  if (text == "count") return Mode::kCount;
  throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + std::string(text) + "'");
}

Judge::Judge(const BidirectionalScorer* scorer, const RunOptions& options)
    : scorer_(scorer), options_(options) {
  if (options_.mode == Mode::kLm && !scorer_)
    throw Error(ErrorCode::kInvalidArgument, "LM mode needs a scorer");
  if (options_.workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
}

std::vector<std::optional<ComparisonResult>> Judge::decide(
    std::span<const VariantSet> sets) const {
  std::vector<std::optional<ComparisonResult>> out;
  out.reserve(sets.size());
  if (options_.mode == Mode::kLm) {
    for (auto& r : compare_many(*scorer_, sets, options_.tie_epsilon, options_.workers))
      out.emplace_back(std::move(r));
    return out;
  }
  for (const VariantSet& set : sets) {
    auto it = std::find_if(set.variants.begin(), set.variants.end(),
                           [&](const Variant& v) { return v.sentence.chunks == set.base.chunks; });
    if (it == set.variants.end()) {
      out.emplace_back(std::nullopt);
      continue;
    }
    ComparisonResult r;
    r.tie_epsilon = options_.tie_epsilon;
    r.winner = it->label;
    r.variants.push_back({it->label, render_text(it->sentence), 0.0, 0.0});
    for (const Variant& v : set.variants)
      if (&v != &*it) r.variants.push_back({v.label, render_text(v.sentence), 0.0, 0.0});
    out.emplace_back(std::move(r));
  }
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "human-agreement", "double-object",   "verb-type",     "omission",
      "semantic-role",   "cooccurrence",    "case-order",    "adverb-position",
      "long-before-short", "topic-i",       "topic-ii",      "adverbial-particles"};
  return names;
}

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

nlohmann::json num(const std::optional<double>& v) { return v ? num(*v) : nlohmann::json(); }

std::optional<double> rate(std::uint64_t a, std::uint64_t b) {
  if (a + b == 0) return std::nullopt;
  return static_cast<double>(a) / static_cast<double>(a + b);
}

std::string role_name(CaseRole r) { return std::string(to_string(r)); }

ExperimentReport start_report(std::string name, const RunOptions& options) {
  ExperimentReport r;
  r.name = std::move(name);
  r.config = options.config.is_object() ? options.config : nlohmann::json::object();
  r.config["mode"] = to_string(options.mode);
  r.config["tie_epsilon"] = options.tie_epsilon;
  r.config["seed"] = options.seed;
  r.config["order_cap"] = options.order_cap;
  r.config["alpha"] = options.alpha;
  return r;
}

// Scores variant sets block by block and hands each decision to `reduce` in
// corpus order. `build` appends zero or more sets per sentence; an Error it
// throws skips the sentence under the error's code name.
template <typename Meta>
struct Item {
  VariantSet set;
  Meta meta;
};

template <typename Meta, typename Build, typename Reduce>
void run_blocks(std::span<const Sentence> corpus, const Judge& judge, ExperimentReport& report,
                Build build, Reduce reduce) {
  constexpr std::size_t kBlock = 512;
  for (std::size_t start = 0; start < corpus.size(); start += kBlock) {
    const std::size_t end = std::min(corpus.size(), start + kBlock);
    std::vector<VariantSet> sets;
    std::vector<Meta> metas;
    for (std::size_t i = start; i < end; ++i) {
      std::vector<Item<Meta>> items;
      try {
        build(corpus[i], items);
      } catch (const Error& e) {
        report.skip(error_code_name(e.code()));
        continue;
      }
      for (auto& it : items) {
        sets.push_back(std::move(it.set));
        metas.push_back(std::move(it.meta));
      }
    }
    const auto decisions = judge.decide(sets);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (!decisions[k]) {
        report.skip("no_original_variant");
        continue;
      }
      reduce(sets[k], metas[k], *decisions[k]);
    }
  }
}

const Variant& find_variant(const VariantSet& set, const std::string& label) {
  for (const Variant& v : set.variants)
    if (v.label == label) return v;
  throw Error(ErrorCode::kInvariant, "winner label " + label + " not in variant set");
}

// "ACC-DAT" or "DAT-ACC" for a sentence with unique DAT and ACC chunks.
std::string object_order(const Sentence& s) {
  return unique_role(s, CaseRole::kAcc) < unique_role(s, CaseRole::kDat) ? std::string(kAccDat)
                                                                         : std::string(kDatAcc);
}

// Original vs DAT/ACC swap; throws unless DAT and ACC are unique siblings.
VariantSet double_object_set(const Sentence& s) {
  VariantSet set;
  set.base = s;
  Sentence swapped = swap_cases(s, CaseRole::kDat, CaseRole::kAcc);
  set.variants.push_back({object_order(s), s});
  set.variants.push_back({object_order(swapped), std::move(swapped)});
  return set;
}

enum class ObjectFrame { kBoth, kDatOnly, kAccOnly, kNone, kAmbiguous };

ObjectFrame object_frame(const Sentence& s) {
  const auto d = s.find_role(CaseRole::kDat).size();
  const auto a = s.find_role(CaseRole::kAcc).size();
  if (d == 1 && a == 1) return ObjectFrame::kBoth;
  if (d > 0 && a == 0) return ObjectFrame::kDatOnly;
  if (a > 0 && d == 0) return ObjectFrame::kAccOnly;
  if (d == 0 && a == 0) return ObjectFrame::kNone;
  return ObjectFrame::kAmbiguous;
}

void add_pearson_summary(ExperimentReport& report, const std::string& key,
                         std::span<const double> xs, std::span<const double> ys) {
  report.summary[key + "_n"] = xs.size();
  if (xs.size() < 2) {
    report.summary[key] = nullptr;
    report.summary[key + "_note"] = "fewer than two points";
    return;
  }
  try {
    report.summary[key] = pearson(xs, ys);
  } catch (const Error& e) {
    report.summary[key] = nullptr;
    report.summary[key + "_note"] = std::string(error_code_name(e.code()));
  }
}

NamedTest sign_test_named(std::string name, std::uint64_t pos, std::uint64_t neg) {
  NamedTest t{std::move(name), std::nullopt, ""};
  if (pos + neg == 0)
    t.note = "no decided comparisons";
  else
    t.result = sign_test(pos, neg);
  return t;
}

// 1-based ranks of the variants of one decision; variants whose combined
// scores chain within epsilon share their average rank.
std::map<std::string, double> decision_ranks(const ComparisonResult& r, Mode mode) {
  std::map<std::string, double> ranks;
  const auto& v = r.variants;
  if (mode == Mode::kCount) {
    const double rest = (2.0 + static_cast<double>(v.size())) / 2.0;
    for (std::size_t i = 0; i < v.size(); ++i) ranks[v[i].label] = i == 0 ? 1.0 : rest;
    return ranks;
  }
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() &&
           !(v[j].combined_logp() - v[j + 1].combined_logp() > r.tie_epsilon))
      ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[v[k].label] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<std::size_t> parse_permutation(const std::string& label) {
  std::vector<std::size_t> perm;
  if (label.find(',') != std::string::npos) {
    for (const auto& part : split(label, ',')) perm.push_back(std::stoul(part) - 1);
  } else {
    for (char c : label) perm.push_back(static_cast<std::size_t>(c - '1'));
  }
  return perm;
}

// Index among the predicate's children of the first child with `role`, or
// nothing when the role is absent or repeated there.
std::optional<std::size_t> unique_child(const Sentence& s, const std::vector<std::size_t>& kids,
                                        CaseRole role) {
  std::optional<std::size_t> found;
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if (s.chunks[kids[j]].case_role != role) continue;
    if (found) return std::nullopt;
    found = j;
  }
  return found;
}

}  // namespace

// --- double objects ----------------------------------------------------------

std::optional<double> VerbRecord::r_acc_dat() const { return rate(n_acc_dat, n_dat_acc); }
std::optional<double> VerbRecord::r_dat_only() const { return rate(n_dat_only, n_acc_only); }

ExperimentReport run_double_object(std::span<const Sentence> corpus, const Judge& judge,
                                   std::vector<VerbRecord>* records_out) {
  ExperimentReport report = start_report("double-object", judge.options());
  std::map<std::string, VerbRecord> records;
  auto record = [&](const std::string& verb) -> VerbRecord& {
    VerbRecord& r = records[verb];
    r.verb_lemma = verb;
    return r;
  };
  std::uint64_t compared = 0;
  run_blocks<std::string>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<std::string>>& out) {
        if (!s.verb_lemma) {
          report.skip("no_verb_lemma");
          return;
        }
        switch (object_frame(s)) {
          case ObjectFrame::kBoth:
            out.push_back({double_object_set(s), *s.verb_lemma});
            return;
          case ObjectFrame::kDatOnly:
            ++record(*s.verb_lemma).n_dat_only;
            return;
          case ObjectFrame::kAccOnly:
            ++record(*s.verb_lemma).n_acc_only;
            return;
          case ObjectFrame::kNone:
            report.skip("no_object");
            return;
          case ObjectFrame::kAmbiguous:
            report.skip("ROLE_NOT_UNIQUE");
            return;
        }
      },
      [&](const VariantSet&, const std::string& verb, const ComparisonResult& r) {
        ++compared;
        VerbRecord& rec = record(verb);
        if (r.is_tie())
          ++rec.n_tie;
        else if (r.winner == kAccDat)
          ++rec.n_acc_dat;
        else
          ++rec.n_dat_acc;
      });
  report.records.columns = {"verb",       "n_acc_dat",  "n_dat_acc", "n_tie",
                            "r_acc_dat",  "n_dat_only", "n_acc_only", "r_dat_only"};
  std::uint64_t acc_dat = 0, dat_acc = 0, ties = 0;
  std::vector<VerbRecord> list;
  for (const auto& [verb, r] : records) {
    report.records.rows.push_back({verb, r.n_acc_dat, r.n_dat_acc, r.n_tie, num(r.r_acc_dat()),
                                   r.n_dat_only, r.n_acc_only, num(r.r_dat_only())});
    acc_dat += r.n_acc_dat;
    dat_acc += r.n_dat_acc;
    ties += r.n_tie;
    list.push_back(r);
  }
  report.summary["n_compared"] = compared;
  report.summary["n_acc_dat"] = acc_dat;
  report.summary["n_dat_acc"] = dat_acc;
  report.summary["n_tie"] = ties;
  report.summary["r_acc_dat"] = num(rate(acc_dat, dat_acc));
  report.summary["n_verbs"] = records.size();
  if (records_out) *records_out = std::move(list);
  return report;
}

ExperimentReport run_verb_type_test(std::span<const VerbRecord> records,
                                    const std::set<std::string>& show_verbs,
                                    const std::set<std::string>& pass_verbs,
                                    const RunOptions& options) {
  ExperimentReport report = start_report("verb-type", options);
  report.records.columns = {"verb", "group", "r_acc_dat"};
  std::map<std::string, const VerbRecord*> by_verb;
  for (const auto& r : records) by_verb[r.verb_lemma] = &r;
  auto collect = [&](const std::set<std::string>& verbs, const std::string& group) {
    std::vector<double> values;
    for (const auto& v : verbs) {
      auto it = by_verb.find(v);
      if (it == by_verb.end()) {
        report.skip("verb_not_found");
        continue;
      }
      const auto r = it->second->r_acc_dat();
      if (!r) {
        report.skip("rate_undefined");
        continue;
      }
      values.push_back(*r);
      report.records.rows.push_back({v, group, *r});
    }
    if (values.empty())
      throw Error(ErrorCode::kEmptyGroup, "no " + group + " verb has a defined ACC-DAT rate");
    return values;
  };
  const auto show = collect(show_verbs, "show");
  const auto pass = collect(pass_verbs, "pass");
  const TestResult t = wilcoxon_rank_sum(show, pass);
  report.tests.push_back({"wilcoxon_rank_sum show vs pass", t, ""});
  report.summary["n_show"] = show.size();
  report.summary["n_pass"] = pass.size();
  report.summary["p_value"] = t.p_value;
  return report;
}

ExperimentReport run_omission_analysis(std::span<const VerbRecord> records,
                                       const RunOptions& options) {
  ExperimentReport report = start_report("omission", options);
  report.records.columns = {"verb", "n_dat_only", "n_acc_only", "r_dat_only", "r_acc_dat"};
  std::vector<double> xs, ys;
  std::vector<VerbRecord> sorted(records.begin(), records.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const VerbRecord& a, const VerbRecord& b) { return a.verb_lemma < b.verb_lemma; });
  for (const auto& r : sorted) {
    const auto d = r.r_dat_only(), a = r.r_acc_dat();
    if (!d || !a) {
      report.skip("rate_undefined");
      continue;
    }
    report.records.rows.push_back({r.verb_lemma, r.n_dat_only, r.n_acc_only, *d, *a});
    xs.push_back(*d);
    ys.push_back(*a);
  }
  if (xs.size() < 2)
    throw Error(ErrorCode::kEmptyEval, "fewer than two verbs have both rates defined");
  add_pearson_summary(report, "pearson", xs, ys);
  try {
    const auto [slope, intercept] = least_squares(xs, ys);
    report.summary["ols_slope"] = slope;
    report.summary["ols_intercept"] = intercept;
  } catch (const Error&) {
    report.summary["ols_slope"] = nullptr;
    report.summary["ols_intercept"] = nullptr;
  }
  report.plots.push_back({"omission", "ACC-DAT rate vs DAT-only rate per verb",
                          "R_DAT-only", "ACC-DAT rate", xs, ys, true});
  return report;
}

ExperimentReport run_semantic_role_analysis(std::span<const Sentence> corpus, const Judge& judge,
                                            const SemanticRoleOptions& role_options) {
  ExperimentReport report = start_report("semantic-role", judge.options());
  report.config["significant_only"] = role_options.significant_only;
  struct Meta {
    std::string verb;
    bool type_a = false;
  };
  struct Tally {
    std::uint64_t acc_dat = 0, dat_acc = 0, tie = 0;
  };
  std::map<std::string, std::array<Tally, 2>> tallies;  // [0] Type-A, [1] Type-B
  run_blocks<Meta>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<Meta>>& out) {
        if (!s.verb_lemma) {
          report.skip("no_verb_lemma");
          return;
        }
        if (object_frame(s) != ObjectFrame::kBoth) {
          report.skip("no_double_object");
          return;
        }
        const Chunk& dat = s.chunks[unique_role(s, CaseRole::kDat)];
        const bool inanimate = dat.has_tag(kSemInanimate), animate = dat.has_tag(kSemAnimate);
        if (inanimate == animate) {
          report.skip("dat_untagged");
          return;
        }
        out.push_back({double_object_set(s), {*s.verb_lemma, inanimate}});
      },
      [&](const VariantSet&, const Meta& m, const ComparisonResult& r) {
        Tally& t = tallies[m.verb][m.type_a ? 0 : 1];
        if (r.is_tie())
          ++t.tie;
        else if (r.winner == kAccDat)
          ++t.acc_dat;
        else
          ++t.dat_acc;
      });
  report.records.columns = {"verb",      "a_acc_dat", "a_dat_acc", "a_rate",    "b_acc_dat",
                            "b_dat_acc", "b_rate",    "z",         "p_value",   "direction",
                            "counted"};
  std::uint64_t dir_a = 0, dir_b = 0;
  for (const auto& [verb, t] : tallies) {
    const Tally& a = t[0];
    const Tally& b = t[1];
    const std::uint64_t na = a.acc_dat + a.dat_acc, nb = b.acc_dat + b.dat_acc;
    if (na == 0 || nb == 0) {
      report.skip("missing_type");
      continue;
    }
    const double ra = static_cast<double>(a.acc_dat) / na, rb = static_cast<double>(b.acc_dat) / nb;
    std::optional<TestResult> z;
    try {
      z = two_proportion_z_test(a.acc_dat, na, b.acc_dat, nb);
    } catch (const Error& e) {
      report.skip(error_code_name(e.code()));
    }
    std::string direction = ra > rb ? "A" : ra < rb ? "B" : "none";
    const bool significant = z && z->p_value < judge.options().alpha;
    const bool counted =
        direction != "none" && z && (!role_options.significant_only || significant);
    if (counted) (direction == "A" ? dir_a : dir_b) += 1;
    report.records.rows.push_back({verb, a.acc_dat, a.dat_acc, ra, b.acc_dat, b.dat_acc, rb,
                                   z ? num(z->statistic) : nlohmann::json(),
                                   z ? num(z->p_value) : nlohmann::json(), direction, counted});
  }
  report.summary["type_a_more_acc_dat"] = dir_a;
  report.summary["type_b_more_acc_dat"] = dir_b;
  report.tests.push_back(sign_test_named("sign_test type A vs type B", dir_a, dir_b));
  return report;
}

ExperimentReport run_cooccurrence_analysis(std::span<const Sentence> corpus, const Judge& judge,
                                           const CooccurrenceTable* table) {
  ExperimentReport report = start_report("cooccurrence", judge.options());
  CooccurrenceTable own;
  if (!table) {
    own = CooccurrenceTable::from_corpus(corpus);
    table = &own;
    report.config["cooccurrence_source"] = "corpus";
  } else {
    report.config["cooccurrence_source"] = "table";
  }
  struct Meta {
    std::string id, verb, noun_dat, noun_acc;
    double delta = 0.0;
  };
  report.records.columns = {"id", "verb", "noun_dat", "noun_acc", "delta_npmi", "acc_dat_preferred"};
  std::vector<double> xs, ys;
  run_blocks<Meta>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<Meta>>& out) {
        if (!s.verb_lemma) {
          report.skip("no_verb_lemma");
          return;
        }
        if (object_frame(s) != ObjectFrame::kBoth) {
          report.skip("no_double_object");
          return;
        }
        Meta m;
        m.id = s.id;
        m.verb = *s.verb_lemma;
        m.noun_dat = s.chunks[unique_role(s, CaseRole::kDat)].stem();
        m.noun_acc = s.chunks[unique_role(s, CaseRole::kAcc)].stem();
        m.delta = delta_npmi(*table, m.noun_dat, m.noun_acc, m.verb);
        out.push_back({double_object_set(s), std::move(m)});
      },
      [&](const VariantSet&, const Meta& m, const ComparisonResult& r) {
        if (r.is_tie()) {
          report.skip("tie");
          return;
        }
        const int pref = r.winner == kAccDat ? 1 : 0;
        report.records.rows.push_back({m.id, m.verb, m.noun_dat, m.noun_acc, m.delta, pref});
        xs.push_back(m.delta);
        ys.push_back(pref);
      });
  add_pearson_summary(report, "pearson", xs, ys);
  report.plots.push_back({"cooccurrence", "ACC-DAT preference vs delta NPMI per example",
                          "delta NPMI", "ACC-DAT rate", xs, ys, true});
  return report;
}

// --- argument order ----------------------------------------------------------

std::vector<CaseRole> default_case_order_roles() {
  return {CaseRole::kTim, CaseRole::kLoc, CaseRole::kNom};
}

std::vector<CaseRole> default_canonical_order() {
  return {CaseRole::kTim, CaseRole::kLoc, CaseRole::kNom, CaseRole::kDat, CaseRole::kAcc};
}

ExperimentReport run_case_order(std::span<const Sentence> corpus, const Judge& judge,
                                std::span<const CaseRole> roles) {
  ExperimentReport report = start_report("case-order", judge.options());
  report.config["roles"] = nlohmann::json::array();
  for (CaseRole r : roles) report.config["roles"].push_back(to_string(r));
  const std::size_t m = roles.size();
  using Matrix = std::vector<std::vector<std::uint64_t>>;
  Matrix lm(m, std::vector<std::uint64_t>(m, 0)), count = lm;
  std::uint64_t sentences = 0, ties = 0;

  // Role index -> position among the predicate's children, for one order.
  auto tally = [&](const Sentence& s, Matrix& into) {
    const auto kids = s.children(s.root_index());
    std::vector<std::optional<std::size_t>> pos(m);
    for (std::size_t r = 0; r < m; ++r) pos[r] = unique_child(s, kids, roles[r]);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && pos[a] && pos[b] && *pos[a] < *pos[b]) ++into[a][b];
  };

  run_blocks<int>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<int>>& out) {
        const std::size_t root = s.root_index();
        const auto kids = s.children(root);
        std::size_t present = 0;
        for (CaseRole r : roles)
          if (unique_child(s, kids, r)) ++present;
        if (present < 2) {
          report.skip("fewer_than_two_roles");
          return;
        }
        if (judge.mode() == Mode::kLm) {
          out.push_back({enumerate_orders(s, root, judge.options().order_cap), 0});
        } else {
          check_order_cap(kids.size(), judge.options().order_cap);
          std::vector<std::size_t> id(kids.size());
          std::iota(id.begin(), id.end(), 0);
          VariantSet set;
          set.base = s;
          set.variants.push_back({permutation_label(id), s});
          out.push_back({std::move(set), 0});
        }
      },
      [&](const VariantSet& set, int, const ComparisonResult& r) {
        ++sentences;
        tally(set.base, count);
        if (r.is_tie()) {
          ++ties;
          return;
        }
        tally(find_variant(set, r.winner).sentence, lm);
      });

  report.records.columns = {"a",     "b",       "n_a_before_b",       "n_b_before_a",
                            "o",     "p_value", "count_n_a_before_b", "count_n_b_before_a",
                            "count_o"};
  nlohmann::json matrix = nlohmann::json::object();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto o = rate(lm[a][b], lm[b][a]);
      const auto co = rate(count[a][b], count[b][a]);
      nlohmann::json p;
      if (lm[a][b] + lm[b][a] > 0) p = sign_test(lm[a][b], lm[b][a]).p_value;
      report.records.rows.push_back({role_name(roles[a]), role_name(roles[b]), lm[a][b],
                                     lm[b][a], num(o), p, count[a][b], count[b][a], num(co)});
      matrix[role_name(roles[a]) + "<" + role_name(roles[b])] = num(o);
      if (a < b)
        report.tests.push_back(sign_test_named(
            "sign_test " + role_name(roles[a]) + "<" + role_name(roles[b]), lm[a][b], lm[b][a]));
    }
  }
  report.summary["n_sentences"] = sentences;
  report.summary["n_tie"] = ties;
  report.summary["o"] = matrix;
  return report;
}

AdverbReference default_adverb_reference() {
  return {{AdverbType::kModal, {std::string(kAsov)}},
          {AdverbType::kTime, {std::string(kAsov), std::string(kSaov)}},
          {AdverbType::kManner, {std::string(kSaov), std::string(kSoav)}},
          {AdverbType::kResultive, {std::string(kSaov), std::string(kSoav)}}};
}

ExperimentReport run_adverb_position(std::span<const Sentence> corpus, const Judge& judge,
                                     const AdverbReference& reference) {
  ExperimentReport report = start_report("adverb-position", judge.options());
  report.config["reference"] = nlohmann::json::object();
  for (const auto& [type, set] : reference)
    report.config["reference"][std::string(to_string(type))] = set;
  const std::array<std::string, 3> positions = {std::string(kAsov), std::string(kSaov),
                                                std::string(kSoav)};
  struct Acc {
    std::uint64_t examples = 0, ties = 0;
    std::array<double, 3> rank_sum{};
    std::array<std::uint64_t, 3> wins{};
  };
  std::map<AdverbType, Acc> acc;
  for (const auto& [type, _] : reference) acc[type];
  run_blocks<AdverbType>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<AdverbType>>& out) {
        const std::size_t root = s.root_index();
        const auto kids = s.children(root);
        const auto a = unique_child(s, kids, CaseRole::kAdverb);
        const auto subj = unique_child(s, kids, CaseRole::kNom);
        const auto obj = unique_child(s, kids, CaseRole::kAcc);
        if (!a || !subj || !obj || !s.chunks[kids[*a]].adverb_type) {
          report.skip("no_adverb_frame");
          return;
        }
        std::array<std::size_t, 3> slots = {*a, *subj, *obj};
        std::sort(slots.begin(), slots.end());
        const std::array<std::array<std::size_t, 3>, 3> fills = {
            {{*a, *subj, *obj}, {*subj, *a, *obj}, {*subj, *obj, *a}}};
        VariantSet set;
        set.base = s;
        for (std::size_t v = 0; v < 3; ++v) {
          std::vector<std::size_t> perm(kids.size());
          std::iota(perm.begin(), perm.end(), 0);
          for (std::size_t j = 0; j < 3; ++j) perm[slots[j]] = fills[v][j];
          set.variants.push_back({positions[v], permute_children(s, root, perm)});
        }
        out.push_back({std::move(set), *s.chunks[kids[*a]].adverb_type});
      },
      [&](const VariantSet&, const AdverbType& type, const ComparisonResult& r) {
        Acc& x = acc[type];
        ++x.examples;
        const auto ranks = decision_ranks(r, judge.mode());
        for (std::size_t p = 0; p < 3; ++p) x.rank_sum[p] += ranks.at(positions[p]);
        if (r.is_tie()) {
          ++x.ties;
          return;
        }
        for (std::size_t p = 0; p < 3; ++p)
          if (r.winner == positions[p]) ++x.wins[p];
      });
  report.records.columns = {"adverb_type", "position", "n_examples", "wins", "mean_rank",
                            "reference"};
  Table corr;
  corr.columns = {"adverb_type", "n_examples", "n_tie", "rank_correlation", "note"};
  for (const auto& [type, x] : acc) {
    const std::string tname(to_string(type));
    auto ref_it = reference.find(type);
    std::vector<double> prefs, refs;
    for (std::size_t p = 0; p < 3; ++p) {
      const bool in_ref = ref_it != reference.end() && ref_it->second.count(positions[p]);
      const double mean = x.examples ? x.rank_sum[p] / static_cast<double>(x.examples)
                                     : std::numeric_limits<double>::quiet_NaN();
      report.records.rows.push_back(
          {tname, positions[p], x.examples, x.wins[p], num(mean), in_ref ? 1 : 0});
      if (x.examples) prefs.push_back(-mean);
      refs.push_back(in_ref ? 1.0 : 0.0);
    }
    nlohmann::json rho;
    std::string note;
    if (x.examples == 0) {
      note = "no examples";
    } else {
      try {
        rho = rank_correlation(prefs, refs);
      } catch (const Error& e) {
        note = std::string(error_code_name(e.code()));
      }
    }
    corr.rows.push_back({tname, x.examples, x.ties, rho, note});
    report.summary["rank_correlation"][tname] = rho;
  }
  report.extra["correlation"] = std::move(corr);
  return report;
}

ExperimentReport run_long_before_short(std::span<const Sentence> corpus, const Judge& judge,
                                       std::span<const CaseRole> canonical_order) {
  ExperimentReport report = start_report("long-before-short", judge.options());
  report.config["canonical_order"] = nlohmann::json::array();
  for (CaseRole r : canonical_order) report.config["canonical_order"].push_back(to_string(r));
  struct Meta {
    std::string id;
    CaseRole role = CaseRole::kOther;
    std::size_t size = 0, longest = 0, canonical_slot = 0;
  };
  report.records.columns = {"id",          "longest_role",      "longest_chunks",
                            "canonical_position", "preferred_position", "direction"};
  std::uint64_t long_first = 0, short_first = 0;
  run_blocks<Meta>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<Meta>>& out) {
        const std::size_t root = s.root_index();
        const auto kids = s.children(root);
        std::vector<std::pair<std::size_t, std::size_t>> parts;  // (canonical rank, child slot)
        for (std::size_t rank = 0; rank < canonical_order.size(); ++rank) {
          std::size_t seen = 0, slot = 0;
          for (std::size_t j = 0; j < kids.size(); ++j)
            if (s.chunks[kids[j]].case_role == canonical_order[rank]) {
              ++seen;
              slot = j;
            }
          if (seen > 1) throw Error(ErrorCode::kRoleNotUnique, "repeated constituent role");
          if (seen == 1) parts.emplace_back(rank, slot);
        }
        if (parts.size() < 2) {
          report.skip("fewer_than_two_constituents");
          return;
        }
        std::size_t best = 0, best_size = 0, best_count = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const std::size_t size = subtree(s, kids[parts[i].second]).size();
          if (size > best_size) {
            best_size = size;
            best = i;
            best_count = 1;
          } else if (size == best_size) {
            ++best_count;
          }
        }
        if (best_count != 1) {
          report.skip("no_unique_longest");
          return;
        }
        // Canonical rendering: the constituents trade slots so that their
        // roles follow canonical_order; other dependents keep theirs.
        std::vector<std::size_t> slots;
        for (const auto& p : parts) slots.push_back(p.second);
        std::sort(slots.begin(), slots.end());
        Meta m;
        m.id = s.id;
        m.role = s.chunks[kids[parts[best].second]].case_role;
        m.size = best_size;
        m.longest = parts[best].second;
        m.canonical_slot = slots[best];  // parts are already in canonical order
        if (judge.mode() == Mode::kLm) {
          out.push_back({enumerate_orders(s, root, judge.options().order_cap), std::move(m)});
        } else {
          check_order_cap(kids.size(), judge.options().order_cap);
          std::vector<std::size_t> id(kids.size());
          std::iota(id.begin(), id.end(), 0);
          VariantSet set;
          set.base = s;
          set.variants.push_back({permutation_label(id), s});
          out.push_back({std::move(set), std::move(m)});
        }
      },
      [&](const VariantSet&, const Meta& m, const ComparisonResult& r) {
        if (r.is_tie()) {
          report.skip("tie");
          return;
        }
        const auto perm = parse_permutation(r.winner);
        const std::size_t pos =
            static_cast<std::size_t>(std::find(perm.begin(), perm.end(), m.longest) - perm.begin());
        if (pos == m.canonical_slot) {
          report.skip("same_position");
          return;
        }
        const bool earlier = pos < m.canonical_slot;
        (earlier ? long_first : short_first) += 1;
        report.records.rows.push_back({m.id, role_name(m.role), m.size, m.canonical_slot + 1,
                                       pos + 1,
                                       earlier ? "long_precedes_short" : "short_precedes_long"});
      });
  report.summary["long_precedes_short"] = long_first;
  report.summary["short_precedes_long"] = short_first;
  report.tests.push_back(sign_test_named("sign_test long vs short", long_first, short_first));
  return report;
}

// --- topicalization ----------------------------------------------------------

ExperimentReport run_topicalization_claim_i(std::span<const Sentence> corpus, const Judge& judge,
                                            std::span<const CaseRole> canonical_order) {
  ExperimentReport report = start_report("topic-i", judge.options());
  report.config["canonical_order"] = nlohmann::json::array();
  for (CaseRole r : canonical_order) report.config["canonical_order"].push_back(to_string(r));
  const std::size_t m = canonical_order.size();
  std::vector<std::vector<std::uint64_t>> n(m, std::vector<std::uint64_t>(m, 0));
  std::uint64_t decided = 0, ties = 0;
  run_blocks<std::vector<std::size_t>>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<std::vector<std::size_t>>>& out) {
        VariantSet set;
        set.base = s;
        std::vector<std::size_t> present;
        for (std::size_t r = 0; r < m; ++r) {
          if (s.find_role(canonical_order[r]).size() != 1) continue;
          try {
            set.variants.push_back(
                {role_name(canonical_order[r]), topicalize(s, canonical_order[r])});
            present.push_back(r);
          } catch (const Error& e) {
            report.skip(error_code_name(e.code()));
          }
        }
        if (present.size() < 2) {
          report.skip("fewer_than_two_candidates");
          return;
        }
        out.push_back({std::move(set), std::move(present)});
      },
      [&](const VariantSet&, const std::vector<std::size_t>& present, const ComparisonResult& r) {
        if (r.is_tie()) {
          ++ties;
          return;
        }
        ++decided;
        std::size_t a = m;
        for (std::size_t k : present)
          if (role_name(canonical_order[k]) == r.winner) a = k;
        for (std::size_t b : present)
          if (b != a) ++n[a][b];
      });
  report.records.columns = {"a", "b", "n_a_given_b", "n_b_given_a", "t"};
  std::vector<double> xs, ys;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto t = rate(n[a][b], n[b][a]);
      report.records.rows.push_back(
          {role_name(canonical_order[a]), role_name(canonical_order[b]), n[a][b], n[b][a], num(t)});
      report.summary["t"][role_name(canonical_order[a]) + "|" + role_name(canonical_order[b])] =
          num(t);
      if (a < b && t) {
        xs.push_back(*t);
        ys.push_back(1.0 - *t);
      }
    }
  NamedTest test{"paired_t_test t(a|b) vs t(b|a), a canonically first", std::nullopt, ""};
  if (xs.size() < 2) {
    test.note = "fewer than two case pairs with decisions";
  } else {
    try {
      test.result = paired_t_test(xs, ys);
    } catch (const Error& e) {
      test.note = std::string(error_code_name(e.code()));
    }
  }
  report.tests.push_back(std::move(test));
  report.summary["n_decided"] = decided;
  report.summary["n_tie"] = ties;
  return report;
}

ExperimentReport run_topicalization_claim_ii(std::span<const Sentence> corpus, const Judge& judge,
                                             std::span<const VerbRecord> records) {
  ExperimentReport report = start_report("topic-ii", judge.options());
  struct Tally {
    std::uint64_t acc = 0, dat = 0, tie = 0;
  };
  std::map<std::string, Tally> tallies;
  run_blocks<std::string>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<std::string>>& out) {
        if (!s.verb_lemma) {
          report.skip("no_verb_lemma");
          return;
        }
        if (object_frame(s) != ObjectFrame::kBoth) {
          report.skip("no_double_object");
          return;
        }
        VariantSet set;
        set.base = s;
        set.variants.push_back({"ACC", topicalize(s, CaseRole::kAcc)});
        set.variants.push_back({"DAT", topicalize(s, CaseRole::kDat)});
        out.push_back({std::move(set), *s.verb_lemma});
      },
      [&](const VariantSet&, const std::string& verb, const ComparisonResult& r) {
        Tally& t = tallies[verb];
        if (r.is_tie())
          ++t.tie;
        else if (r.winner == "ACC")
          ++t.acc;
        else
          ++t.dat;
      });
  std::map<std::string, std::optional<double>> r_acc_dat;
  for (const auto& r : records) r_acc_dat[r.verb_lemma] = r.r_acc_dat();
  report.records.columns = {"verb", "n_acc_topic", "n_dat_topic", "n_tie", "acc_topic_rate",
                            "r_acc_dat"};
  std::vector<double> xs, ys;
  for (const auto& [verb, t] : tallies) {
    const auto topic = rate(t.acc, t.dat);
    auto it = r_acc_dat.find(verb);
    const std::optional<double> base = it == r_acc_dat.end() ? std::nullopt : it->second;
    report.records.rows.push_back({verb, t.acc, t.dat, t.tie, num(topic), num(base)});
    if (topic && base) {
      xs.push_back(*base);
      ys.push_back(*topic);
    }
  }
  if (xs.size() < 2)
    throw Error(ErrorCode::kEmptyEval, "fewer than two verbs have both rates defined");
  add_pearson_summary(report, "pearson", xs, ys);
  report.plots.push_back({"topic-ii", "ACC topicalization rate vs ACC-DAT rate per verb",
                          "ACC-DAT rate", "ACC-over-DAT topicalization rate", xs, ys, true});
  return report;
}

ExperimentReport run_adverbial_particles(std::span<const Sentence> corpus, const Judge& judge,
                                         std::span<const std::string> particles,
                                         std::span<const CaseRole> roles) {
  ExperimentReport report = start_report("adverbial-particles", judge.options());
  report.config["particles"] = std::vector<std::string>(particles.begin(), particles.end());
  report.config["roles"] = nlohmann::json::array();
  for (CaseRole r : roles) report.config["roles"].push_back(to_string(r));
  enum class Kind { kMove, kBaseline, kShift };
  struct Meta {
    Kind kind = Kind::kMove;
    std::size_t particle = 0;
    CaseRole role = CaseRole::kOther;
    std::string verb;
  };
  struct Cell {
    std::uint64_t moved = 0, non_moved = 0, tie = 0;
  };
  std::map<std::pair<std::size_t, CaseRole>, Cell> cells;
  // (verb, target role, particle index or npos for no particle) -> (target first, other first)
  std::map<std::tuple<std::string, CaseRole, std::size_t>, std::array<std::uint64_t, 2>> shift;
  constexpr std::size_t kNoParticle = static_cast<std::size_t>(-1);
  const std::array<CaseRole, 2> targets = {CaseRole::kAcc, CaseRole::kDat};

  run_blocks<Meta>(
      corpus, judge, report,
      [&](const Sentence& s, std::vector<Item<Meta>>& out) {
        for (CaseRole role : roles) {
          const auto found = s.find_role(role);
          if (found.size() != 1) continue;
          for (std::size_t p = 0; p < particles.size(); ++p) {
            if (found.front() == 0) {
              report.skip("already_initial");
              continue;
            }
            try {
              VariantSet set;
              set.base = s;
              const std::vector<std::string> allowed(particles.begin(), particles.end());
              set.variants.push_back(
                  {"non_moved", substitute_adverbial_particle(s, role, particles[p], false,
                                                              ParticleRules::standard(), allowed)});
              set.variants.push_back(
                  {"moved", substitute_adverbial_particle(s, role, particles[p], true,
                                                          ParticleRules::standard(), allowed)});
              out.push_back({std::move(set), {Kind::kMove, p, role, ""}});
            } catch (const Error& e) {
              report.skip(error_code_name(e.code()));
            }
          }
        }
        if (!s.verb_lemma || object_frame(s) != ObjectFrame::kBoth) return;
        try {
          out.push_back({double_object_set(s), {Kind::kBaseline, kNoParticle, CaseRole::kOther,
                                                *s.verb_lemma}});
        } catch (const Error& e) {
          report.skip(error_code_name(e.code()));
          return;
        }
        for (CaseRole target : targets)
          for (std::size_t p = 0; p < particles.size(); ++p) {
            try {
              const std::vector<std::string> allowed(particles.begin(), particles.end());
              const Sentence sub = substitute_adverbial_particle(
                  s, target, particles[p], false, ParticleRules::standard(), allowed);
              out.push_back({double_object_set(sub), {Kind::kShift, p, target, *s.verb_lemma}});
            } catch (const Error& e) {
              report.skip(error_code_name(e.code()));
            }
          }
      },
      [&](const VariantSet&, const Meta& m, const ComparisonResult& r) {
        if (m.kind == Kind::kMove) {
          Cell& c = cells[{m.particle, m.role}];
          if (r.is_tie())
            ++c.tie;
          else if (r.winner == "moved")
            ++c.moved;
          else
            ++c.non_moved;
          return;
        }
        if (r.is_tie()) return;
        const bool acc_first = r.winner == kAccDat;
        const std::vector<CaseRole> which =
            m.kind == Kind::kBaseline ? std::vector<CaseRole>(targets.begin(), targets.end())
                                      : std::vector<CaseRole>{m.role};
        for (CaseRole target : which) {
          const bool target_first = (target == CaseRole::kAcc) == acc_first;
          auto& s = shift[{m.verb, target, m.kind == Kind::kBaseline ? kNoParticle : m.particle}];
          ++s[target_first ? 0 : 1];
        }
      });

  report.records.columns = {"particle", "role", "wins_moved", "wins_non_moved", "ties", "rate"};
  std::map<std::size_t, std::vector<double>> by_particle;
  std::map<CaseRole, std::vector<double>> by_role;
  for (std::size_t p = 0; p < particles.size(); ++p)
    for (CaseRole role : roles) {
      const Cell c = cells.count({p, role}) ? cells.at({p, role}) : Cell{};
      const auto r = rate(c.moved, c.non_moved);
      report.records.rows.push_back(
          {particles[p], role_name(role), c.moved, c.non_moved, c.tie, num(r)});
      if (r) {
        by_particle[p].push_back(*r);
        by_role[role].push_back(*r);
      }
    }
  auto mean = [](const std::vector<double>& v) {
    return v.empty() ? nlohmann::json()
                     : nlohmann::json(std::accumulate(v.begin(), v.end(), 0.0) / v.size());
  };
  for (std::size_t p = 0; p < particles.size(); ++p)
    report.summary["particle_mean"][particles[p]] = mean(by_particle[p]);
  for (CaseRole role : roles) report.summary["role_mean"][role_name(role)] = mean(by_role[role]);

  Table shift_table;
  shift_table.columns = {"verb",   "target",     "particle", "baseline_target_first",
                         "baseline_n", "target_first_rate", "n"};
  std::set<std::string> verbs;
  for (const auto& [key, _] : shift) verbs.insert(std::get<0>(key));
  for (const auto& verb : verbs)
    for (CaseRole target : targets) {
      auto base_it = shift.find({verb, target, kNoParticle});
      const std::array<std::uint64_t, 2> base =
          base_it == shift.end() ? std::array<std::uint64_t, 2>{0, 0} : base_it->second;
      for (std::size_t p = 0; p < particles.size(); ++p) {
        auto it = shift.find({verb, target, p});
        const std::array<std::uint64_t, 2> with =
            it == shift.end() ? std::array<std::uint64_t, 2>{0, 0} : it->second;
        shift_table.rows.push_back({verb, role_name(target), particles[p],
                                    num(rate(base[0], base[1])), base[0] + base[1],
                                    num(rate(with[0], with[1])), with[0] + with[1]});
      }
    }
  report.extra["shift"] = std::move(shift_table);
  return report;
}

// --- human agreement ---------------------------------------------------------

ExperimentReport run_human_agreement(std::span<const PreferencePair> pairs, const Judge& judge) {
  if (judge.mode() == Mode::kCount)
    throw Error(ErrorCode::kInvalidArgument,
                "human-agreement compares two given orders and has no count mode");
  ExperimentReport report = start_report("human-agreement", judge.options());
  std::vector<VariantSet> sets;
  std::vector<const PreferencePair*> used;
  for (const auto& p : pairs) {
    if (!p.gold) {
      report.skip("no_gold");
      continue;
    }
    VariantSet set;
    set.base = p.order1;
    set.variants.push_back({"order1", p.order1});
    set.variants.push_back({"order2", p.order2});
    sets.push_back(std::move(set));
    used.push_back(&p);
  }
  if (sets.empty()) throw Error(ErrorCode::kEmptyEval, "no preference pair has a gold label");
  const auto decisions = judge.decide(sets);
  report.records.columns = {"id", "gold", "lm", "agree"};
  std::vector<double> lm, gold;
  std::uint64_t ties = 0, agree = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& r = *decisions[i];
    const std::string g = *used[i]->gold == PreferenceLabel::kPrefer1 ? "order1" : "order2";
    if (r.is_tie()) {
      ++ties;
      report.records.rows.push_back({used[i]->id, g, std::string(kTieLabel), nullptr});
      continue;
    }
    const bool ok = r.winner == g;
    agree += ok;
    lm.push_back(r.winner == "order1" ? 1.0 : 0.0);
    gold.push_back(g == "order1" ? 1.0 : 0.0);
    report.records.rows.push_back({used[i]->id, g, r.winner, ok});
  }
  report.summary["n_gold"] = sets.size();
  report.summary["n_tie"] = ties;
  report.summary["agreement"] =
      lm.empty() ? nlohmann::json() : nlohmann::json(static_cast<double>(agree) / lm.size());
  add_pearson_summary(report, "phi", lm, gold);
  return report;
}

}  // namespace gojun
