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

// Correlations, hypothesis tests and co-occurrence association measures.
// All functions are pure. Accumulations run in long double.

#ifndef GOJUN_STATS_HPP_
#define GOJUN_STATS_HPP_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gojun/corpus.hpp"

namespace gojun {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  // Sample sizes, e.g. "n=10" or "n1=4,n2=6".
  std::string n;
  // Degrees of freedom for t tests; NaN otherwise.
  double df = std::numeric_limits<double>::quiet_NaN();
};

nlohmann::json to_json(const TestResult& result);

// Throws INVALID_ARGUMENT on length mismatch or fewer than two points, and
// DEGENERATE_VARIANCE when either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);
// Spearman's rho: Pearson on average ranks.
double rank_correlation(std::span<const double> xs, std::span<const double> ys);
// 1-based fractional ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

inline constexpr std::size_t kRankSumExactLimit = 12;

// Mann-Whitney U of xs (U = R_x - n_x(n_x+1)/2) with a two-sided p. Exact by
// enumerating every split when |xs|+|ys| <= 12, otherwise the normal
// approximation with tie-corrected variance and continuity correction.
TestResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys);
// Always enumerates; exposed for testing. Limited to 20 observations.
TestResult wilcoxon_rank_sum_exact(std::span<const double> xs, std::span<const double> ys);
TestResult wilcoxon_rank_sum_normal(std::span<const double> xs, std::span<const double> ys);

// Exact two-sided binomial sign test, p = min(1, 2 P(X >= max)).
TestResult sign_test(std::uint64_t n_pos, std::uint64_t n_neg);

TestResult paired_t_test(std::span<const double> xs, std::span<const double> ys);

TestResult two_proportion_z_test(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2,
                                 std::uint64_t n2);

double normal_cdf(double x);
// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided(double t, double df);

// Ordinary least squares fit y = slope * x + intercept.
std::pair<double, double> least_squares(std::span<const double> xs, std::span<const double> ys);

// Joint counts of (argument head noun, verb) events.
class CooccurrenceTable {
 public:
  void add(const std::string& noun, const std::string& verb, std::uint64_t count = 1);

  // One event per argument chunk (TOP, TIM, LOC, NOM, DAT, ACC) of every
  // sentence with a verb lemma; the noun is the chunk stem.
  static CooccurrenceTable from_corpus(std::span<const Sentence> corpus);
  // Lines of noun<TAB>verb<TAB>count.
  static CooccurrenceTable load_tsv(const std::filesystem::path& path);

  std::uint64_t joint(const std::string& noun, const std::string& verb) const;
  std::uint64_t noun_count(const std::string& noun) const;
  std::uint64_t verb_count(const std::string& verb) const;
  std::uint64_t total() const { return total_; }

  // Throws INVARIANT_VIOLATION if a joint count exceeds its marginals.
  void validate() const;

 private:
  std::map<std::pair<std::string, std::string>, std::uint64_t> joint_;
  std::map<std::string, std::uint64_t> noun_;
  std::map<std::string, std::uint64_t> verb_;
  std::uint64_t total_ = 0;
};

// PMI / -log p(n, v) from maximum-likelihood probabilities. Throws ZERO_JOINT.
double npmi(const CooccurrenceTable& table, const std::string& noun, const std::string& verb);
double npmi_from_counts(std::uint64_t joint, std::uint64_t noun, std::uint64_t verb,
                        std::uint64_t total);
double delta_npmi(const CooccurrenceTable& table, const std::string& noun_dat,
                  const std::string& noun_acc, const std::string& verb);

}  // namespace gojun

#endif  // GOJUN_STATS_HPP_
