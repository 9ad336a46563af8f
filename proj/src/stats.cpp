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

#include "gojun/stats.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "gojun/error.hpp"
#include "gojun/text.hpp"

namespace gojun {

namespace {

using Real = long double;

void check_paired(std::span<const double> xs, std::span<const double> ys, const char* what) {
  if (xs.size() != ys.size())
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": samples differ in length");
  if (xs.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": needs at least two points");
}

Real mean_of(std::span<const double> v) {
  Real s = 0;
  for (double x : v) s += x;
  return s / static_cast<Real>(v.size());
}

std::string sizes(std::size_t n1, std::size_t n2) {
  return "n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2);
}

}  // namespace

nlohmann::json to_json(const TestResult& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["statistic"] = std::isfinite(r.statistic) ? nlohmann::json(r.statistic) : nlohmann::json();
  j["p_value"] = r.p_value;
  j["n"] = r.n;
  if (!std::isnan(r.df)) j["df"] = r.df;
  return j;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_paired(xs, ys, "pearson");
  const Real mx = mean_of(xs), my = mean_of(ys);
  Real sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0)
    throw Error(ErrorCode::kDegenerateVariance, "pearson: a sample has zero variance");
  const Real r = sxy / std::sqrt(sxx * syy);
  return static_cast<double>(std::clamp<Real>(r, -1, 1));
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double rank_correlation(std::span<const double> xs, std::span<const double> ys) {
  check_paired(xs, ys, "rank_correlation");
  const auto rx = average_ranks(xs), ry = average_ranks(ys);
  return pearson(rx, ry);
}

namespace {

struct Pooled {
  std::vector<double> ranks;  // ranks of xs followed by ranks of ys
  std::size_t n1 = 0, n2 = 0;
};

Pooled pool(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty())
    throw Error(ErrorCode::kInvalidArgument, "rank-sum test needs two non-empty samples");
  std::vector<double> all(xs.begin(), xs.end());
  all.insert(all.end(), ys.begin(), ys.end());
  for (double v : all)
    if (std::isnan(v)) throw Error(ErrorCode::kInvalidArgument, "rank-sum test got NaN");
  return {average_ranks(all), xs.size(), ys.size()};
}

double u_statistic(const Pooled& p) {
  Real r1 = 0;
  for (std::size_t i = 0; i < p.n1; ++i) r1 += p.ranks[i];
  return static_cast<double>(r1 - static_cast<Real>(p.n1) * (p.n1 + 1) / 2);
}

}  // namespace

TestResult wilcoxon_rank_sum_exact(std::span<const double> xs, std::span<const double> ys) {
  const Pooled p = pool(xs, ys);
  const std::size_t n = p.n1 + p.n2;
  if (n > 20) throw Error(ErrorCode::kInvalidArgument, "exact rank-sum limited to 20 values");
  // Doubled ranks are integers, so every comparison below is exact.
  std::vector<std::int64_t> r2(n);
  for (std::size_t i = 0; i < n; ++i) r2[i] = std::llround(2 * p.ranks[i]);
  const std::int64_t centre = static_cast<std::int64_t>(p.n1 * (n + 1));
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < p.n1; ++i) observed += r2[i];
  const std::int64_t dev = std::llabs(observed - centre);
  std::uint64_t extreme = 0, total = 0;
  // Every n1-subset of n positions, in Gosper order.
  const std::uint32_t last = 1u << n;
  for (std::uint32_t mask = (1u << p.n1) - 1; mask < last;) {
    std::int64_t s = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) s += r2[std::countr_zero(m)];
    ++total;
    if (std::llabs(s - centre) >= dev) ++extreme;
    const std::uint32_t c = mask & -mask, r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  TestResult t;
  t.statistic = u_statistic(p);
  t.p_value = std::min(1.0, static_cast<double>(extreme) / static_cast<double>(total));
  t.method = "wilcoxon_rank_sum_exact";
  t.n = sizes(p.n1, p.n2);
  return t;
}

TestResult wilcoxon_rank_sum_normal(std::span<const double> xs, std::span<const double> ys) {
  const Pooled p = pool(xs, ys);
  const Real n1 = p.n1, n2 = p.n2, n = n1 + n2;
  std::vector<double> sorted = p.ranks;
  std::sort(sorted.begin(), sorted.end());
  Real ties = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const Real t = static_cast<Real>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const Real var = n1 * n2 / 12 * ((n + 1) - (n > 1 ? ties / (n * (n - 1)) : 0));
  TestResult t;
  t.statistic = u_statistic(p);
  t.method = "wilcoxon_rank_sum_normal";
  t.n = sizes(p.n1, p.n2);
  if (var <= 0) {
    t.p_value = 1.0;
    return t;
  }
  const Real excess = std::max<Real>(0, std::fabs(t.statistic - n1 * n2 / 2) - 0.5L);
  const Real z = excess / std::sqrt(var);
  t.p_value = std::min(1.0L, std::erfc(z / std::sqrt(2.0L)));
  return t;
}

TestResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() + ys.size() <= kRankSumExactLimit) return wilcoxon_rank_sum_exact(xs, ys);
  return wilcoxon_rank_sum_normal(xs, ys);
}

TestResult sign_test(std::uint64_t n_pos, std::uint64_t n_neg) {
  const std::uint64_t n = n_pos + n_neg;
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sign test needs at least one sign");
  const std::uint64_t m = std::max(n_pos, n_neg);
  double p;
  if (n <= 62) {
    // C(n, k) for k = n, n-1, ..., m, built downward from C(n, n) = 1.
    std::uint64_t c = 1, tail = 1;
    for (std::uint64_t k = n; k > m; --k) {
      c = c / (n - k + 1) * k + c % (n - k + 1) * k / (n - k + 1);
      tail += c;
    }
    p = std::ldexp(static_cast<double>(tail), 1 - static_cast<int>(n));
  } else {
    const Real ln2 = std::log(2.0L);
    const Real lgn = std::lgamma(static_cast<Real>(n) + 1);
    auto log_term = [&](std::uint64_t k) {
      return lgn - std::lgamma(static_cast<Real>(k) + 1) -
             std::lgamma(static_cast<Real>(n - k) + 1) - static_cast<Real>(n) * ln2;
    };
    const Real top = log_term(m);
    Real acc = 0;
    for (std::uint64_t k = m; k <= n; ++k) {
      const Real d = log_term(k) - top;
      if (d < -80) break;
      acc += std::exp(d);
    }
    p = static_cast<double>(std::exp(top + std::log(acc) + ln2));
  }
  TestResult t;
  t.statistic = static_cast<double>(n_pos);
  t.p_value = std::min(1.0, p);
  t.method = "sign_test_exact";
  t.n = "n_pos=" + std::to_string(n_pos) + ",n_neg=" + std::to_string(n_neg);
  return t;
}

TestResult paired_t_test(std::span<const double> xs, std::span<const double> ys) {
  check_paired(xs, ys, "paired_t_test");
  const std::size_t n = xs.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = xs[i] - ys[i];
  const Real md = mean_of(d);
  Real ss = 0;
  for (double v : d) ss += (v - md) * (v - md);
  if (ss == 0)
    throw Error(ErrorCode::kDegenerateVariance, "paired_t_test: differences have zero variance");
  const Real sd = std::sqrt(ss / static_cast<Real>(n - 1));
  const Real tstat = md / (sd / std::sqrt(static_cast<Real>(n)));
  TestResult t;
  t.statistic = static_cast<double>(tstat);
  t.df = static_cast<double>(n - 1);
  t.p_value = student_t_two_sided(t.statistic, t.df);
  t.method = "paired_t_test";
  t.n = "n=" + std::to_string(n);
  return t;
}

TestResult two_proportion_z_test(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2,
                                 std::uint64_t n2) {
  if (n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2)
    throw Error(ErrorCode::kInvalidArgument, "two_proportion_z_test: need 0 <= k <= n, n >= 1");
  const Real p1 = static_cast<Real>(k1) / n1, p2 = static_cast<Real>(k2) / n2;
  const Real pooled = static_cast<Real>(k1 + k2) / static_cast<Real>(n1 + n2);
  if (pooled == 0 || pooled == 1)
    throw Error(ErrorCode::kDegenerateVariance,
                "two_proportion_z_test: pooled proportion is " + format_fixed(pooled, 1));
  const Real se =
      std::sqrt(pooled * (1 - pooled) * (1.0L / static_cast<Real>(n1) + 1.0L / n2));
  const Real z = (p1 - p2) / se;
  TestResult t;
  t.statistic = static_cast<double>(z);
  t.p_value = std::min(1.0L, std::erfc(std::fabs(z) / std::sqrt(2.0L)));
  t.method = "two_proportion_z_test";
  t.n = sizes(n1, n2);
  return t;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Continued fraction for I_x(a, b) (modified Lentz).
Real beta_cf(Real a, Real b, Real x) {
  constexpr Real kTiny = 1e-4000L;
  constexpr Real kEps = 1e-19L;
  const Real qab = a + b, qap = a + 1, qam = a - 1;
  Real c = 1, d = 1 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1 / d;
  Real h = d;
  for (int m = 1; m <= 10000; ++m) {
    const Real m2 = 2 * m;
    Real aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const Real del = d * c;
    h *= del;
    if (std::fabs(del - 1) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0) || !(x >= 0 && x <= 1))
    throw Error(ErrorCode::kInvalidArgument, "incomplete_beta: need a, b > 0 and 0 <= x <= 1");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const Real A = a, B = b, X = x;
  const Real front = std::exp(std::lgamma(A + B) - std::lgamma(A) - std::lgamma(B) +
                              A * std::log(X) + B * std::log1p(-X));
  if (X < (A + 1) / (A + B + 2)) return static_cast<double>(front * beta_cf(A, B, X) / A);
  return static_cast<double>(1 - front * beta_cf(B, A, 1 - X) / B);
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0)) throw Error(ErrorCode::kInvalidArgument, "student_t: df must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  // I_{df/(df+t^2)}(df/2, 1/2), or its complement when t^2 is small.
  if (t2 < df) return 1.0 - incomplete_beta(0.5, df / 2, t2 / (df + t2));
  return incomplete_beta(df / 2, 0.5, df / (df + t2));
}

double student_t_cdf(double t, double df) {
  const double tail = student_t_two_sided(t, df) / 2;
  return t < 0 ? tail : 1.0 - tail;
}

std::pair<double, double> least_squares(std::span<const double> xs, std::span<const double> ys) {
  check_paired(xs, ys, "least_squares");
  const Real mx = mean_of(xs), my = mean_of(ys);
  Real sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw Error(ErrorCode::kDegenerateVariance, "least_squares: constant x");
  const Real slope = sxy / sxx;
  return {static_cast<double>(slope), static_cast<double>(my - slope * mx)};
}

// --- co-occurrence -----------------------------------------------------------

void CooccurrenceTable::add(const std::string& noun, const std::string& verb,
                            std::uint64_t count) {
  if (count == 0) return;
  joint_[{noun, verb}] += count;
  noun_[noun] += count;
  verb_[verb] += count;
  total_ += count;
}

CooccurrenceTable CooccurrenceTable::from_corpus(std::span<const Sentence> corpus) {
  CooccurrenceTable t;
  for (const Sentence& s : corpus) {
    if (!s.verb_lemma) continue;
    for (const Chunk& c : s.chunks) {
      switch (c.case_role) {
        case CaseRole::kTop:
        case CaseRole::kTim:
        case CaseRole::kLoc:
        case CaseRole::kNom:
        case CaseRole::kDat:
        case CaseRole::kAcc:
          t.add(c.stem(), *s.verb_lemma);
          break;
        default:
          break;
      }
    }
  }
  return t;
}

CooccurrenceTable CooccurrenceTable::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  CooccurrenceTable t;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cols = split(body, '\t');
    std::uint64_t count = 0;
    const auto& c = cols.size() == 3 ? cols[2] : std::string();
    const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
    if (cols.size() != 3 || c.empty() || ec != std::errc() || ptr != c.data() + c.size())
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(lineno) +
                                         ": expected noun<TAB>verb<TAB>count");
    t.add(cols[0], cols[1], count);
  }
  t.validate();
  return t;
}

std::uint64_t CooccurrenceTable::joint(const std::string& noun, const std::string& verb) const {
  auto it = joint_.find({noun, verb});
  return it == joint_.end() ? 0 : it->second;
}

std::uint64_t CooccurrenceTable::noun_count(const std::string& noun) const {
  auto it = noun_.find(noun);
  return it == noun_.end() ? 0 : it->second;
}

std::uint64_t CooccurrenceTable::verb_count(const std::string& verb) const {
  auto it = verb_.find(verb);
  return it == verb_.end() ? 0 : it->second;
}

void CooccurrenceTable::validate() const {
  for (const auto& [key, c] : joint_) {
    if (c > std::min(noun_count(key.first), verb_count(key.second)))
      throw Error(ErrorCode::kInvariant, "joint count exceeds a marginal for (" + key.first +
                                             ", " + key.second + ")");
  }
  for (const auto& [noun, c] : noun_)
    if (c > total_) throw Error(ErrorCode::kInvariant, "noun count exceeds total: " + noun);
}

double npmi_from_counts(std::uint64_t joint, std::uint64_t noun, std::uint64_t verb,
                        std::uint64_t total) {
  if (joint == 0) throw Error(ErrorCode::kZeroJoint, "joint count is zero");
  if (joint > std::min(noun, verb) || std::max(noun, verb) > total)
    throw Error(ErrorCode::kInvariant, "co-occurrence counts are inconsistent");
  if (joint == total) return 1.0;  // p(n,v) = p(n) = p(v) = 1
  const Real N = total;
  const Real log_joint = std::log(joint / N);
  const Real pmi = log_joint - std::log(noun / N) - std::log(verb / N);
  return static_cast<double>(pmi / -log_joint);
}

double npmi(const CooccurrenceTable& table, const std::string& noun, const std::string& verb) {
  const auto j = table.joint(noun, verb);
  if (j == 0) throw Error(ErrorCode::kZeroJoint, "no co-occurrence of " + noun + " and " + verb);
  return npmi_from_counts(j, table.noun_count(noun), table.verb_count(verb), table.total());
}

double delta_npmi(const CooccurrenceTable& table, const std::string& noun_dat,
                  const std::string& noun_acc, const std::string& verb) {
  return npmi(table, noun_dat, verb) - npmi(table, noun_acc, verb);
}

}  // namespace gojun
