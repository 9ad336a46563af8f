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

// Times serial against OpenMP batch scoring on a synthetic corpus and checks
// that both produce identical scores.
//
//   bench_scoring [--sentences N] [--order K] [--workers W] [--repeats R]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gojun/corpus.hpp"
#include "gojun/kernels.hpp"
#include "gojun/ngram.hpp"
#include "gojun/scorer.hpp"
#include "gojun/synth.hpp"

namespace {

template <typename F>
double best_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel scoring benchmark"};
  std::size_t sentences = 20000;
  int order = 5;
  int workers = gojun::available_workers();
  int repeats = 3;
  app.add_option("--sentences", sentences)->check(CLI::PositiveNumber);
  app.add_option("--order", order)->check(CLI::Range(1, gojun::kMaxOrder));
  app.add_option("--workers", workers)->check(CLI::PositiveNumber);
  app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const auto corpus = gojun::generate_corpus(gojun::GrammarSpec::standard(0.9, 1), sentences);
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& s : corpus) texts.push_back(gojun::render_text(s));

  gojun::NGramConfig config;
  config.order = order;
  gojun::NGramModel fwd = gojun::train_ngram(texts, config);
  config.direction = gojun::Direction::kBackward;
  gojun::NGramModel bwd = gojun::train_ngram(texts, config);
  const auto scorer = gojun::BidirectionalScorer::from_models(std::move(fwd), std::move(bwd));

  std::vector<gojun::ScorePair> serial;
  std::vector<gojun::ScorePair> parallel;
  const double t_serial =
      best_seconds(repeats, [&] { serial = gojun::score_texts_serial(scorer, texts); });
  const double t_parallel =
      best_seconds(repeats, [&] { parallel = gojun::score_texts_parallel(scorer, texts, workers); });

  const bool same = serial == parallel;
  std::printf("texts=%zu order=%d workers=%d\n", texts.size(), order, workers);
  std::printf("serial    %.4f s\n", t_serial);
  std::printf("parallel  %.4f s  speedup %.2fx\n", t_parallel, t_serial / t_parallel);
  std::printf("identical %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
