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

#include "gojun/ngram.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "gojun/error.hpp"
#include "gojun/text.hpp"

namespace gojun {

std::string_view to_string(Unit unit) { return unit == Unit::kChar ? "char" : "pretokenized"; }

std::string_view to_string(Direction direction) {
  return direction == Direction::kForward ? "fwd" : "bwd";
}

Unit parse_unit(std::string_view text) {
  if (text == "char") return Unit::kChar;
  if (text == "pretokenized" || text == "subword") return Unit::kPretokenized;
  throw Error(ErrorCode::kInvalidArgument, "unknown unit '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
  if (text == "fwd" || text == "forward") return Direction::kForward;
  if (text == "bwd" || text == "backward") return Direction::kBackward;
  throw Error(ErrorCode::kInvalidArgument, "unknown direction '" + std::string(text) + "'");
}

std::vector<std::string> split_units(std::string_view text, Unit unit) {
  return unit == Unit::kChar ? utf8_chars(text) : split_whitespace(text);
}

std::uint64_t NGramModel::ContextCounts::count(UnitId unit) const {
  auto it = std::lower_bound(next.begin(), next.end(), unit,
                             [](const auto& e, UnitId u) { return e.first < u; });
  return it != next.end() && it->first == unit ? it->second : 0;
}

std::size_t NGramModel::ContextHash::operator()(const Context& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ c.size;
  for (std::size_t i = 0; i < c.size; ++i) {
    h ^= c.ids[i];
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

NGramModel::Context NGramModel::make_context(std::span<const UnitId> ids) {
  Context c;
  c.size = static_cast<std::uint8_t>(ids.size());
  std::copy(ids.begin(), ids.end(), c.ids.begin());
  return c;
}

void NGramModel::index_vocabulary() {
  vocab_index_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i)
    vocab_index_.emplace(vocab_[i], static_cast<UnitId>(i));
}

NGramModel::UnitId NGramModel::id(std::string_view unit) const {
  auto it = vocab_index_.find(std::string(unit));
  if (it == vocab_index_.end() || it->second == kBos || it->second == kEos) return kUnk;
  return it->second;
}

std::vector<NGramModel::UnitId> NGramModel::encode(std::string_view text) const {
  std::vector<UnitId> ids;
  for (const auto& u : split_units(text, config_.unit)) ids.push_back(id(u));
  if (config_.direction == Direction::kBackward) std::reverse(ids.begin(), ids.end());
  return ids;
}

const NGramModel::ContextCounts* NGramModel::find(std::span<const UnitId> context) const {
  if (context.size() > static_cast<std::size_t>(kMaxOrder - 1)) return nullptr;
  auto it = table_.find(make_context(context));
  return it == table_.end() ? nullptr : &it->second;
}

double NGramModel::prob(std::span<const UnitId> context, UnitId unit) const {
  const std::size_t max_len = static_cast<std::size_t>(config_.order - 1);
  if (context.size() > max_len) context = context.subspan(context.size() - max_len);
  const double d = config_.discount;
  double p = 1.0 / static_cast<double>(prediction_size());
  // Lowest order first: the empty context, then ever longer suffixes.
  for (std::size_t k = 0; k <= context.size(); ++k) {
    const ContextCounts* cc = find(context.subspan(context.size() - k));
    if (!cc || cc->total == 0) continue;
    const double total = static_cast<double>(cc->total);
    const double c = static_cast<double>(cc->count(unit));
    p = std::max(c - d, 0.0) / total + d * static_cast<double>(cc->next.size()) / total * p;
  }
  return p;
}

double NGramModel::ml_prob(std::span<const UnitId> context, UnitId unit) const {
  const std::size_t max_len = static_cast<std::size_t>(config_.order - 1);
  if (context.size() > max_len) context = context.subspan(context.size() - max_len);
  const ContextCounts* cc = find(context);
  if (!cc || cc->total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(cc->count(unit)) / static_cast<double>(cc->total);
}

namespace {

// BOS^(n-1) ids EOS
std::vector<NGramModel::UnitId> padded(std::span<const NGramModel::UnitId> ids, int order) {
  std::vector<NGramModel::UnitId> seq(static_cast<std::size_t>(order - 1), NGramModel::kBos);
  seq.insert(seq.end(), ids.begin(), ids.end());
  seq.push_back(NGramModel::kEos);
  return seq;
}

template <typename ProbFn>
double sum_logprob(std::span<const NGramModel::UnitId> ids, int order, ProbFn&& prob) {
  const auto seq = padded(ids, order);
  const std::size_t ctx = static_cast<std::size_t>(order - 1);
  double total = 0.0;
  for (std::size_t t = ctx; t < seq.size(); ++t)
    total += std::log(prob(std::span(seq).subspan(t - ctx, ctx), seq[t]));
  return total;
}

}  // namespace

double NGramModel::logprob_ids(std::span<const UnitId> ids) const {
  return sum_logprob(ids, config_.order,
                     [this](std::span<const UnitId> h, UnitId u) { return prob(h, u); });
}

std::vector<NGramModel::Context> NGramModel::contexts() const {
  std::vector<Context> out;
  out.reserve(table_.size());
  for (const auto& [ctx, counts] : table_)
    if (counts.total > 0) out.push_back(ctx);
  std::sort(out.begin(), out.end(), [](const Context& a, const Context& b) {
    return std::lexicographical_compare(a.ids.begin(), a.ids.begin() + a.size, b.ids.begin(),
                                        b.ids.begin() + b.size);
  });
  return out;
}

bool NGramModel::operator==(const NGramModel& o) const {
  return config_ == o.config_ && vocab_ == o.vocab_ && table_ == o.table_;
}

NGramModel train_ngram(std::span<const std::string> lines, const NGramConfig& config) {
  if (lines.empty()) throw Error(ErrorCode::kInvalidArgument, "training corpus is empty");
  if (config.order < 1) throw Error(ErrorCode::kInvalidArgument, "order must be >= 1");
  if (config.order > kMaxOrder)
    throw Error(ErrorCode::kInvalidArgument,
                "order must be <= " + std::to_string(kMaxOrder));
  if (!(config.discount > 0.0 && config.discount < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "discount must lie in (0, 1)");
  if (config.unk_threshold < 0)
    throw Error(ErrorCode::kInvalidArgument, "unk_threshold must be >= 0");

  NGramModel model;
  model.config_ = config;

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(lines.size());
  std::map<std::string, std::uint64_t> freq;
  for (const auto& line : lines) {
    tokenized.push_back(split_units(line, config.unit));
    for (const auto& u : tokenized.back()) ++freq[u];
  }
  model.vocab_ = {std::string(NGramModel::kBosSymbol), std::string(NGramModel::kEosSymbol),
                  std::string(NGramModel::kUnkSymbol)};
  for (const auto& [unit, count] : freq) {
    if (count <= static_cast<std::uint64_t>(config.unk_threshold)) continue;
    if (unit == NGramModel::kBosSymbol || unit == NGramModel::kEosSymbol ||
        unit == NGramModel::kUnkSymbol)
      continue;
    model.vocab_.push_back(unit);
  }
  model.index_vocabulary();

  std::unordered_map<NGramModel::Context, std::map<NGramModel::UnitId, std::uint64_t>,
                     NGramModel::ContextHash>
      raw;
  const std::size_t ctx = static_cast<std::size_t>(config.order - 1);
  for (auto& units : tokenized) {
    std::vector<NGramModel::UnitId> ids;
    ids.reserve(units.size());
    for (const auto& u : units) ids.push_back(model.id(u));
    if (config.direction == Direction::kBackward) std::reverse(ids.begin(), ids.end());
    const auto seq = padded(ids, config.order);
    for (std::size_t t = ctx; t < seq.size(); ++t)
      for (std::size_t k = 0; k <= ctx; ++k)
        ++raw[NGramModel::make_context(std::span(seq).subspan(t - k, k))][seq[t]];
  }
  for (auto& [c, next] : raw) {
    NGramModel::ContextCounts cc;
    for (const auto& [u, n] : next) {
      cc.next.emplace_back(u, n);
      cc.total += n;
    }
    model.table_.emplace(c, std::move(cc));
  }
  return model;
}

double logprob(const NGramModel& model, std::string_view text) {
  return model.logprob_ids(model.encode(text));
}

double logprob_unsmoothed(const NGramModel& model, std::string_view text) {
  const auto ids = model.encode(text);
  return sum_logprob(ids, model.order(), [&](std::span<const NGramModel::UnitId> h,
                                             NGramModel::UnitId u) {
    const double p = model.ml_prob(h, u);
    return std::isnan(p) ? 0.0 : p;
  });
}

// --- persistence -------------------------------------------------------------

nlohmann::json NGramModel::to_json() const {
  nlohmann::json counts = nlohmann::json::array();
  for (const Context& c : contexts()) {
    const ContextCounts& cc = table_.at(c);
    nlohmann::json next = nlohmann::json::array();
    for (const auto& [u, n] : cc.next) next.push_back({u, n});
    counts.push_back({{"context", std::vector<UnitId>(c.ids.begin(), c.ids.begin() + c.size)},
                      {"next", std::move(next)}});
  }
  return {{"gojun_ngram", 1},
          {"order", config_.order},
          {"unit", to_string(config_.unit)},
          {"direction", to_string(config_.direction)},
          {"discount", config_.discount},
          {"unk_threshold", config_.unk_threshold},
          {"vocabulary", vocab_},
          {"counts", std::move(counts)}};
}

NGramModel NGramModel::from_json(const nlohmann::json& v) {
  NGramModel m;
  try {
    if (!v.is_object() || !v.contains("gojun_ngram"))
      throw Error(ErrorCode::kParse, "missing gojun_ngram header");
    if (v.at("gojun_ngram").get<int>() != 1)
      throw Error(ErrorCode::kParse, "unsupported model version " + v.at("gojun_ngram").dump());
    m.config_.order = v.at("order").get<int>();
    m.config_.unit = parse_unit(v.at("unit").get<std::string>());
    m.config_.direction = parse_direction(v.at("direction").get<std::string>());
    m.config_.discount = v.at("discount").get<double>();
    m.config_.unk_threshold = v.at("unk_threshold").get<int>();
    m.vocab_ = v.at("vocabulary").get<std::vector<std::string>>();
    if (m.config_.order < 1 || m.config_.order > kMaxOrder)
      throw Error(ErrorCode::kParse, "order out of range");
    if (m.vocab_.size() < 3) throw Error(ErrorCode::kParse, "vocabulary lacks reserved symbols");
    m.index_vocabulary();
    for (const auto& entry : v.at("counts")) {
      const auto ids = entry.at("context").get<std::vector<UnitId>>();
      if (ids.size() >= static_cast<std::size_t>(m.config_.order))
        throw Error(ErrorCode::kParse, "context longer than order - 1");
      ContextCounts cc;
      for (const auto& pair : entry.at("next")) {
        const auto u = pair.at(0).get<UnitId>();
        const auto n = pair.at(1).get<std::uint64_t>();
        if (u >= m.vocab_.size()) throw Error(ErrorCode::kParse, "unit id out of range");
        cc.next.emplace_back(u, n);
        cc.total += n;
      }
      std::sort(cc.next.begin(), cc.next.end());
      m.table_.emplace(make_context(ids), std::move(cc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return m;
}

void save_model(const NGramModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << model.to_json().dump() << '\n';
}

NGramModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  nlohmann::json v;
  try {
    v = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return NGramModel::from_json(v);
}

}  // namespace gojun
