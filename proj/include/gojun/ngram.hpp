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

// Count-based n-gram language model with interpolated absolute discounting.
//
//   P(u | h) = max(c(h,u) - d, 0) / c(h) + d * N1+(h .) / c(h) * P(u | h')
//
// where h' drops the oldest unit of h, unseen contexts defer entirely to h',
// and the recursion bottoms out in the uniform distribution over the
// predictable units (vocabulary without BOS, EOS included). Sequences are
// padded with n-1 BOS symbols and terminated by EOS. Backward models see
// every unit sequence reversed, both when training and when scoring.

#ifndef GOJUN_NGRAM_HPP_
#define GOJUN_NGRAM_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace gojun {

enum class Unit { kChar, kPretokenized };
enum class Direction { kForward, kBackward };

std::string_view to_string(Unit unit);
std::string_view to_string(Direction direction);  // "fwd" / "bwd"
Unit parse_unit(std::string_view text);            // "char" | "pretokenized"
Direction parse_direction(std::string_view text);  // "fwd" | "bwd"

std::vector<std::string> split_units(std::string_view text, Unit unit);

struct NGramConfig {
  int order = 3;
  Unit unit = Unit::kChar;
  Direction direction = Direction::kForward;
  double discount = 0.75;
  int unk_threshold = 1;

  bool operator==(const NGramConfig&) const = default;
};

inline constexpr int kMaxOrder = 8;

class NGramModel {
 public:
  using UnitId = std::uint32_t;
  static constexpr UnitId kBos = 0;
  static constexpr UnitId kEos = 1;
  static constexpr UnitId kUnk = 2;
  static constexpr std::string_view kBosSymbol = "<s>";
  static constexpr std::string_view kEosSymbol = "</s>";
  static constexpr std::string_view kUnkSymbol = "<unk>";

  // Up to order-1 preceding units, oldest first.
  struct Context {
    std::uint8_t size = 0;
    std::array<UnitId, kMaxOrder - 1> ids{};

    std::span<const UnitId> view() const { return {ids.data(), size}; }
    bool operator==(const Context& o) const {
      return size == o.size && std::equal(ids.begin(), ids.begin() + size, o.ids.begin());
    }
  };

  struct ContextCounts {
    std::uint64_t total = 0;
    // Sorted by unit id.
    std::vector<std::pair<UnitId, std::uint64_t>> next;

    bool operator==(const ContextCounts&) const = default;
    std::uint64_t count(UnitId unit) const;
  };

  const NGramConfig& config() const { return config_; }
  int order() const { return config_.order; }
  Direction direction() const { return config_.direction; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  // Units that can be predicted: vocabulary minus BOS.
  std::size_t prediction_size() const { return vocab_.size() - 1; }

  UnitId id(std::string_view unit) const;
  // Units of `text` mapped to ids, reversed for backward models.
  std::vector<UnitId> encode(std::string_view text) const;

  // Smoothed P(unit | context); `context` holds the preceding ids, oldest
  // first, and is truncated to the last order-1 entries.
  double prob(std::span<const UnitId> context, UnitId unit) const;
  // Unsmoothed c(h,u)/c(h); NaN when the context was never seen.
  double ml_prob(std::span<const UnitId> context, UnitId unit) const;
  // Sum of log P over the encoded units plus EOS, in nats.
  double logprob_ids(std::span<const UnitId> ids) const;

  // Every context with a nonzero count, sorted.
  std::vector<Context> contexts() const;
  const ContextCounts* find(std::span<const UnitId> context) const;

  nlohmann::json to_json() const;
  static NGramModel from_json(const nlohmann::json& value);

  bool operator==(const NGramModel& o) const;

 private:
  friend NGramModel train_ngram(std::span<const std::string> lines, const NGramConfig& config);

  struct ContextHash {
    std::size_t operator()(const Context& c) const noexcept;
  };

  static Context make_context(std::span<const UnitId> ids);
  void index_vocabulary();

  NGramConfig config_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, UnitId> vocab_index_;
  std::unordered_map<Context, ContextCounts, ContextHash> table_;
};

// Throws INVALID_ARGUMENT for an empty corpus or a bad configuration.
NGramModel train_ngram(std::span<const std::string> lines, const NGramConfig& config);

// Smoothed log-probability in nats (<= 0).
double logprob(const NGramModel& model, std::string_view text);
// Same sum with unsmoothed maximum-likelihood factors (-inf on unseen events).
double logprob_unsmoothed(const NGramModel& model, std::string_view text);

void save_model(const NGramModel& model, const std::filesystem::path& path);
NGramModel load_model(const std::filesystem::path& path);

}  // namespace gojun

#endif  // GOJUN_NGRAM_HPP_
