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

// Word-order transforms over chunk dependency trees. Every transform moves
// whole subtrees (a chunk together with its descendants) and never changes
// which chunk governs which; positions are renumbered accordingly.

#ifndef GOJUN_TRANSFORM_HPP_
#define GOJUN_TRANSFORM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gojun/corpus.hpp"

namespace gojun {

enum class RewriteAction { kDeleteThenAppend, kKeepThenAppend };

struct ParticleRewriteRule {
  std::string original_particle;
  RewriteAction action = RewriteAction::kDeleteThenAppend;
  std::string appended_particle;
};

// Case-particle rules applied when an adverbial particle is attached:
// が and を are dropped, に and で are kept (に+は -> には, で+は -> では).
class ParticleRules {
 public:
  static ParticleRules standard();

  void add(std::string original, RewriteAction action);
  bool supports(std::string_view original) const;
  // The rule that attaches `appended` to `original`. Throws
  // UNSUPPORTED_PARTICLE for particles outside the table, INVALID_ARGUMENT
  // for an empty `appended`.
  ParticleRewriteRule rule_for(std::string_view original, std::string_view appended) const;

 private:
  std::vector<std::pair<std::string, RewriteAction>> entries_;
};

std::string apply_rule(const ParticleRewriteRule& rule);

inline constexpr std::string_view kTopicParticle = "は";
std::vector<std::string> default_adverbial_particles();  // は, こそ, も, だけ

struct Variant {
  std::string label;
  Sentence sentence;
};

struct VariantSet {
  Sentence base;
  std::vector<Variant> variants;
};

// Throws INVARIANT_VIOLATION on duplicate labels.
void validate(const VariantSet& set);

// Chunk `index` and all its descendants, ascending.
std::vector<std::size_t> subtree(const Sentence& s, std::size_t index);

// Position p of the result holds chunk order[p] of `s`; heads are remapped.
Sentence reorder(const Sentence& s, std::span<const std::size_t> order);

// Rearranges the children of `site` (each with its descendants) so that the
// j-th child slot receives child perm[j]. perm indexes s.children(site).
Sentence permute_children(const Sentence& s, std::size_t site, std::span<const std::size_t> perm);

// Picks a chunk with >= 2 children uniformly, then a uniformly random
// non-identity permutation of its children. Throws NO_SCRAMBLE_SITE.
Sentence scramble(const Sentence& s, std::uint64_t seed);

// One-line notation, 1-based: identity of 3 children is "123". Above nine
// children the entries are comma separated.
std::string permutation_label(std::span<const std::size_t> perm);

inline constexpr std::uint64_t kDefaultOrderCap = 5040;

// Throws TooManyOrders when children! > cap.
void check_order_cap(std::size_t children, std::uint64_t cap = kDefaultOrderCap);

// All k! child orderings at `site` in lexicographic permutation order,
// including the original. Throws TooManyOrders when k! > cap.
VariantSet enumerate_orders(const Sentence& s, std::size_t site,
                            std::uint64_t cap = kDefaultOrderCap);

// Exchanges the positions of the unique role_a and role_b chunks, which must
// share a head. Throws ROLE_NOT_UNIQUE.
Sentence swap_cases(const Sentence& s, CaseRole role_a, CaseRole role_b);

// Index of the unique chunk with `role`; throws ROLE_NOT_UNIQUE.
std::size_t unique_role(const Sentence& s, CaseRole role);

// Moves chunk `index` with its descendants to the sentence start. Throws
// NOT_MOVABLE if that would break subtree contiguity or move the ROOT.
Sentence move_to_front(const Sentence& s, std::size_t index);

// Attaches `appended` to the particle of chunk `index` per `rules`.
Sentence rewrite_particle(const Sentence& s, std::size_t index, std::string_view appended,
                          const ParticleRules& rules = ParticleRules::standard());

// Fronts the `role` chunk, attaches は, and relabels it TOP.
Sentence topicalize(const Sentence& s, CaseRole role,
                    const ParticleRules& rules = ParticleRules::standard());

// Attaches an adverbial particle to the `role` chunk; with `moved` the chunk
// is also fronted. The case role is kept.
Sentence substitute_adverbial_particle(
    const Sentence& s, CaseRole role, std::string_view particle, bool moved,
    const ParticleRules& rules = ParticleRules::standard(),
    std::span<const std::string> allowed = {});

}  // namespace gojun

#endif  // GOJUN_TRANSFORM_HPP_
