// Copyright 2026 The Authors.
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

// Trail-sensitive predicates, the predicate universe, and attribution
// relations.

#ifndef DNFBLOCK_PREDICATES_H_
#define DNFBLOCK_PREDICATES_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnfblock/extractors.h"
#include "dnfblock/graph.h"
#include "json.hpp"

namespace dnfblock {

// Thresholded Jaccard with threshold 0: true iff the two sets share an
// element. Only this relation is supported.
enum class SetRelation { kOverlap };

// (relation, f1, f2, S1, S2). Side 1 features are the union of f1 over
// every sequence in S1, likewise for side 2.
struct Predicate {
  SetRelation relation = SetRelation::kOverlap;
  Feo feo1;
  Feo feo2;
  // Sorted, duplicate free, non-empty. May hold the empty sequence.
  std::vector<LabelSequence> seqs1;
  std::vector<LabelSequence> seqs2;

  auto operator<=>(const Predicate&) const = default;

  bool symmetric() const { return feo1 == feo2 && seqs1 == seqs2; }
  const Feo& feo(int side) const { return side == 1 ? feo1 : feo2; }
  const std::vector<LabelSequence>& seqs(int side) const {
    return side == 1 ? seqs1 : seqs2;
  }

  // 16 hex digits; a content hash of the canonical JSON form.
  std::string Id() const;
  std::string ToString() const;

  // {relation:"overlap", feo:{shallow, deep_chain}, seqs1, seqs2} with
  // feo1/feo2 instead of feo when the two sides differ.
  nlohmann::json ToJson() const;
  static Predicate FromJson(const nlohmann::json& j);
};

// Sorts and deduplicates both sequence sets. Throws kInvalidArgument when
// either set is empty.
void Normalize(Predicate& p);

// Set of (attribute, attribute) pairs, sorted. An empty relation never
// holds when evaluated directly.
struct AttributionRelation {
  std::vector<std::pair<std::string, std::string>> pairs;

  auto operator<=>(const AttributionRelation&) const = default;
  bool empty() const { return pairs.empty(); }
  bool Contains(const std::string& a1, const std::string& a2) const;
};

AttributionRelation MakeRelation(
    std::vector<std::pair<std::string, std::string>> pairs);

// Side `side` (1 or 2) feature set of node v under predicate p.
FeatureSet PredicateFeatures(const DataGraph& g, const Predicate& p, int side,
                             NodeId v, const ExtractOptions& options = {});

// One-graph evaluation is recognized by g1 and g2 being the same object; in
// that case v1 == v2 is rejected with kInvalidArgument.
bool EvalPredicate(const DataGraph& g1, const DataGraph& g2,
                   const Predicate& p, NodeId v1, NodeId v2,
                   const ExtractOptions& options = {});

bool EvalAttribution(const AttributionRelation& relation, const DataGraph& g1,
                     const DataGraph& g2, NodeId v1, NodeId v2);

// Distinct label sequences of length 1..max_length spelled by some trail of
// g, computed tier by tier. Sorted by (length, lexicographic).
std::vector<LabelSequence> ObservedSequences(const DataGraph& g,
                                             std::size_t max_length,
                                             std::size_t cap = 50000);

struct UniverseOptions {
  std::size_t max_trail_len = 2;
  std::size_t max_size = 50000;
};

// One symmetric predicate per (FEO, sequence): f1 = f2 and S1 = S2 = {s},
// where s is the empty sequence or a sequence observed in both graphs.
std::vector<Predicate> BuildUniverse(const DataGraph& g1, const DataGraph& g2,
                                     std::span<const Feo> feos,
                                     const UniverseOptions& options = {});

nlohmann::json FeoToJson(const Feo& feo);
Feo FeoFromJson(const nlohmann::json& j);

}  // namespace dnfblock

#endif  // DNFBLOCK_PREDICATES_H_
