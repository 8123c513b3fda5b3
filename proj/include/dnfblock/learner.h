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

// Learning composite DNF schemes from labeled training pairs: attribution
// relations first, then one greedy set-cover DNF per relation.

#ifndef DNFBLOCK_LEARNER_H_
#define DNFBLOCK_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dnfblock/graph.h"
#include "dnfblock/predicates.h"
#include "dnfblock/scheme.h"

namespace dnfblock {

struct TrainingSet {
  std::vector<NodePair> positives;
  std::vector<NodePair> negatives;
};

// Sorts and deduplicates both lists (one-graph pairs become (min, max)).
// Throws kInvalidArgument for unknown nodes, self pairs in one-graph mode,
// or a pair labeled both ways.
TrainingSet NormalizeTrainingSet(TrainingSet train, const DataGraph& g1,
                                 const DataGraph& g2);

struct LearnerConfig {
  double epsilon = 0.9;  // minimum expected pairs completeness, (0, 1]
  std::size_t max_term_size = 2;
  std::size_t max_terms = 10;
  // Decision variant: is the covered negative fraction at most eta?
  std::optional<double> eta;
  std::size_t min_support = 2;  // for attribute pairs in step one
  unsigned threads = 0;         // 0 = all cores
  std::size_t max_candidates = 2'000'000;

  // Throws kInvalidArgument.
  void Validate() const;
};

// Groups the attribute pairs realized by positives (support >= min_support)
// into relations: two pairs share a relation when some positive realizes
// both. Positives realizing no kept pair fall to a trailing empty relation.
std::vector<AttributionRelation> DeriveAttributionRelations(
    const DataGraph& g1, const DataGraph& g2, const TrainingSet& train,
    std::size_t min_support = 2);

// Predicate x training pair truth table.
class CoverageMatrix {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  CoverageMatrix() = default;
  CoverageMatrix(std::vector<Bits> positive_rows,
                 std::vector<Bits> negative_rows);

  std::size_t num_predicates() const { return positives_.size(); }
  std::size_t num_positives() const { return num_positives_; }
  std::size_t num_negatives() const { return num_negatives_; }

  const Bits& positives(PredicateIndex p) const { return positives_[p]; }
  const Bits& negatives(PredicateIndex p) const { return negatives_[p]; }

 private:
  std::vector<Bits> positives_;
  std::vector<Bits> negatives_;
  std::size_t num_positives_ = 0;
  std::size_t num_negatives_ = 0;
};

// Exact EvalPredicate value for every (predicate, training pair); parallel
// over predicates.
CoverageMatrix BuildCoverage(const DataGraph& g1, const DataGraph& g2,
                             std::span<const Predicate> universe,
                             const TrainingSet& train,
                             const ExtractOptions& options = {},
                             unsigned threads = 0);

struct MemberResult {
  AttributeAwareScheme scheme;
  bool epsilon_unmet = false;
  std::size_t slice_positives = 0;
  std::size_t positives_covered = 0;
  std::size_t negatives_covered = 0;
  // "ratio" (cost-effectiveness greedy) or "laplace" (smoothed fallback).
  std::string strategy;

  double training_pc() const {
    return slice_positives == 0
               ? 0.0
               : static_cast<double>(positives_covered) / slice_positives;
  }
};

// ceil(epsilon * positives), robust to floating-point noise.
std::size_t CoverageTarget(double epsilon, std::size_t positives);

// Greedy partial set cover over candidate terms (conjunctions of up to
// max_term_size predicates whose positive coverage on the slice reaches
// target / max_terms). Terms are added by lowest marginal negatives per
// newly covered positive, counting at most the positives still needed,
// until the target, max_terms, or no progress. The greedy runs once per
// target 1..|P| and the member is the run reaching the epsilon target with
// the fewest negatives (then fewest terms, most positives), which makes
// training coverage monotone in epsilon. When no run reaches it, the widest
// run and the Laplace-smoothed score (new positives + 1) / (new negatives +
// 1) compete on coverage. Terms index into the full universe of `coverage`.
MemberResult LearnMember(const CoverageMatrix& coverage,
                         std::span<const std::size_t> slice_positives,
                         const AttributionRelation& attribution,
                         const LearnerConfig& config);

struct LearnResult {
  CompositeScheme scheme;            // canonical, compact universe
  std::vector<MemberResult> members;  // schemes index into scheme.universe
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t positives_covered = 0;
  std::size_t negatives_covered = 0;
  std::size_t universe_size = 0;
  std::optional<bool> decision;  // set when eta is configured

  double training_pc() const {
    return positives == 0 ? 0.0
                          : static_cast<double>(positives_covered) / positives;
  }
  double negative_fraction() const {
    return negatives == 0 ? 0.0
                          : static_cast<double>(negatives_covered) / negatives;
  }
  bool epsilon_unmet() const;
};

// Full pipeline; one-graph mode when g1 and g2 are the same object.
LearnResult LearnComposite(const DataGraph& g1, const DataGraph& g2,
                           std::span<const Predicate> universe,
                           const TrainingSet& train,
                           const LearnerConfig& config,
                           const ExtractOptions& options = {});

}  // namespace dnfblock

#endif  // DNFBLOCK_LEARNER_H_
