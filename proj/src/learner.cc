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

#include "dnfblock/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "dnfblock/error.h"
#include "dnfblock/parallel.h"

namespace dnfblock {

namespace {

using Bits = CoverageMatrix::Bits;
using AttributePair = std::pair<std::string, std::string>;

void SortUnique(std::vector<NodePair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

// Attribute pairs a positive realizes. One-graph pairs are unordered, so
// both orientations count.
std::set<AttributePair> RealizedPairs(const DataGraph& g1, const DataGraph& g2,
                                      NodePair p) {
  std::set<AttributePair> out;
  for (const auto& a1 : g1.attributes(p.first)) {
    for (const auto& a2 : g2.attributes(p.second)) {
      out.emplace(a1, a2);
      if (&g1 == &g2) out.emplace(a2, a1);
    }
  }
  return out;
}

bool RelationHolds(const AttributionRelation& r, const DataGraph& g1,
                   const DataGraph& g2, NodePair p) {
  if (EvalAttribution(r, g1, g2, p.first, p.second)) return true;
  return &g1 == &g2 && EvalAttribution(r, g1, g2, p.second, p.first);
}

struct Candidate {
  std::vector<PredicateIndex> predicates;
  Bits positives;  // over the slice
  Bits negatives;
  std::size_t count = 0;  // positives.count()
};

struct GreedyRun {
  std::vector<std::size_t> picked;  // candidate indices
  Bits covered_positives;
  Bits covered_negatives;
  bool abandoned = false;

  std::size_t positives() const { return covered_positives.count(); }
  std::size_t negatives() const { return covered_negatives.count(); }
};

enum class Score { kRatio, kLaplace };

// Greedy towards `target` over the candidates reaching `floor` positives.
// Stops early (abandoned) once more than `neg_limit` negatives are covered.
GreedyRun RunGreedy(const std::vector<Candidate>& candidates,
                    std::size_t num_positives, std::size_t num_negatives,
                    std::size_t target, double floor, std::size_t max_terms,
                    Score score,
                    std::size_t neg_limit = std::numeric_limits<std::size_t>::max()) {
  GreedyRun run{{}, Bits(num_positives), Bits(num_negatives)};
  while (run.positives() < target && run.picked.size() < max_terms) {
    const std::size_t needed = target - run.positives();
    std::size_t best = candidates.size();
    std::size_t best_pos = 0;
    std::size_t best_neg = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (static_cast<double>(candidates[c].count) < floor) continue;
      std::size_t new_pos =
          (candidates[c].positives - run.covered_positives).count();
      if (new_pos == 0) continue;
      // Positives beyond the target earn nothing (partial cover).
      if (score == Score::kRatio) new_pos = std::min(new_pos, needed);
      const std::size_t new_neg =
          (candidates[c].negatives - run.covered_negatives).count();
      bool better;
      if (best == candidates.size()) {
        better = true;
      } else if (score == Score::kRatio) {
        // new_neg / new_pos < best_neg / best_pos. Ties go to the smaller
        // step: negatives are shared between terms, so a term paying fewer
        // now can leave later terms free ones.
        const std::size_t lhs = new_neg * best_pos;
        const std::size_t rhs = best_neg * new_pos;
        better = lhs < rhs ||
                 (lhs == rhs && (new_neg < best_neg ||
                                 (new_neg == best_neg && new_pos > best_pos)));
      } else {
        const std::size_t lhs = (new_pos + 1) * (best_neg + 1);
        const std::size_t rhs = (best_pos + 1) * (new_neg + 1);
        better = lhs > rhs;
      }
      if (better) {
        best = c;
        best_pos = new_pos;
        best_neg = new_neg;
      }
    }
    if (best == candidates.size()) break;
    run.picked.push_back(best);
    run.covered_positives |= candidates[best].positives;
    run.covered_negatives |= candidates[best].negatives;
    if (run.negatives() > neg_limit) {
      run.abandoned = true;
      break;
    }
  }
  return run;
}

// Strict order on finished runs: fewer negatives, fewer terms, more
// positives, then the smaller run target.
bool Preferred(const GreedyRun& a, std::size_t a_target, const GreedyRun& b,
               std::size_t b_target) {
  const auto key = [](const GreedyRun& r, std::size_t t) {
    return std::make_tuple(r.negatives(), r.picked.size(), ~r.positives(), t);
  };
  return key(a, a_target) < key(b, b_target);
}

}  // namespace

TrainingSet NormalizeTrainingSet(TrainingSet train, const DataGraph& g1,
                                 const DataGraph& g2) {
  const bool one_graph = &g1 == &g2;
  for (auto* list : {&train.positives, &train.negatives}) {
    for (NodePair& p : *list) {
      if (!g1.contains(p.first) || !g2.contains(p.second)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "training pair references an unknown node");
      }
      if (one_graph) {
        if (p.first == p.second) {
          throw Error(ErrorCode::kInvalidArgument,
                      "training pair '" + g1.external_id(p.first) +
                          "' pairs a node with itself");
        }
        p = Canonical(p);
      }
    }
    SortUnique(*list);
  }
  std::vector<NodePair> both;
  std::set_intersection(train.positives.begin(), train.positives.end(),
                        train.negatives.begin(), train.negatives.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "training pair (" + g1.external_id(both[0].first) + ", " +
                    g2.external_id(both[0].second) +
                    ") is labeled both link and non-link");
  }
  return train;
}

void LearnerConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail("epsilon must be in (0, 1]");
  if (max_term_size < 1) fail("max term size must be at least 1");
  if (max_terms < 1) fail("max terms must be at least 1");
  if (eta && !(*eta >= 0.0 && *eta <= 1.0)) fail("eta must be in [0, 1]");
}

std::vector<AttributionRelation> DeriveAttributionRelations(
    const DataGraph& g1, const DataGraph& g2, const TrainingSet& train,
    std::size_t min_support) {
  if (train.positives.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "deriving attribution relations needs positives");
  }
  std::vector<std::set<AttributePair>> realized;
  std::map<AttributePair, std::size_t> support;
  for (NodePair p : train.positives) {
    realized.push_back(RealizedPairs(g1, g2, p));
    for (const auto& ap : realized.back()) ++support[ap];
  }
  std::map<AttributePair, std::size_t> index;
  for (const auto& [ap, count] : support) {
    if (count >= std::max<std::size_t>(min_support, 1)) {
      index.emplace(ap, index.size());
    }
  }

  std::vector<std::size_t> parent(index.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool needs_bypass = false;
  for (const auto& pairs : realized) {
    std::optional<std::size_t> first;
    for (const auto& ap : pairs) {
      auto it = index.find(ap);
      if (it == index.end()) continue;
      if (!first) {
        first = it->second;
      } else {
        parent[find(it->second)] = find(*first);
      }
    }
    if (!first) needs_bypass = true;
  }

  std::map<std::size_t, std::vector<AttributePair>> components;
  for (const auto& [ap, i] : index) components[find(i)].push_back(ap);
  std::vector<AttributionRelation> relations;
  for (auto& [root, pairs] : components) {
    relations.push_back(MakeRelation(std::move(pairs)));
  }
  std::sort(relations.begin(), relations.end());
  if (needs_bypass) relations.push_back(AttributionRelation{});
  return relations;
}

CoverageMatrix::CoverageMatrix(std::vector<Bits> positive_rows,
                               std::vector<Bits> negative_rows)
    : positives_(std::move(positive_rows)),
      negatives_(std::move(negative_rows)) {
  if (positives_.size() != negatives_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "coverage row count mismatch");
  }
  if (!positives_.empty()) {
    num_positives_ = positives_[0].size();
    num_negatives_ = negatives_[0].size();
  }
}

CoverageMatrix BuildCoverage(const DataGraph& g1, const DataGraph& g2,
                             std::span<const Predicate> universe,
                             const TrainingSet& train,
                             const ExtractOptions& options,
                             unsigned threads) {
  if (universe.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty predicate universe");
  }
  std::vector<Bits> pos_rows(universe.size(), Bits(train.positives.size()));
  std::vector<Bits> neg_rows(universe.size(), Bits(train.negatives.size()));
  const bool one_graph = &g1 == &g2;
  ParallelFor(universe.size(), threads, [&](std::size_t begin,
                                            std::size_t end, unsigned) {
    for (std::size_t p = begin; p < end; ++p) {
      const Predicate& pred = universe[p];
      std::unordered_map<NodeId, FeatureSet> side1;
      std::unordered_map<NodeId, FeatureSet> side2;
      auto features = [&](std::unordered_map<NodeId, FeatureSet>& cache,
                          const DataGraph& g, int side,
                          NodeId v) -> const FeatureSet& {
        auto it = cache.find(v);
        if (it == cache.end()) {
          it = cache.emplace(v, PredicateFeatures(g, pred, side, v, options))
                   .first;
        }
        return it->second;
      };
      auto holds = [&](NodePair pair) {
        if (one_graph && pair.first == pair.second) {
          throw Error(ErrorCode::kInvalidArgument,
                      "one-graph evaluation needs two distinct nodes");
        }
        const FeatureSet& z1 = features(side1, g1, 1, pair.first);
        if (z1.empty()) return false;
        return Intersects(z1, features(side2, g2, 2, pair.second));
      };
      for (std::size_t i = 0; i < train.positives.size(); ++i) {
        if (holds(train.positives[i])) pos_rows[p].set(i);
      }
      for (std::size_t j = 0; j < train.negatives.size(); ++j) {
        if (holds(train.negatives[j])) neg_rows[p].set(j);
      }
    }
  });
  return CoverageMatrix(std::move(pos_rows), std::move(neg_rows));
}

std::size_t CoverageTarget(double epsilon, std::size_t positives) {
  const double exact = epsilon * static_cast<double>(positives);
  const double target = std::ceil(exact - 1e-9 * std::max(1.0, exact));
  return std::min(positives, static_cast<std::size_t>(std::max(0.0, target)));
}

MemberResult LearnMember(const CoverageMatrix& coverage,
                         std::span<const std::size_t> slice_positives,
                         const AttributionRelation& attribution,
                         const LearnerConfig& config) {
  config.Validate();
  if (coverage.num_predicates() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty predicate universe");
  }
  if (slice_positives.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a member needs at least one positive in its slice");
  }
  const std::size_t num_pos = slice_positives.size();
  const std::size_t num_neg = coverage.num_negatives();
  const std::size_t target = CoverageTarget(config.epsilon, num_pos);
  const auto floor_of = [&](std::size_t t) {
    return static_cast<double>(t) / config.max_terms;
  };

  // Size-1 terms with non-zero positive coverage seed the expansion.
  std::vector<Candidate> level;
  for (PredicateIndex p = 0; p < coverage.num_predicates(); ++p) {
    Bits pos(num_pos);
    const Bits& row = coverage.positives(p);
    for (std::size_t i = 0; i < num_pos; ++i) {
      if (row.test(slice_positives[i])) pos.set(i);
    }
    if (pos.none()) continue;
    const std::size_t count = pos.count();
    level.push_back({{p}, std::move(pos), coverage.negatives(p), count});
  }
  const std::vector<Candidate> atoms = level;

  // Every term with some positive coverage; each greedy run applies its
  // own floor.
  std::vector<Candidate> candidates;
  std::size_t above_floor = 0;
  for (std::size_t size = 1; !level.empty(); ++size) {
    for (const Candidate& c : level) {
      above_floor += static_cast<double>(c.count) >= floor_of(target);
      candidates.push_back(c);
    }
    if (above_floor > config.max_candidates) {
      throw Error(ErrorCode::kLimitExceeded,
                  "more than " + std::to_string(config.max_candidates) +
                      " candidate terms");
    }
    if (size == config.max_term_size) break;
    std::vector<Candidate> next;
    for (const Candidate& c : level) {
      for (const Candidate& atom : atoms) {
        if (atom.predicates[0] <= c.predicates.back()) continue;
        Bits pos = c.positives & atom.positives;
        if (pos.none()) continue;
        std::vector<PredicateIndex> preds = c.predicates;
        preds.push_back(atom.predicates[0]);
        const std::size_t count = pos.count();
        next.push_back({std::move(preds), std::move(pos),
                        c.negatives & atom.negatives, count});
      }
      if (next.size() > config.max_candidates) {
        throw Error(ErrorCode::kLimitExceeded,
                    "more than " + std::to_string(config.max_candidates) +
                        " candidate terms");
      }
    }
    level = std::move(next);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.predicates < b.predicates;
            });

  // The ratio greedy depends on its target through the partial-cover cap
  // and the floor. Running it for every target 1..|P| gives a pool that
  // does not depend on epsilon; the answer is the preferred pool member
  // reaching the target, so raising epsilon only shrinks the choice and
  // never lowers coverage. Runs past the best negative count are cut.
  GreedyRun run = RunGreedy(candidates, num_pos, num_neg, target,
                            floor_of(target), config.max_terms, Score::kRatio);
  std::size_t run_target = target;
  bool feasible = run.positives() >= target;
  GreedyRun widest = run;  // most positives, for the unmet case
  std::size_t widest_target = target;
  for (std::size_t t = 1; t <= num_pos; ++t) {
    if (t == target) continue;
    const std::size_t limit =
        feasible ? run.negatives() : std::numeric_limits<std::size_t>::max();
    GreedyRun other = RunGreedy(candidates, num_pos, num_neg, t, floor_of(t),
                                config.max_terms, Score::kRatio, limit);
    if (other.abandoned) continue;
    if (other.positives() >= target &&
        (!feasible || Preferred(other, t, run, run_target))) {
      run = other;
      run_target = t;
      feasible = true;
    }
    if (other.positives() > widest.positives() ||
        (other.positives() == widest.positives() &&
         Preferred(other, t, widest, widest_target))) {
      widest = std::move(other);
      widest_target = t;
    }
  }
  std::string strategy = "ratio";
  if (!feasible) {
    run = std::move(widest);
    GreedyRun fallback =
        RunGreedy(candidates, num_pos, num_neg, target, floor_of(target),
                  config.max_terms, Score::kLaplace);
    const bool better =
        fallback.positives() > run.positives() ||
        (fallback.positives() == run.positives() &&
         fallback.negatives() < run.negatives());
    if (better) {
      run = std::move(fallback);
      strategy = "laplace";
    }
  }

  MemberResult result;
  result.scheme.attribution = attribution;
  for (std::size_t c : run.picked) {
    result.scheme.dnf.push_back(Term{candidates[c].predicates});
  }
  CanonicalizeDnf(result.scheme.dnf);
  result.slice_positives = num_pos;
  result.positives_covered = run.positives();
  result.negatives_covered = run.negatives();
  result.epsilon_unmet = run.positives() < target;
  result.strategy = strategy;
  return result;
}

bool LearnResult::epsilon_unmet() const {
  return std::any_of(members.begin(), members.end(),
                     [](const MemberResult& m) { return m.epsilon_unmet; });
}

LearnResult LearnComposite(const DataGraph& g1, const DataGraph& g2,
                           std::span<const Predicate> universe,
                           const TrainingSet& raw_train,
                           const LearnerConfig& config,
                           const ExtractOptions& options) {
  config.Validate();
  const TrainingSet train = NormalizeTrainingSet(raw_train, g1, g2);
  const auto relations =
      DeriveAttributionRelations(g1, g2, train, config.min_support);
  const CoverageMatrix coverage =
      BuildCoverage(g1, g2, universe, train, options, config.threads);

  // Which non-empty relations each positive satisfies.
  std::vector<std::vector<bool>> satisfies(
      relations.size(), std::vector<bool>(train.positives.size(), false));
  std::vector<bool> any_relation(train.positives.size(), false);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (relations[r].empty()) continue;
    for (std::size_t i = 0; i < train.positives.size(); ++i) {
      if (RelationHolds(relations[r], g1, g2, train.positives[i])) {
        satisfies[r][i] = true;
        any_relation[i] = true;
      }
    }
  }

  LearnResult result;
  result.scheme.scenario =
      &g1 == &g2 ? Scenario::kOneGraph : Scenario::kTwoGraph;
  result.scheme.universe.assign(universe.begin(), universe.end());
  result.universe_size = universe.size();
  for (std::size_t r = 0; r < relations.size(); ++r) {
    std::vector<std::size_t> slice;
    for (std::size_t i = 0; i < train.positives.size(); ++i) {
      const bool in = relations[r].empty() ? !any_relation[i]
                                           : satisfies[r][i];
      if (in) slice.push_back(i);
    }
    if (slice.empty()) continue;
    MemberResult member = LearnMember(coverage, slice, relations[r], config);
    if (member.scheme.dnf.empty()) {
      result.members.push_back(std::move(member));
      continue;
    }
    result.scheme.members.push_back(member.scheme);
    result.members.push_back(std::move(member));
  }
  if (result.scheme.members.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no predicate covers any training positive");
  }

  // Training coverage of the whole composite, attribution gate included.
  auto covered = [&](NodePair pair, auto row_of, std::size_t idx) {
    for (const auto& m : result.scheme.members) {
      if (!m.attribution.empty() && !RelationHolds(m.attribution, g1, g2, pair)) {
        continue;
      }
      for (const Term& t : m.dnf) {
        bool all = true;
        for (PredicateIndex p : t.predicates) {
          if (!row_of(p).test(idx)) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
    }
    return false;
  };
  result.positives = train.positives.size();
  result.negatives = train.negatives.size();
  for (std::size_t i = 0; i < train.positives.size(); ++i) {
    if (covered(train.positives[i],
                [&](PredicateIndex p) -> const Bits& {
                  return coverage.positives(p);
                },
                i)) {
      ++result.positives_covered;
    }
  }
  for (std::size_t j = 0; j < train.negatives.size(); ++j) {
    if (covered(train.negatives[j],
                [&](PredicateIndex p) -> const Bits& {
                  return coverage.negatives(p);
                },
                j)) {
      ++result.negatives_covered;
    }
  }
  if (config.eta) result.decision = result.negative_fraction() <= *config.eta;

  // Compact the universe and renumber the member results to match.
  Canonicalize(result.scheme);
  std::size_t next = 0;
  for (MemberResult& m : result.members) {
    if (!m.scheme.dnf.empty()) m.scheme = result.scheme.members[next++];
  }
  return result;
}

}  // namespace dnfblock
