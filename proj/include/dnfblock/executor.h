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

// Scheme execution: inverted indexing over block keys, block purging, and
// a quadratic reference evaluator.

#ifndef DNFBLOCK_EXECUTOR_H_
#define DNFBLOCK_EXECUTOR_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "dnfblock/graph.h"
#include "dnfblock/scheme.h"

namespace dnfblock {

inline constexpr std::size_t kNoPurge = std::numeric_limits<std::size_t>::max();

// (member, term, one feature per term predicate).
struct BlockKey {
  std::uint32_t member = 0;
  std::uint32_t term = 0;
  std::vector<std::string> features;

  auto operator<=>(const BlockKey&) const = default;

  // Injective byte encoding used as the index key.
  std::string Encode() const;
  static BlockKey Decode(std::string_view bytes);
};

struct IndexOptions {
  ExtractOptions extract;
  // Per node and term; exceeding it is an error naming the node.
  std::size_t max_keys_per_term = 10000;
  unsigned threads = 0;
};

// Posting lists of one side. Lists are sorted and duplicate free.
class BlockIndex {
 public:
  struct Posting {
    std::uint32_t member = 0;
    std::vector<NodeId> nodes;
  };

  int side() const { return side_; }
  std::size_t num_keys() const { return postings_.size(); }
  const std::unordered_map<std::string, Posting>& postings() const {
    return postings_;
  }
  // Null when no node generates the key.
  const std::vector<NodeId>* Find(const BlockKey& key) const;

 private:
  friend BlockIndex IndexGraph(const DataGraph&, const CompositeScheme&, int,
                               const IndexOptions&);
  int side_ = 1;
  std::unordered_map<std::string, Posting> postings_;
};

// Keys of node v for one term; empty when some predicate has no features.
// Throws kLimitExceeded past options.max_keys_per_term.
std::vector<BlockKey> NodeKeys(const DataGraph& g, const CompositeScheme& c,
                               int side, NodeId v, std::uint32_t member,
                               std::uint32_t term,
                               const IndexOptions& options = {});

BlockIndex IndexGraph(const DataGraph& g, const CompositeScheme& c, int side,
                      const IndexOptions& options = {});

// Sorted, duplicate free, no self pairs; one-graph pairs are (min, max).
struct CandidateSet {
  Scenario mode = Scenario::kTwoGraph;
  std::vector<NodePair> pairs;
  std::size_t keys_joined = 0;
  std::size_t keys_purged = 0;

  std::size_t size() const { return pairs.size(); }
  bool contains(NodePair p) const;
};

// Number of pairs a block emits: n(n-1)/2 for the same list on both sides
// of one graph, |list1| * |list2| otherwise.
std::size_t BlockPairCount(const std::vector<NodeId>& list1,
                           const std::vector<NodeId>& list2, bool one_graph);

// Joins the two indexes on shared keys, purging every block whose pair
// count exceeds purge_cap, then applies each member's attribution gate.
// One-graph mode when g1 and g2 are the same object.
CandidateSet GenerateCandidates(const BlockIndex& idx1, const BlockIndex& idx2,
                                const DataGraph& g1, const DataGraph& g2,
                                const CompositeScheme& c,
                                std::size_t purge_cap = 1000,
                                unsigned threads = 0);

// Index both sides and join.
CandidateSet ExecuteScheme(const DataGraph& g1, const DataGraph& g2,
                           const CompositeScheme& c, std::size_t purge_cap,
                           const IndexOptions& options = {});

// Evaluates the scheme on every distinct pair. Quadratic; for verification.
CandidateSet BruteForceCandidates(const DataGraph& g1, const DataGraph& g2,
                                  const CompositeScheme& c,
                                  const ExtractOptions& options = {},
                                  unsigned threads = 0);

}  // namespace dnfblock

#endif  // DNFBLOCK_EXECUTOR_H_
