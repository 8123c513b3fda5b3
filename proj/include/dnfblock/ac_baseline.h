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

// Attribute Clustering: a non-adaptive token blocking baseline that groups
// edge labels by value similarity, and its rewriting as a DNF scheme.

#ifndef DNFBLOCK_AC_BASELINE_H_
#define DNFBLOCK_AC_BASELINE_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dnfblock/executor.h"
#include "dnfblock/graph.h"
#include "dnfblock/scheme.h"

namespace dnfblock {

// Edge labels of one cluster, per graph. In one-graph mode both lists hold
// the same labels.
struct EdgeLabelCluster {
  std::size_t id = 0;
  std::vector<std::string> labels1;
  std::vector<std::string> labels2;

  bool operator==(const EdgeLabelCluster&) const = default;
};

struct AcOptions {
  double sim_threshold = 0.5;
  // Put every label that links to nothing into one catch-all cluster
  // instead of a singleton each.
  bool glue_unlinked = false;
};

using TokenBag = std::map<std::string, std::size_t>;

// Lowercased alphanumeric tokens of every target label reached over `label`.
TokenBag EdgeLabelTokens(const DataGraph& g, EdgeLabelId label);

// Cosine similarity of raw token counts; 0 when either bag is empty.
double Cosine(const TokenBag& a, const TokenBag& b);

// Links labels whose token bags reach options.sim_threshold (across the two
// graphs, or within the single graph) and returns the connected components
// ordered by their smallest label. Throws kInvalidArgument for a threshold
// outside [0, 1].
std::vector<EdgeLabelCluster> ClusterEdgeLabels(const DataGraph& g1,
                                                const DataGraph& g2,
                                                const AcOptions& options = {});

// Key (cluster, token): a node holds it when an edge labeled inside the
// cluster reaches a node whose label contains the token. Pairs share a
// key; oversized blocks are purged as in the executor.
CandidateSet AcCandidates(const DataGraph& g1, const DataGraph& g2,
                          const std::vector<EdgeLabelCluster>& clusters,
                          std::size_t purge_cap = 1000, unsigned threads = 0);

struct AcScheme {
  CompositeScheme scheme;
  // No cluster spans both sides: the DNF would be empty.
  bool degenerate = false;
};

// One TokenizeString predicate per cluster present on both sides, over the
// cluster's unit label sequences; a single member without attribution gate
// whose DNF is the disjunction of those predicates.
AcScheme AcAsDnf(const std::vector<EdgeLabelCluster>& clusters,
                 const DataGraph& g1, const DataGraph& g2);

}  // namespace dnfblock

#endif  // DNFBLOCK_AC_BASELINE_H_
