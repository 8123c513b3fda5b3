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

#include "dnfblock/ac_baseline.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "dnfblock/error.h"
#include "dnfblock/extractors.h"
#include "dnfblock/parallel.h"

namespace dnfblock {

namespace {

const Feo& TokenFeo() {
  static const Feo feo{"TokenizeString", {}};
  return feo;
}

struct LabelNode {
  int side;
  EdgeLabelId label;
};

// Token keys per node for one side: (cluster, token) -> sorted nodes.
std::map<std::pair<std::size_t, std::string>, std::vector<NodeId>> AcIndex(
    const DataGraph& g, const std::vector<std::optional<std::size_t>>& cluster_of) {
  std::map<std::pair<std::size_t, std::string>, std::vector<NodeId>> index;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (const OutEdge& e : g.out_edges(v)) {
      const auto& c = cluster_of[e.label];
      if (!c) continue;
      for (auto& token : ApplyFeo(TokenFeo(), g.node_label(e.target))) {
        auto& list = index[{*c, std::move(token)}];
        if (list.empty() || list.back() != v) list.push_back(v);
      }
    }
  }
  return index;
}

}  // namespace

TokenBag EdgeLabelTokens(const DataGraph& g, EdgeLabelId label) {
  TokenBag bag;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (const OutEdge& e : g.out_edges(v, label)) {
      FeatureSet tokens = ApplyFeo(Feo{"TokenizeAlnum", {}},
                                   g.node_label(e.target));
      for (auto& t : tokens) {
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) {
          return static_cast<char>(std::tolower(c));
        });
      }
      Canonicalize(tokens);
      for (const auto& t : tokens) ++bag[t];
    }
  }
  return bag;
}

double Cosine(const TokenBag& a, const TokenBag& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [t, n] : a) {
    na += static_cast<double>(n) * n;
    auto it = b.find(t);
    if (it != b.end()) dot += static_cast<double>(n) * it->second;
  }
  for (const auto& [t, n] : b) nb += static_cast<double>(n) * n;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<EdgeLabelCluster> ClusterEdgeLabels(const DataGraph& g1,
                                                const DataGraph& g2,
                                                const AcOptions& options) {
  if (!(options.sim_threshold >= 0.0 && options.sim_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity threshold must be in [0, 1]");
  }
  const bool one_graph = &g1 == &g2;
  std::vector<LabelNode> nodes;
  std::vector<TokenBag> bags;
  for (EdgeLabelId l = 0; l < g1.num_edge_labels(); ++l) {
    nodes.push_back({1, l});
    bags.push_back(EdgeLabelTokens(g1, l));
  }
  const std::size_t n1 = nodes.size();
  if (!one_graph) {
    for (EdgeLabelId l = 0; l < g2.num_edge_labels(); ++l) {
      nodes.push_back({2, l});
      bags.push_back(EdgeLabelTokens(g2, l));
    }
  }

  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> linked(nodes.size(), false);
  auto consider = [&](std::size_t i, std::size_t j) {
    // Float noise must not flip an exact threshold.
    if (Cosine(bags[i], bags[j]) + 1e-12 >= options.sim_threshold) {
      linked[i] = linked[j] = true;
      parent[find(i)] = find(j);
    }
  };
  if (one_graph) {
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = i + 1; j < n1; ++j) consider(i, j);
    }
  } else {
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = n1; j < nodes.size(); ++j) consider(i, j);
    }
  }

  auto name = [&](const LabelNode& n) -> const std::string& {
    return (n.side == 1 ? g1 : g2).edge_label_name(n.label);
  };
  std::map<std::size_t, EdgeLabelCluster> components;
  EdgeLabelCluster glue;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EdgeLabelCluster& c = options.glue_unlinked && !linked[i]
                              ? glue
                              : components[find(i)];
    (nodes[i].side == 1 ? c.labels1 : c.labels2).push_back(name(nodes[i]));
    if (one_graph) c.labels2.push_back(name(nodes[i]));
  }
  std::vector<EdgeLabelCluster> clusters;
  for (auto& [root, c] : components) clusters.push_back(std::move(c));
  for (auto& c : clusters) {
    std::sort(c.labels1.begin(), c.labels1.end());
    std::sort(c.labels2.begin(), c.labels2.end());
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const EdgeLabelCluster& a, const EdgeLabelCluster& b) {
              return std::tie(a.labels1, a.labels2) <
                     std::tie(b.labels1, b.labels2);
            });
  if (!glue.labels1.empty() || !glue.labels2.empty()) {
    std::sort(glue.labels1.begin(), glue.labels1.end());
    std::sort(glue.labels2.begin(), glue.labels2.end());
    clusters.push_back(std::move(glue));
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) clusters[i].id = i;
  return clusters;
}

CandidateSet AcCandidates(const DataGraph& g1, const DataGraph& g2,
                          const std::vector<EdgeLabelCluster>& clusters,
                          std::size_t purge_cap, unsigned threads) {
  const bool one_graph = &g1 == &g2;
  auto assign = [&](const DataGraph& g, int side) {
    std::vector<std::optional<std::size_t>> of(g.num_edge_labels());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (const auto& l : side == 1 ? clusters[c].labels1
                                     : clusters[c].labels2) {
        if (auto id = g.FindEdgeLabel(l)) of[*id] = c;
      }
    }
    return of;
  };
  const auto index1 = AcIndex(g1, assign(g1, 1));
  const auto index2 = one_graph ? index1 : AcIndex(g2, assign(g2, 2));

  CandidateSet result;
  result.mode = one_graph ? Scenario::kOneGraph : Scenario::kTwoGraph;
  std::vector<std::pair<const std::vector<NodeId>*, const std::vector<NodeId>*>>
      joins;
  for (const auto& [key, list1] : index1) {
    auto it = index2.find(key);
    if (it == index2.end()) continue;
    if (BlockPairCount(list1, it->second, one_graph) > purge_cap) {
      ++result.keys_purged;
      continue;
    }
    joins.emplace_back(&list1, &it->second);
  }
  result.keys_joined = joins.size();
  const unsigned workers = ResolveThreads(threads);
  std::vector<std::vector<NodePair>> local(workers);
  ParallelFor(joins.size(), workers, [&](std::size_t begin, std::size_t end,
                                         unsigned w) {
    for (std::size_t j = begin; j < end; ++j) {
      for (NodeId a : *joins[j].first) {
        for (NodeId b : *joins[j].second) {
          if (one_graph && a == b) continue;
          local[w].push_back(one_graph ? Canonical({a, b}) : NodePair{a, b});
        }
      }
    }
  });
  for (auto& part : local) {
    result.pairs.insert(result.pairs.end(), part.begin(), part.end());
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()),
                     result.pairs.end());
  return result;
}

AcScheme AcAsDnf(const std::vector<EdgeLabelCluster>& clusters,
                 const DataGraph& g1, const DataGraph& g2) {
  AcScheme out;
  out.scheme.scenario = &g1 == &g2 ? Scenario::kOneGraph : Scenario::kTwoGraph;
  AttributeAwareScheme member;
  for (const auto& c : clusters) {
    if (c.labels1.empty() || c.labels2.empty()) continue;
    Predicate p;
    p.feo1 = p.feo2 = TokenFeo();
    for (const auto& l : c.labels1) p.seqs1.push_back({l});
    for (const auto& l : c.labels2) p.seqs2.push_back({l});
    Normalize(p);
    member.dnf.push_back(
        MakeTerm({static_cast<PredicateIndex>(out.scheme.universe.size())}));
    out.scheme.universe.push_back(std::move(p));
  }
  if (member.dnf.empty()) {
    out.degenerate = true;
    return out;
  }
  out.scheme.members.push_back(std::move(member));
  return out;
}

}  // namespace dnfblock
