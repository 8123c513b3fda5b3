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

#include "dnfblock/executor.h"

#include <algorithm>
#include <cstring>

#include "dnfblock/error.h"
#include "dnfblock/parallel.h"

namespace dnfblock {

namespace {

void PutU32(std::string& out, std::uint32_t x) {
  char buf[4];
  std::memcpy(buf, &x, 4);
  out.append(buf, 4);
}

std::uint32_t GetU32(std::string_view& in) {
  if (in.size() < 4) throw Error(ErrorCode::kParse, "truncated block key");
  std::uint32_t x;
  std::memcpy(&x, in.data(), 4);
  in.remove_prefix(4);
  return x;
}

void SortPairs(std::vector<NodePair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

void CheckSameGraph(const DataGraph& g1, const DataGraph& g2,
                    const CompositeScheme& c) {
  if (c.scenario == Scenario::kOneGraph && &g1 != &g2) {
    throw Error(ErrorCode::kInvalidArgument,
                "a one-graph scheme needs the same graph on both sides");
  }
}

}  // namespace

std::string BlockKey::Encode() const {
  std::string out;
  PutU32(out, member);
  PutU32(out, term);
  for (const auto& f : features) {
    PutU32(out, static_cast<std::uint32_t>(f.size()));
    out += f;
  }
  return out;
}

BlockKey BlockKey::Decode(std::string_view bytes) {
  BlockKey key;
  key.member = GetU32(bytes);
  key.term = GetU32(bytes);
  while (!bytes.empty()) {
    const std::uint32_t n = GetU32(bytes);
    if (bytes.size() < n) throw Error(ErrorCode::kParse, "truncated block key");
    key.features.emplace_back(bytes.substr(0, n));
    bytes.remove_prefix(n);
  }
  return key;
}

const std::vector<NodeId>* BlockIndex::Find(const BlockKey& key) const {
  auto it = postings_.find(key.Encode());
  return it == postings_.end() ? nullptr : &it->second.nodes;
}

bool CandidateSet::contains(NodePair p) const {
  if (mode == Scenario::kOneGraph) p = Canonical(p);
  return std::binary_search(pairs.begin(), pairs.end(), p);
}

std::vector<BlockKey> NodeKeys(const DataGraph& g, const CompositeScheme& c,
                               int side, NodeId v, std::uint32_t member,
                               std::uint32_t term,
                               const IndexOptions& options) {
  const Term& t = c.members.at(member).dnf.at(term);
  std::vector<FeatureSet> z;
  std::size_t count = 1;
  for (PredicateIndex p : t.predicates) {
    z.push_back(PredicateFeatures(g, c.universe.at(p), side, v,
                                  options.extract));
    if (z.back().empty()) return {};
    count *= z.back().size();
    if (count > options.max_keys_per_term) {
      throw Error(ErrorCode::kLimitExceeded,
                  "node '" + g.external_id(v) + "' generates more than " +
                      std::to_string(options.max_keys_per_term) +
                      " keys for one term");
    }
  }
  std::vector<BlockKey> keys;
  keys.reserve(count);
  std::vector<std::size_t> at(z.size(), 0);
  while (true) {
    BlockKey key{member, term, {}};
    for (std::size_t i = 0; i < z.size(); ++i) {
      key.features.push_back(z[i][at[i]]);
    }
    keys.push_back(std::move(key));
    std::size_t i = z.size();
    while (i > 0 && ++at[i - 1] == z[i - 1].size()) at[--i] = 0;
    if (i == 0) break;
  }
  return keys;
}

BlockIndex IndexGraph(const DataGraph& g, const CompositeScheme& c, int side,
                      const IndexOptions& options) {
  if (side != 1 && side != 2) {
    throw Error(ErrorCode::kInvalidArgument, "side must be 1 or 2");
  }
  ValidateScheme(c);
  const unsigned workers = ResolveThreads(options.threads);
  std::vector<std::unordered_map<std::string, BlockIndex::Posting>> local(
      workers);
  ParallelFor(g.num_nodes(), workers, [&](std::size_t begin, std::size_t end,
                                          unsigned w) {
    auto& out = local[w];
    for (NodeId v = begin; v < end; ++v) {
      for (std::uint32_t m = 0; m < c.members.size(); ++m) {
        for (std::uint32_t t = 0; t < c.members[m].dnf.size(); ++t) {
          for (const BlockKey& key : NodeKeys(g, c, side, v, m, t, options)) {
            auto& posting = out[key.Encode()];
            posting.member = m;
            posting.nodes.push_back(v);
          }
        }
      }
    }
  });
  BlockIndex index;
  index.side_ = side;
  for (auto& part : local) {
    for (auto& [key, posting] : part) {
      auto& merged = index.postings_[key];
      merged.member = posting.member;
      merged.nodes.insert(merged.nodes.end(), posting.nodes.begin(),
                          posting.nodes.end());
    }
  }
  for (auto& [key, posting] : index.postings_) {
    std::sort(posting.nodes.begin(), posting.nodes.end());
    posting.nodes.erase(std::unique(posting.nodes.begin(), posting.nodes.end()),
                        posting.nodes.end());
  }
  return index;
}

std::size_t BlockPairCount(const std::vector<NodeId>& list1,
                           const std::vector<NodeId>& list2, bool one_graph) {
  if (one_graph && list1 == list2) {
    const std::size_t n = list1.size();
    return n < 2 ? 0 : n * (n - 1) / 2;
  }
  return list1.size() * list2.size();
}

CandidateSet GenerateCandidates(const BlockIndex& idx1, const BlockIndex& idx2,
                                const DataGraph& g1, const DataGraph& g2,
                                const CompositeScheme& c,
                                std::size_t purge_cap, unsigned threads) {
  CheckSameGraph(g1, g2, c);
  if (idx1.side() != 1 || idx2.side() != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected a side 1 and a side 2 index");
  }
  const bool one_graph = &g1 == &g2;
  CandidateSet result;
  result.mode = one_graph ? Scenario::kOneGraph : Scenario::kTwoGraph;

  // Shared keys, sorted so that work splits deterministically.
  struct Join {
    const BlockIndex::Posting* left;
    const std::vector<NodeId>* right;
  };
  std::vector<std::pair<std::string_view, Join>> joins;
  for (const auto& [key, posting] : idx1.postings()) {
    auto it = idx2.postings().find(key);
    if (it == idx2.postings().end()) continue;
    if (BlockPairCount(posting.nodes, it->second.nodes, one_graph) >
        purge_cap) {
      ++result.keys_purged;
      continue;
    }
    joins.push_back({key, {&posting, &it->second.nodes}});
  }
  std::sort(joins.begin(), joins.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  result.keys_joined = joins.size();

  const unsigned workers = ResolveThreads(threads);
  std::vector<std::vector<NodePair>> local(workers);
  ParallelFor(joins.size(), workers, [&](std::size_t begin, std::size_t end,
                                         unsigned w) {
    auto& out = local[w];
    for (std::size_t j = begin; j < end; ++j) {
      const Join& join = joins[j].second;
      const AttributionRelation& gate =
          c.members[join.left->member].attribution;
      for (NodeId a : join.left->nodes) {
        for (NodeId b : *join.right) {
          if (one_graph && a == b) continue;
          if (!gate.empty() && !EvalAttribution(gate, g1, g2, a, b)) continue;
          out.push_back(one_graph ? Canonical({a, b}) : NodePair{a, b});
        }
      }
    }
  });
  for (auto& part : local) {
    result.pairs.insert(result.pairs.end(), part.begin(), part.end());
  }
  SortPairs(result.pairs);
  return result;
}

CandidateSet ExecuteScheme(const DataGraph& g1, const DataGraph& g2,
                           const CompositeScheme& c, std::size_t purge_cap,
                           const IndexOptions& options) {
  CheckSameGraph(g1, g2, c);
  const BlockIndex idx1 = IndexGraph(g1, c, 1, options);
  const BlockIndex idx2 = IndexGraph(g2, c, 2, options);
  return GenerateCandidates(idx1, idx2, g1, g2, c, purge_cap,
                            options.threads);
}

CandidateSet BruteForceCandidates(const DataGraph& g1, const DataGraph& g2,
                                  const CompositeScheme& c,
                                  const ExtractOptions& options,
                                  unsigned threads) {
  CheckSameGraph(g1, g2, c);
  ValidateScheme(c);
  const bool one_graph = &g1 == &g2;
  const std::size_t np = c.universe.size();
  // features[side][p][v]
  std::vector<std::vector<FeatureSet>> features[2];
  for (int side = 1; side <= 2; ++side) {
    const DataGraph& g = side == 1 ? g1 : g2;
    auto& table = features[side - 1];
    table.assign(np, std::vector<FeatureSet>(g.num_nodes()));
    ParallelFor(np, threads, [&](std::size_t begin, std::size_t end,
                                 unsigned) {
      for (std::size_t p = begin; p < end; ++p) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
          table[p][v] = PredicateFeatures(g, c.universe[p], side, v, options);
        }
      }
    });
  }
  auto holds = [&](NodeId a, NodeId b) {
    for (const auto& m : c.members) {
      if (!m.attribution.empty() &&
          !EvalAttribution(m.attribution, g1, g2, a, b)) {
        continue;
      }
      for (const Term& t : m.dnf) {
        bool all = true;
        for (PredicateIndex p : t.predicates) {
          const FeatureSet& z1 = features[0][p][a];
          if (z1.empty() || !Intersects(z1, features[1][p][b])) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
    }
    return false;
  };

  CandidateSet result;
  result.mode = one_graph ? Scenario::kOneGraph : Scenario::kTwoGraph;
  const unsigned workers = ResolveThreads(threads);
  std::vector<std::vector<NodePair>> local(workers);
  ParallelFor(g1.num_nodes(), workers, [&](std::size_t begin, std::size_t end,
                                           unsigned w) {
    for (NodeId a = begin; a < end; ++a) {
      if (one_graph) {
        for (NodeId b = a + 1; b < g2.num_nodes(); ++b) {
          if (holds(a, b) || holds(b, a)) local[w].push_back({a, b});
        }
      } else {
        for (NodeId b = 0; b < g2.num_nodes(); ++b) {
          if (holds(a, b)) local[w].push_back({a, b});
        }
      }
    }
  });
  for (auto& part : local) {
    result.pairs.insert(result.pairs.end(), part.begin(), part.end());
  }
  SortPairs(result.pairs);
  return result;
}

}  // namespace dnfblock
