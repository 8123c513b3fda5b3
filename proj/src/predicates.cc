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

#include "dnfblock/predicates.h"

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>

#include "dnfblock/error.h"

namespace dnfblock {

using nlohmann::json;

namespace {

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void SortUnique(std::vector<LabelSequence>& seqs) {
  std::sort(seqs.begin(), seqs.end());
  seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
}

void CheckNode(const DataGraph& g, NodeId v) {
  if (!g.contains(v)) {
    throw Error(ErrorCode::kNotFound,
                "node id " + std::to_string(v) + " is not in the graph");
  }
}

std::string SeqsToString(const std::vector<LabelSequence>& seqs) {
  std::string out = "{";
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (i > 0) out += ", ";
    out += "(";
    for (std::size_t j = 0; j < seqs[i].size(); ++j) {
      if (j > 0) out += ",";
      out += seqs[i][j];
    }
    out += ")";
  }
  return out + "}";
}

}  // namespace

json FeoToJson(const Feo& feo) {
  return json{{"shallow", feo.shallow}, {"deep_chain", feo.deep_chain}};
}

Feo FeoFromJson(const json& j) {
  Feo feo;
  feo.shallow = j.at("shallow").get<std::string>();
  if (j.contains("deep_chain")) {
    feo.deep_chain = j.at("deep_chain").get<std::vector<std::string>>();
  }
  if (feo.shallow.empty()) {
    throw Error(ErrorCode::kParse, "FEO without a shallow extractor");
  }
  return feo;
}

json Predicate::ToJson() const {
  json j;
  j["relation"] = "overlap";
  if (feo1 == feo2) {
    j["feo"] = FeoToJson(feo1);
  } else {
    j["feo1"] = FeoToJson(feo1);
    j["feo2"] = FeoToJson(feo2);
  }
  j["seqs1"] = seqs1;
  j["seqs2"] = seqs2;
  return j;
}

Predicate Predicate::FromJson(const json& j) {
  try {
    Predicate p;
    const std::string relation = j.at("relation").get<std::string>();
    if (relation != "overlap") {
      throw Error(ErrorCode::kParse,
                  "unsupported set relation '" + relation + "'");
    }
    if (j.contains("threshold") && j.at("threshold").get<double>() != 0.0) {
      throw Error(ErrorCode::kParse,
                  "only the zero-threshold overlap relation is supported");
    }
    if (j.contains("feo")) {
      p.feo1 = p.feo2 = FeoFromJson(j.at("feo"));
    } else {
      p.feo1 = FeoFromJson(j.at("feo1"));
      p.feo2 = FeoFromJson(j.at("feo2"));
    }
    p.seqs1 = j.at("seqs1").get<std::vector<LabelSequence>>();
    p.seqs2 = j.at("seqs2").get<std::vector<LabelSequence>>();
    Normalize(p);
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad predicate: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      throw Error(ErrorCode::kParse, e.what());
    }
    throw;
  }
}

std::string Predicate::Id() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, Fnv1a(ToJson().dump()));
  return buf;
}

std::string Predicate::ToString() const {
  if (symmetric()) {
    return "overlap[" + feo1.ToString() + " @ " + SeqsToString(seqs1) + "]";
  }
  return "overlap[" + feo1.ToString() + " @ " + SeqsToString(seqs1) + " | " +
         feo2.ToString() + " @ " + SeqsToString(seqs2) + "]";
}

void Normalize(Predicate& p) {
  SortUnique(p.seqs1);
  SortUnique(p.seqs2);
  if (p.seqs1.empty() || p.seqs2.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "predicate sequence sets must be non-empty");
  }
}

bool AttributionRelation::Contains(const std::string& a1,
                                   const std::string& a2) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::pair(a1, a2));
}

AttributionRelation MakeRelation(
    std::vector<std::pair<std::string, std::string>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return AttributionRelation{std::move(pairs)};
}

FeatureSet PredicateFeatures(const DataGraph& g, const Predicate& p, int side,
                             NodeId v, const ExtractOptions& options) {
  FeatureSet z;
  for (const LabelSequence& s : p.seqs(side)) {
    FeatureSet part = ApplyTrailFeo(g, p.feo(side), v, s, options);
    z = z.empty() ? std::move(part) : SetUnion(z, part);
  }
  return z;
}

bool EvalPredicate(const DataGraph& g1, const DataGraph& g2,
                   const Predicate& p, NodeId v1, NodeId v2,
                   const ExtractOptions& options) {
  CheckNode(g1, v1);
  CheckNode(g2, v2);
  if (&g1 == &g2 && v1 == v2) {
    throw Error(ErrorCode::kInvalidArgument,
                "one-graph evaluation needs two distinct nodes");
  }
  const FeatureSet z1 = PredicateFeatures(g1, p, 1, v1, options);
  if (z1.empty()) return false;
  return Intersects(z1, PredicateFeatures(g2, p, 2, v2, options));
}

bool EvalAttribution(const AttributionRelation& relation, const DataGraph& g1,
                     const DataGraph& g2, NodeId v1, NodeId v2) {
  CheckNode(g1, v1);
  CheckNode(g2, v2);
  for (const auto& a1 : g1.attributes(v1)) {
    for (const auto& a2 : g2.attributes(v2)) {
      if (relation.Contains(a1, a2)) return true;
    }
  }
  return false;
}

std::vector<LabelSequence> ObservedSequences(const DataGraph& g,
                                             std::size_t max_length,
                                             std::size_t cap) {
  using IdSeq = std::vector<EdgeLabelId>;
  std::map<IdSeq, std::set<NodeId>> tier;
  if (max_length >= 1) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (const OutEdge& e : g.out_edges(v)) tier[{e.label}].insert(e.target);
    }
  }
  std::vector<LabelSequence> result;
  for (std::size_t length = 1; length <= max_length && !tier.empty();
       ++length) {
    for (const auto& [ids, ends] : tier) {
      LabelSequence seq;
      for (EdgeLabelId id : ids) seq.push_back(g.edge_label_name(id));
      result.push_back(std::move(seq));
    }
    if (result.size() > cap) {
      throw Error(ErrorCode::kLimitExceeded,
                  "more than " + std::to_string(cap) +
                      " observed edge-label sequences");
    }
    if (length == max_length) break;
    std::map<IdSeq, std::set<NodeId>> next;
    for (const auto& [ids, ends] : tier) {
      for (NodeId v : ends) {
        for (const OutEdge& e : g.out_edges(v)) {
          IdSeq longer = ids;
          longer.push_back(e.label);
          next[std::move(longer)].insert(e.target);
        }
      }
    }
    tier = std::move(next);
  }
  std::stable_sort(result.begin(), result.end(),
                   [](const LabelSequence& a, const LabelSequence& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return result;
}

std::vector<Predicate> BuildUniverse(const DataGraph& g1, const DataGraph& g2,
                                     std::span<const Feo> feos,
                                     const UniverseOptions& options) {
  if (feos.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a predicate universe needs at least one FEO");
  }
  std::vector<LabelSequence> seqs{LabelSequence{}};
  const auto observed1 =
      ObservedSequences(g1, options.max_trail_len, options.max_size);
  if (&g1 == &g2) {
    seqs.insert(seqs.end(), observed1.begin(), observed1.end());
  } else {
    const auto observed2 =
        ObservedSequences(g2, options.max_trail_len, options.max_size);
    const std::set<LabelSequence> in2(observed2.begin(), observed2.end());
    for (const auto& s : observed1) {
      if (in2.contains(s)) seqs.push_back(s);
    }
  }

  std::vector<Predicate> universe;
  std::set<Predicate> seen;
  for (const Feo& feo : feos) {
    for (const auto& s : seqs) {
      Predicate p{SetRelation::kOverlap, feo, feo, {s}, {s}};
      if (!seen.insert(p).second) continue;
      universe.push_back(std::move(p));
      if (universe.size() > options.max_size) {
        throw Error(ErrorCode::kLimitExceeded,
                    "predicate universe exceeds " +
                        std::to_string(options.max_size) + " predicates");
      }
    }
  }
  return universe;
}

}  // namespace dnfblock
