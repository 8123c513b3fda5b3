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

#include "dnfblock/scheme.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "dnfblock/error.h"

namespace dnfblock {

using nlohmann::json;

Term MakeTerm(std::vector<PredicateIndex> predicates) {
  std::sort(predicates.begin(), predicates.end());
  predicates.erase(std::unique(predicates.begin(), predicates.end()),
                   predicates.end());
  if (predicates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a term needs a predicate");
  }
  return Term{std::move(predicates)};
}

void CanonicalizeDnf(std::vector<Term>& dnf) {
  std::sort(dnf.begin(), dnf.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Term> kept;
  for (Term& t : dnf) {
    const bool subsumed = std::any_of(
        kept.begin(), kept.end(), [&](const Term& smaller) {
          return std::includes(t.predicates.begin(), t.predicates.end(),
                               smaller.predicates.begin(),
                               smaller.predicates.end());
        });
    if (!subsumed) kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end());
  dnf = std::move(kept);
}

void Canonicalize(CompositeScheme& scheme) {
  // Drop subsumed terms first so their predicates do not count as used.
  for (auto& m : scheme.members) CanonicalizeDnf(m.dnf);
  std::vector<bool> used(scheme.universe.size(), false);
  for (const auto& m : scheme.members) {
    for (const auto& t : m.dnf) {
      for (PredicateIndex p : t.predicates) used.at(p) = true;
    }
  }
  std::vector<PredicateIndex> remap(scheme.universe.size(), 0);
  std::vector<Predicate> compact;
  for (std::size_t i = 0; i < scheme.universe.size(); ++i) {
    if (!used[i]) continue;
    remap[i] = static_cast<PredicateIndex>(compact.size());
    compact.push_back(std::move(scheme.universe[i]));
  }
  scheme.universe = std::move(compact);
  for (auto& m : scheme.members) {
    for (auto& t : m.dnf) {
      for (PredicateIndex& p : t.predicates) p = remap[p];
      std::sort(t.predicates.begin(), t.predicates.end());
    }
    CanonicalizeDnf(m.dnf);
  }
}

void ValidateScheme(const CompositeScheme& scheme) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (scheme.members.empty()) fail("composite scheme has no members");
  for (std::size_t m = 0; m < scheme.members.size(); ++m) {
    const auto& dnf = scheme.members[m].dnf;
    if (dnf.empty()) fail("member " + std::to_string(m) + " has an empty DNF");
    for (const Term& t : dnf) {
      if (t.predicates.empty()) fail("empty term");
      if (!std::is_sorted(t.predicates.begin(), t.predicates.end()) ||
          std::adjacent_find(t.predicates.begin(), t.predicates.end()) !=
              t.predicates.end()) {
        fail("term predicates must be sorted and distinct");
      }
      if (t.predicates.back() >= scheme.universe.size()) {
        fail("term references predicate " +
             std::to_string(t.predicates.back()) + " outside the universe");
      }
    }
  }
}

bool EvalMember(const CompositeScheme& scheme, std::size_t member,
                const DataGraph& g1, const DataGraph& g2, NodeId v1,
                NodeId v2, const ExtractOptions& options) {
  const AttributeAwareScheme& m = scheme.members.at(member);
  if (!m.attribution.empty() &&
      !EvalAttribution(m.attribution, g1, g2, v1, v2)) {
    return false;
  }
  for (const Term& t : m.dnf) {
    bool all = true;
    for (PredicateIndex p : t.predicates) {
      if (p >= scheme.universe.size()) {
        throw Error(ErrorCode::kNotFound,
                    "unknown predicate index " + std::to_string(p));
      }
      if (!EvalPredicate(g1, g2, scheme.universe[p], v1, v2, options)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool EvalScheme(const CompositeScheme& scheme, const DataGraph& g1,
                const DataGraph& g2, NodeId v1, NodeId v2,
                const ExtractOptions& options) {
  if (scheme.scenario == Scenario::kOneGraph && &g1 != &g2) {
    throw Error(ErrorCode::kInvalidArgument,
                "a one-graph scheme needs the same graph on both sides");
  }
  for (std::size_t m = 0; m < scheme.members.size(); ++m) {
    if (EvalMember(scheme, m, g1, g2, v1, v2, options)) return true;
  }
  return false;
}

std::string_view ScenarioName(Scenario scenario) {
  return scenario == Scenario::kOneGraph ? "one-graph" : "two-graph";
}

Scenario ParseScenario(std::string_view name) {
  if (name == "one-graph") return Scenario::kOneGraph;
  if (name == "two-graph") return Scenario::kTwoGraph;
  throw Error(ErrorCode::kParse, "unknown mode '" + std::string(name) + "'");
}

std::string SerializeScheme(const CompositeScheme& input) {
  CompositeScheme scheme = input;
  Canonicalize(scheme);
  ValidateScheme(scheme);
  std::vector<std::string> ids;
  json predicates = json::array();
  for (const Predicate& p : scheme.universe) {
    ids.push_back(p.Id());
    json j = p.ToJson();
    j["id"] = ids.back();
    predicates.push_back(std::move(j));
  }
  json members = json::array();
  for (const auto& m : scheme.members) {
    json dnf = json::array();
    for (const Term& t : m.dnf) {
      json term = json::array();
      for (PredicateIndex p : t.predicates) term.push_back(ids[p]);
      dnf.push_back(std::move(term));
    }
    json attribution = json::array();
    for (const auto& [a, b] : m.attribution.pairs) {
      attribution.push_back({a, b});
    }
    members.push_back({{"attribution", attribution}, {"dnf", dnf}});
  }
  json doc{{"v", kSchemeVersion},
           {"mode", ScenarioName(scheme.scenario)},
           {"schemes", members},
           {"universe", {{"predicates", predicates}}}};
  return doc.dump(2) + "\n";
}

CompositeScheme DeserializeScheme(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (!doc.contains("v") || doc.at("v") != kSchemeVersion) {
      throw Error(ErrorCode::kParse,
                  "unsupported scheme schema version (expected " +
                      std::to_string(kSchemeVersion) + ")");
    }
    CompositeScheme scheme;
    scheme.scenario = ParseScenario(doc.at("mode").get<std::string>());
    std::map<std::string, PredicateIndex> by_id;
    for (const json& pj : doc.at("universe").at("predicates")) {
      Predicate p = Predicate::FromJson(pj);
      const std::string id = p.Id();
      if (pj.contains("id") && pj.at("id").get<std::string>() != id) {
        throw Error(ErrorCode::kParse, "predicate id " +
                                           pj.at("id").get<std::string>() +
                                           " does not match its content");
      }
      by_id.emplace(id, static_cast<PredicateIndex>(scheme.universe.size()));
      scheme.universe.push_back(std::move(p));
    }
    for (const json& mj : doc.at("schemes")) {
      AttributeAwareScheme m;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const json& pair : mj.at("attribution")) {
        pairs.emplace_back(pair.at(0).get<std::string>(),
                           pair.at(1).get<std::string>());
      }
      m.attribution = MakeRelation(std::move(pairs));
      for (const json& tj : mj.at("dnf")) {
        std::vector<PredicateIndex> preds;
        for (const json& pid : tj) {
          const std::string id = pid.get<std::string>();
          auto it = by_id.find(id);
          if (it == by_id.end()) {
            throw Error(ErrorCode::kParse, "dangling predicate id " + id);
          }
          preds.push_back(it->second);
        }
        m.dnf.push_back(MakeTerm(std::move(preds)));
      }
      CanonicalizeDnf(m.dnf);
      scheme.members.push_back(std::move(m));
    }
    ValidateScheme(scheme);
    return scheme;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad scheme: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, std::string("bad scheme: ") + e.what());
  }
}

std::string DescribeScheme(const CompositeScheme& scheme) {
  std::ostringstream out;
  out << ScenarioName(scheme.scenario) << " composite scheme, "
      << scheme.members.size() << " member(s)\n";
  for (std::size_t m = 0; m < scheme.members.size(); ++m) {
    const auto& member = scheme.members[m];
    out << "member " << m << " attribution {";
    for (std::size_t i = 0; i < member.attribution.pairs.size(); ++i) {
      const auto& [a, b] = member.attribution.pairs[i];
      out << (i ? ", " : "") << "(" << a << ", " << b << ")";
    }
    out << "}\n";
    for (std::size_t t = 0; t < member.dnf.size(); ++t) {
      out << (t == 0 ? "     " : "  OR ");
      const auto& preds = member.dnf[t].predicates;
      for (std::size_t i = 0; i < preds.size(); ++i) {
        out << (i ? " AND " : "") << scheme.universe[preds[i]].ToString();
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace dnfblock
