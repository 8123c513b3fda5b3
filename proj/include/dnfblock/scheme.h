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

// Attribute-aware and composite DNF blocking schemes.

#ifndef DNFBLOCK_SCHEME_H_
#define DNFBLOCK_SCHEME_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dnfblock/graph.h"
#include "dnfblock/predicates.h"

namespace dnfblock {

using PredicateIndex = std::uint32_t;

// A conjunction of universe predicates. Sorted, duplicate free, non-empty.
struct Term {
  std::vector<PredicateIndex> predicates;

  auto operator<=>(const Term&) const = default;
  std::size_t size() const { return predicates.size(); }
};

Term MakeTerm(std::vector<PredicateIndex> predicates);

// Positive DNF gated by an attribution relation. An empty relation lets
// every pair through.
struct AttributeAwareScheme {
  std::vector<Term> dnf;
  AttributionRelation attribution;

  auto operator<=>(const AttributeAwareScheme&) const = default;
};

// Holds iff some member holds. Terms index into `universe`.
struct CompositeScheme {
  Scenario scenario = Scenario::kTwoGraph;
  std::vector<Predicate> universe;
  std::vector<AttributeAwareScheme> members;

  bool operator==(const CompositeScheme&) const = default;
};

inline constexpr int kSchemeVersion = 1;

// Sorts the terms and drops duplicates and any term that is a superset of
// another one (it can never add a pair to a positive DNF).
void CanonicalizeDnf(std::vector<Term>& dnf);

// Keeps only referenced predicates (in their original relative order),
// renumbers the terms and canonicalizes every DNF.
void Canonicalize(CompositeScheme& scheme);

// Throws kInvalidArgument on an empty member list, an empty DNF, an empty
// or non-canonical term, or a predicate index outside the universe.
void ValidateScheme(const CompositeScheme& scheme);

bool EvalMember(const CompositeScheme& scheme, std::size_t member,
                const DataGraph& g1, const DataGraph& g2, NodeId v1,
                NodeId v2, const ExtractOptions& options = {});

// One-graph schemes must be evaluated with g1 and g2 being the same object.
bool EvalScheme(const CompositeScheme& scheme, const DataGraph& g1,
                const DataGraph& g2, NodeId v1, NodeId v2,
                const ExtractOptions& options = {});

// Canonical JSON (sorted keys, versioned). Terms reference predicates by
// their content-hash id.
std::string SerializeScheme(const CompositeScheme& scheme);
// Throws kParse on a version mismatch, missing fields, a tampered predicate
// id or a dangling predicate reference.
CompositeScheme DeserializeScheme(std::string_view text);

// Multi-line human-readable rendering.
std::string DescribeScheme(const CompositeScheme& scheme);

std::string_view ScenarioName(Scenario scenario);
Scenario ParseScenario(std::string_view name);

}  // namespace dnfblock

#endif  // DNFBLOCK_SCHEME_H_
