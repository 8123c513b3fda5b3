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

// Shared graphs for the unit tests.

#ifndef DNFBLOCK_TESTS_FIXTURES_H_
#define DNFBLOCK_TESTS_FIXTURES_H_

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnfblock/graph.h"
#include "dnfblock/learner.h"
#include "dnfblock/predicates.h"
#include "dnfblock/scheme.h"

namespace dnfblock::testing {

// The running movie-domain fragment: two artists with attributes, a
// movie, a birth date literal and a relative without a birth date.
inline constexpr const char* kMovieTriples = R"(John_Doe type Actor .
John_Doe type Guitarist .
John_Doe bornOn "03-01-1980" .
John_Doe actedIn Jurassic_Park_4 .
John_Doe marriedTo Christine_Doe .
Jane_Doe type Director .
Jane_Doe type Guitarist .
Jane_Doe bornOn "12-07-1980" .
Jane_Doe directed Jurassic_Park_4 .
Christine_Doe type Person .
Christine_Doe marriedTo John_Doe .
Jurassic_Park_4 type Movie .
)";

inline DataGraph MovieGraph() {
  std::istringstream in(kMovieTriples);
  return ParseTriples(in, nullptr);
}

inline NodeId Node(const DataGraph& g, const std::string& id) {
  return g.FindNode(id).value();
}

inline Predicate Symmetric(const Feo& feo, std::vector<LabelSequence> seqs) {
  Predicate p;
  p.feo1 = p.feo2 = feo;
  p.seqs1 = p.seqs2 = std::move(seqs);
  Normalize(p);
  return p;
}

// Random attributed graph over a small token and label vocabulary, dense
// enough that most predicates hold on some pairs.
inline DataGraph RandomGraph(std::mt19937_64& rng, std::size_t nodes,
                             std::size_t edges, const std::string& prefix) {
  static const std::vector<std::string> kTokens = {
      "red", "blue", "green", "1980", "1981", "the", "river", "stone",
      "03", "12", "alpha", "beta"};
  static const std::vector<std::string> kLabels = {"p", "q", "r"};
  static const std::vector<std::string> kAttrs = {"A", "B", "C"};
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  GraphBuilder b;
  for (std::size_t i = 0; i < nodes; ++i) {
    const NodeId v = b.AddNode(prefix + std::to_string(i));
    const std::size_t words = pick(3);
    std::string label;
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0) label += ' ';
      label += kTokens[pick(kTokens.size())];
    }
    b.SetLabel(v, label);
    const std::size_t attrs = pick(3);
    for (std::size_t a = 0; a < attrs; ++a) {
      b.AddAttribute(v, kAttrs[pick(kAttrs.size())]);
    }
  }
  for (std::size_t e = 0; e < edges && nodes > 0; ++e) {
    b.AddEdge(static_cast<NodeId>(pick(nodes)),
              static_cast<NodeId>(pick(nodes)), kLabels[pick(kLabels.size())]);
  }
  return std::move(b).Build();
}

// Random composite scheme over the observed universe of (g1, g2), within
// the learner's default size bounds. Some members get an attribution gate.
inline CompositeScheme RandomScheme(std::mt19937_64& rng, const DataGraph& g1,
                                    const DataGraph& g2) {
  static const std::vector<std::string> kAttrs = {"A", "B", "C"};
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  CompositeScheme c;
  c.scenario = &g1 == &g2 ? Scenario::kOneGraph : Scenario::kTwoGraph;
  c.universe = BuildUniverse(g1, g2, DefaultFeos());
  if (c.universe.empty()) return c;
  const std::size_t members = 1 + pick(2);
  for (std::size_t m = 0; m < members; ++m) {
    AttributeAwareScheme s;
    const std::size_t terms = 1 + pick(3);
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<PredicateIndex> preds;
      const std::size_t size = 1 + pick(2);
      for (std::size_t k = 0; k < size; ++k) {
        preds.push_back(static_cast<PredicateIndex>(pick(c.universe.size())));
      }
      s.dnf.push_back(MakeTerm(std::move(preds)));
    }
    if (pick(2) == 1) {
      std::vector<std::pair<std::string, std::string>> pairs;
      const std::size_t n = 1 + pick(3);
      for (std::size_t k = 0; k < n; ++k) {
        pairs.emplace_back(kAttrs[pick(3)], kAttrs[pick(3)]);
      }
      s.attribution = MakeRelation(pairs);
    }
    c.members.push_back(std::move(s));
  }
  Canonicalize(c);
  return c;
}

// Two slices whose positives are told apart by different predicates.
struct CommitteeFixture {
  DataGraph g1, g2;
  TrainingSet train;
};

inline CommitteeFixture Committee() {
  // Actors/directors share a film token; guitarists share a band token.
  // Cross-group names are shared so the wrong predicate catches negatives.
  const std::string common =
      "a1\tplays\tf1\na2\tplays\tf2\na1\tin\tb9\na2\tin\tb8\n";
  std::istringstream e1(common), e2(
      "d1\tplays\tf1x\nd2\tplays\tf2x\nd1\tin\tb7\nd2\tin\tb6\n"
      "h1\tin\tb1x\nh2\tin\tb2x\nh1\tplays\tf8\nh2\tplays\tf9\n"
      "z1\tplays\tf1y\nz2\tin\tb1y\n");
  std::istringstream n1(
      "a1\tann\tActor\na2\tbob\tActor\nf1\tjaws\t\nf2\talien\t\n"
      "b9\tnoise\t\nb8\tstatic\t\n"
      "g1\tcid\tGuitarist\ng2\tdee\tGuitarist\nb1\tqueen\t\nb2\tabba\t\n");
  std::istringstream n2(
      "d1\tann2\tDirector\nd2\tbob2\tDirector\nf1x\tjaws\t\nf2x\talien\t\n"
      "b7\tgrunge\t\nb6\tpunk\t\n"
      "h1\tcid2\tGuitarist\nh2\tdee2\tGuitarist\nb1x\tqueen\t\nb2x\tabba\t\n"
      "f8\tjaws\t\nf9\talien\t\nz1\tzed\tDirector\nf1y\tjaws\t\n"
      "z2\tzoe\tGuitarist\nb1y\tqueen\t\n");
  CommitteeFixture f;
  std::istringstream e1b(common + "g1\tin\tb1\ng2\tin\tb2\n");
  f.g1 = ParseTsvGraph(e1b, &n1, nullptr);
  f.g2 = ParseTsvGraph(e2, &n2, nullptr);
  auto id1 = [&](const char* s) { return Node(f.g1, s); };
  auto id2 = [&](const char* s) { return Node(f.g2, s); };
  f.train.positives = {{id1("a1"), id2("d1")},
                       {id1("a2"), id2("d2")},
                       {id1("g1"), id2("h1")},
                       {id1("g2"), id2("h2")}};
  f.train.negatives = {{id1("a1"), id2("h1")},
                       {id1("g1"), id2("d1")},
                       {id1("a1"), id2("z1")},
                       {id1("g1"), id2("z2")}};
  return f;
}

}  // namespace dnfblock::testing

#endif  // DNFBLOCK_TESTS_FIXTURES_H_
