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

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dnfblock/error.h"
#include "dnfblock/scheme.h"
#include "fixtures.h"
#include "json.hpp"

namespace dnfblock {
namespace {

using testing::MovieGraph;
using testing::Node;
using testing::Symmetric;

const Feo kTokens{"TokenizeString", {}};

// Two members gated by {(Actor, Director)} and {(Guitarist, Guitarist)}.
CompositeScheme CommitteeScheme() {
  CompositeScheme c;
  c.scenario = Scenario::kOneGraph;
  c.universe = {Symmetric(kTokens, {{"actedIn"}}),
                Symmetric(kTokens, {{"bornOn"}})};
  c.members = {{{MakeTerm({0})}, MakeRelation({{"Actor", "Director"}})},
               {{MakeTerm({1})}, MakeRelation({{"Guitarist", "Guitarist"}})}};
  return c;
}

TEST(SchemeTest, CommitteeHoldsWhenEitherMemberHolds) {
  const DataGraph g = MovieGraph();
  const CompositeScheme c = CommitteeScheme();
  const NodeId john = Node(g, "John_Doe");
  const NodeId jane = Node(g, "Jane_Doe");
  EXPECT_FALSE(EvalMember(c, 0, g, g, john, jane));  // no shared film edge
  EXPECT_TRUE(EvalMember(c, 1, g, g, john, jane));   // shared birth year
  EXPECT_TRUE(EvalScheme(c, g, g, john, jane));
}

TEST(SchemeTest, GateBlocksSatisfiedDnf) {
  const DataGraph g = MovieGraph();
  CompositeScheme c;
  c.scenario = Scenario::kOneGraph;
  c.universe = {Symmetric(kTokens, {{"bornOn"}})};
  c.members = {{{MakeTerm({0})}, MakeRelation({{"Movie", "Person"}})},
               {{MakeTerm({0})}, MakeRelation({{"Director", "Actor"}})}};
  EXPECT_FALSE(EvalScheme(c, g, g, Node(g, "John_Doe"), Node(g, "Jane_Doe")));
}

TEST(SchemeTest, EmptyRelationBypassesTheGate) {
  const DataGraph g = MovieGraph();
  CompositeScheme c;
  c.scenario = Scenario::kOneGraph;
  c.universe = {Symmetric(kTokens, {{"bornOn"}})};
  c.members = {{{MakeTerm({0})}, AttributionRelation{}}};
  EXPECT_TRUE(EvalScheme(c, g, g, Node(g, "John_Doe"), Node(g, "Jane_Doe")));
  // The bypass does not rescue a false DNF.
  EXPECT_FALSE(
      EvalScheme(c, g, g, Node(g, "John_Doe"), Node(g, "Christine_Doe")));
}

TEST(SchemeTest, ConjunctionNeedsEveryPredicate) {
  const DataGraph g = MovieGraph();
  CompositeScheme c;
  c.scenario = Scenario::kOneGraph;
  c.universe = {Symmetric(kTokens, {{"bornOn"}}),
                Symmetric(kTokens, {{"actedIn"}})};
  c.members = {{{MakeTerm({0, 1})}, AttributionRelation{}}};
  EXPECT_FALSE(EvalScheme(c, g, g, Node(g, "John_Doe"), Node(g, "Jane_Doe")));
}

TEST(SchemeTest, UnknownPredicateIndexIsAnError) {
  const DataGraph g = MovieGraph();
  CompositeScheme c = CommitteeScheme();
  c.members[1].dnf = {MakeTerm({7})};
  EXPECT_THROW(EvalScheme(c, g, g, Node(g, "John_Doe"), Node(g, "Jane_Doe")),
               Error);
  EXPECT_THROW(ValidateScheme(c), Error);
}

TEST(SchemeTest, OneGraphSchemeNeedsOneGraph) {
  const DataGraph g = MovieGraph();
  const DataGraph h = MovieGraph();
  EXPECT_THROW(EvalScheme(CommitteeScheme(), g, h, 0, 1), Error);
}

TEST(SchemeTest, CanonicalizationDropsRedundantTerms) {
  std::vector<Term> dnf = {MakeTerm({2, 1}), MakeTerm({1}), MakeTerm({3}),
                           MakeTerm({3}), MakeTerm({3, 4})};
  CanonicalizeDnf(dnf);
  EXPECT_EQ(dnf, (std::vector<Term>{MakeTerm({1}), MakeTerm({3})}));
  EXPECT_THROW(MakeTerm({}), Error);
  EXPECT_EQ(MakeTerm({5, 2, 5}).predicates,
            (std::vector<PredicateIndex>{2, 5}));
}

TEST(SchemeTest, CanonicalizeCompactsTheUniverse) {
  CompositeScheme c;
  c.universe = {Symmetric(kTokens, {{"a"}}), Symmetric(kTokens, {{"b"}}),
                Symmetric(kTokens, {{"c"}})};
  c.members = {{{MakeTerm({2}), MakeTerm({0, 2})}, AttributionRelation{}}};
  Canonicalize(c);
  ASSERT_EQ(c.universe.size(), 1u);
  EXPECT_EQ(c.universe[0].seqs1[0], (LabelSequence{"c"}));
  EXPECT_EQ(c.members[0].dnf, (std::vector<Term>{MakeTerm({0})}));
}

TEST(SchemeJsonTest, RoundTrip) {
  const CompositeScheme c = CommitteeScheme();
  const std::string text = SerializeScheme(c);
  const CompositeScheme back = DeserializeScheme(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(SerializeScheme(back), text);
}

TEST(SchemeJsonTest, RejectsMalformedDocuments) {
  const nlohmann::json good = nlohmann::json::parse(SerializeScheme(CommitteeScheme()));
  auto expect_parse_error = [](const nlohmann::json& doc) {
    try {
      DeserializeScheme(doc.dump());
      ADD_FAILURE() << "accepted " << doc.dump();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  };
  nlohmann::json no_dnf = good;
  no_dnf["schemes"][0].erase("dnf");
  expect_parse_error(no_dnf);
  nlohmann::json version = good;
  version["v"] = 2;
  expect_parse_error(version);
  nlohmann::json tampered = good;
  tampered["universe"]["predicates"][0]["seqs1"] = {{"other"}};
  expect_parse_error(tampered);
  nlohmann::json dangling = good;
  dangling["schemes"][0]["dnf"][0][0] = "0123456789abcdef";
  expect_parse_error(dangling);
  nlohmann::json empty_dnf = good;
  empty_dnf["schemes"][0]["dnf"] = nlohmann::json::array();
  expect_parse_error(empty_dnf);
  nlohmann::json mode = good;
  mode["mode"] = "three-graph";
  expect_parse_error(mode);
  EXPECT_THROW(DeserializeScheme("{not json"), Error);
}

// Two single-predicate disjuncts, like the restaurant scheme that shares a
// name token or an address integer.
CompositeScheme TwoDisjunctScheme() {
  CompositeScheme c;
  c.scenario = Scenario::kTwoGraph;
  c.universe = {Symmetric(kTokens, {{"name"}}),
                Symmetric({"TokenizeString", {"NumericOnly"}}, {{"address"}})};
  c.members = {{{MakeTerm({0}), MakeTerm({1})}, AttributionRelation{}}};
  return c;
}

TEST(SchemeJsonTest, GoldenFile) {
  const std::string path = DNFBLOCK_TEST_DIR "/golden/two_disjunct_scheme.json";
  const std::string text = SerializeScheme(TwoDisjunctScheme());
  if (std::getenv("DNFBLOCK_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << text;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing " << path;
  std::ostringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(text, golden.str());
  EXPECT_EQ(DeserializeScheme(golden.str()), TwoDisjunctScheme());
}

TEST(SchemeTest, DescribeMentionsEveryPart) {
  const std::string text = DescribeScheme(CommitteeScheme());
  EXPECT_NE(text.find("Guitarist"), std::string::npos);
  EXPECT_NE(text.find("bornOn"), std::string::npos);
  EXPECT_NE(text.find("one-graph"), std::string::npos);
}

// Random schemes over a small universe on random graphs.
struct RandomSetup {
  DataGraph g;
  CompositeScheme c;
};

RandomSetup MakeRandom(std::mt19937_64& rng) {
  RandomSetup s;
  s.g = testing::RandomGraph(rng, 14, 25, "n");
  s.c.scenario = Scenario::kOneGraph;
  s.c.universe = BuildUniverse(s.g, s.g, DefaultFeos());
  const std::size_t n = s.c.universe.size();
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  const std::vector<std::string> attrs = {"A", "B", "C"};
  const std::size_t members = 1 + pick(2);
  for (std::size_t m = 0; m < members; ++m) {
    AttributeAwareScheme member;
    const std::size_t terms = 1 + pick(3);
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<PredicateIndex> preds{static_cast<PredicateIndex>(pick(n))};
      if (pick(2) == 0) preds.push_back(static_cast<PredicateIndex>(pick(n)));
      member.dnf.push_back(MakeTerm(preds));
    }
    if (pick(2) == 0) {
      member.attribution = MakeRelation(
          {{attrs[pick(3)], attrs[pick(3)]}, {attrs[pick(3)], attrs[pick(3)]}});
    }
    s.c.members.push_back(std::move(member));
  }
  return s;
}

TEST(SchemeTest, MonotonicityAndMemberDisjunction) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 25; ++round) {
    RandomSetup s = MakeRandom(rng);
    const std::size_t n = s.c.universe.size();
    CompositeScheme more_terms = s.c;
    more_terms.members[0].dnf.push_back(
        MakeTerm({static_cast<PredicateIndex>(rng() % n)}));
    CompositeScheme bigger_term = s.c;
    auto& first = bigger_term.members[0].dnf[0].predicates;
    first.push_back(static_cast<PredicateIndex>(rng() % n));
    first = MakeTerm(first).predicates;
    for (NodeId a = 0; a < s.g.num_nodes(); ++a) {
      for (NodeId b = 0; b < s.g.num_nodes(); ++b) {
        if (a == b) continue;
        const bool base = EvalScheme(s.c, s.g, s.g, a, b);
        bool any = false;
        for (std::size_t m = 0; m < s.c.members.size(); ++m) {
          any = any || EvalMember(s.c, m, s.g, s.g, a, b);
        }
        EXPECT_EQ(base, any);
        if (base) {
          EXPECT_TRUE(EvalScheme(more_terms, s.g, s.g, a, b));
        }
        if (!base) {
          EXPECT_FALSE(EvalScheme(bigger_term, s.g, s.g, a, b));
        }
      }
    }
    // Serialization preserves evaluation.
    CompositeScheme canonical = s.c;
    Canonicalize(canonical);
    const CompositeScheme back = DeserializeScheme(SerializeScheme(s.c));
    EXPECT_EQ(back, canonical);
    for (NodeId a = 0; a + 1 < s.g.num_nodes(); ++a) {
      EXPECT_EQ(EvalScheme(back, s.g, s.g, a, a + 1),
                EvalScheme(s.c, s.g, s.g, a, a + 1));
    }
  }
}

}  // namespace
}  // namespace dnfblock
