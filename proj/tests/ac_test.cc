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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dnfblock/ac_baseline.h"
#include "dnfblock/error.h"
#include "fixtures.h"

namespace dnfblock {
namespace {

using testing::Node;

DataGraph Tsv(const std::string& edges, const std::string& nodes) {
  std::istringstream e(edges), n(nodes);
  return ParseTsvGraph(e, &n, nullptr);
}

// Birth dates under different edge labels, plus unrelated name labels.
struct DateFixture {
  DataGraph g1 = Tsv(
      "p1\tbirthDate\td1\np2\tbirthDate\td2\np1\tname\tn1\np2\tname\tn2\n",
      "d1\t03-01-1980\t\nd2\t12-07-1980\t\nn1\tAlice Smith\t\n"
      "n2\tCarol White\t\n");
  DataGraph g2 = Tsv(
      "q1\tbornOn\te1\nq2\tbornOn\te2\nq1\tfullName\tm1\nq2\tfullName\tm2\n",
      "e1\t03-01-1980\t\ne2\t05-07-1981\t\nm1\tBob Jones\t\n"
      "m2\tDan Brown\t\n");
};

TEST(EdgeLabelTokensTest, CountsValuesPerToken) {
  const DateFixture f;
  const TokenBag bag =
      EdgeLabelTokens(f.g1, f.g1.FindEdgeLabel("birthDate").value());
  EXPECT_EQ(bag, (TokenBag{{"01", 1}, {"03", 1}, {"07", 1}, {"12", 1},
                           {"1980", 2}}));
  const TokenBag names =
      EdgeLabelTokens(f.g1, f.g1.FindEdgeLabel("name").value());
  EXPECT_EQ(names.at("alice"), 1u);
}

TEST(CosineTest, HandComputed) {
  const TokenBag a = {{"01", 1}, {"03", 1}, {"07", 1}, {"12", 1}, {"1980", 2}};
  const TokenBag b = {{"01", 1}, {"03", 1}, {"05", 1},
                      {"07", 1}, {"1980", 1}, {"1981", 1}};
  // dot = 1 + 1 + 1 + 2 = 5, |a|^2 = 8, |b|^2 = 6.
  EXPECT_NEAR(Cosine(a, b), 5.0 / std::sqrt(48.0), 1e-12);
  EXPECT_DOUBLE_EQ(Cosine(a, a), 1.0);
  EXPECT_EQ(Cosine(a, {}), 0.0);
}

TEST(ClusterEdgeLabelsTest, DateLabelsClusterTogether) {
  const DateFixture f;
  const auto clusters = ClusterEdgeLabels(f.g1, f.g2, {0.5, false});
  ASSERT_EQ(clusters.size(), 3u);
  // Ordered by (labels1, labels2): the g2-only singleton sorts first.
  EXPECT_EQ(clusters[0].labels1, std::vector<std::string>{});
  EXPECT_EQ(clusters[0].labels2, std::vector<std::string>{"fullName"});
  EXPECT_EQ(clusters[1].labels1, std::vector<std::string>{"birthDate"});
  EXPECT_EQ(clusters[1].labels2, std::vector<std::string>{"bornOn"});
  EXPECT_EQ(clusters[2].labels1, std::vector<std::string>{"name"});
  EXPECT_TRUE(clusters[2].labels2.empty());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    EXPECT_EQ(clusters[i].id, i);
  }
  // 0.7217 is below 0.75.
  EXPECT_EQ(ClusterEdgeLabels(f.g1, f.g2, {0.75, false}).size(), 4u);
}

TEST(ClusterEdgeLabelsTest, ExactThresholdWithDisjointValuesGivesSingletons) {
  const DataGraph g1 = Tsv("a\tx\tb\n", "b\tred\t\n");
  const DataGraph g2 = Tsv("c\ty\td\n", "d\tblue\t\n");
  const auto clusters = ClusterEdgeLabels(g1, g2, {1.0, false});
  ASSERT_EQ(clusters.size(), 2u);
  for (const auto& c : clusters) {
    EXPECT_EQ(c.labels1.size() + c.labels2.size(), 1u);
  }
}

TEST(ClusterEdgeLabelsTest, SharedLabelWithIdenticalValues) {
  const DataGraph g1 = Tsv("a\tcolor\tb\n", "b\tdeep red\t\n");
  const DataGraph g2 = Tsv("c\tcolor\td\n", "d\tdeep red\t\n");
  const auto clusters = ClusterEdgeLabels(g1, g2, {1.0, false});
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].labels1, std::vector<std::string>{"color"});
  EXPECT_EQ(clusters[0].labels2, std::vector<std::string>{"color"});
}

TEST(ClusterEdgeLabelsTest, GlueCollectsUnlinkedLabels) {
  const DateFixture f;
  const auto clusters = ClusterEdgeLabels(f.g1, f.g2, {0.5, true});
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].labels1, std::vector<std::string>{"birthDate"});
  EXPECT_EQ(clusters[1].labels1, std::vector<std::string>{"name"});
  EXPECT_EQ(clusters[1].labels2, std::vector<std::string>{"fullName"});
}

TEST(ClusterEdgeLabelsTest, OneGraphLinksWithinTheGraph) {
  const DataGraph g =
      Tsv("a\tborn\tx\nb\tbirth\ty\nc\tname\tz\n",
          "x\t1980\t\ny\t1980\t\nz\tAnn\t\n");
  const auto clusters = ClusterEdgeLabels(g, g);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].labels1, (std::vector<std::string>{"birth", "born"}));
  EXPECT_EQ(clusters[0].labels2, clusters[0].labels1);
}

TEST(ClusterEdgeLabelsTest, RejectsBadThreshold) {
  const DateFixture f;
  EXPECT_THROW(ClusterEdgeLabels(f.g1, f.g2, {1.5, false}), Error);
  EXPECT_THROW(ClusterEdgeLabels(f.g1, f.g2, {-0.1, false}), Error);
}

TEST(AcCandidatesTest, SharedYearUnderDateCluster) {
  const DateFixture f;
  const auto clusters = ClusterEdgeLabels(f.g1, f.g2);
  const auto c = AcCandidates(f.g1, f.g2, clusters, kNoPurge);
  const NodeId p1 = Node(f.g1, "p1"), p2 = Node(f.g1, "p2");
  const NodeId q1 = Node(f.g2, "q1"), q2 = Node(f.g2, "q2");
  // p1/q1 share the whole date, p2/q1 share 1980, p2/q2 share 07.
  std::vector<NodePair> expected = {{p1, q1}, {p2, q1}, {p2, q2}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(c.pairs, expected);
  EXPECT_FALSE(c.contains({p1, q2}));
}

TEST(AcCandidatesTest, NoSharedTokensOrZeroCapIsEmpty) {
  const DataGraph g1 = Tsv("a\tcolor\tb\n", "b\tred\t\n");
  const DataGraph g2 = Tsv("c\tcolor\td\n", "d\tblue\t\n");
  const auto clusters = ClusterEdgeLabels(g1, g2, {0.0, false});
  EXPECT_TRUE(AcCandidates(g1, g2, clusters, kNoPurge).pairs.empty());
  const DateFixture f;
  EXPECT_TRUE(
      AcCandidates(f.g1, f.g2, ClusterEdgeLabels(f.g1, f.g2), 0).pairs.empty());
}

TEST(AcAsDnfTest, ShapeOfTheScheme) {
  const DateFixture f;
  const auto clusters = ClusterEdgeLabels(f.g1, f.g2);
  const AcScheme ac = AcAsDnf(clusters, f.g1, f.g2);
  EXPECT_FALSE(ac.degenerate);
  ASSERT_EQ(ac.scheme.universe.size(), 1u);
  ASSERT_EQ(ac.scheme.members.size(), 1u);
  EXPECT_TRUE(ac.scheme.members[0].attribution.empty());
  EXPECT_EQ(ac.scheme.universe[0].seqs1,
            std::vector<LabelSequence>{{"birthDate"}});
  EXPECT_EQ(ac.scheme.universe[0].seqs2,
            std::vector<LabelSequence>{{"bornOn"}});
  ValidateScheme(ac.scheme);
}

TEST(AcAsDnfTest, NoClustersIsDegenerate) {
  const DateFixture f;
  const AcScheme none = AcAsDnf({}, f.g1, f.g2);
  EXPECT_TRUE(none.degenerate);
  EXPECT_TRUE(none.scheme.members.empty());
  // Singletons on one side only also leave nothing to join.
  const auto strict = ClusterEdgeLabels(f.g1, f.g2, {1.0, false});
  EXPECT_TRUE(AcAsDnf(strict, f.g1, f.g2).degenerate);
}

TEST(AcEquivalenceTest, ExecutorOnTheDnfMatchesTheBaseline) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    const DataGraph g1 = testing::RandomGraph(rng, 30 + rng() % 50, 90, "x");
    const DataGraph g2 = testing::RandomGraph(rng, 30 + rng() % 50, 90, "y");
    for (double t : {0.0, 0.3, 0.6, 0.9}) {
      for (bool glue : {false, true}) {
        for (bool one_graph : {false, true}) {
          const DataGraph& h = one_graph ? g1 : g2;
          const auto clusters = ClusterEdgeLabels(g1, h, {t, glue});
          const AcScheme ac = AcAsDnf(clusters, g1, h);
          const auto base = AcCandidates(g1, h, clusters, kNoPurge);
          if (ac.degenerate) {
            EXPECT_TRUE(base.pairs.empty());
            continue;
          }
          EXPECT_EQ(ExecuteScheme(g1, h, ac.scheme, kNoPurge).pairs,
                    base.pairs);
        }
      }
    }
  }
}

}  // namespace
}  // namespace dnfblock
