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

#include <functional>
#include <random>
#include <set>
#include <tuple>
#include <sstream>

#include <gtest/gtest.h>

#include "dnfblock/error.h"
#include "dnfblock/graph.h"
#include "fixtures.h"

namespace dnfblock {
namespace {

using testing::MovieGraph;
using testing::Node;

DataGraph FromTsv(const std::string& edges, const std::string& nodes = "",
                  const std::string& hierarchy = "") {
  std::istringstream e(edges), n(nodes), h(hierarchy);
  return ParseTsvGraph(e, nodes.empty() ? nullptr : &n,
                       hierarchy.empty() ? nullptr : &h);
}

void ExpectSameGraph(const DataGraph& a, const DataGraph& b) {
  ASSERT_EQ(a.num_nodes(), b.num_nodes());
  for (NodeId v = 0; v < a.num_nodes(); ++v) {
    EXPECT_EQ(a.external_id(v), b.external_id(v));
    EXPECT_EQ(a.node_label(v), b.node_label(v));
    EXPECT_EQ(a.attributes(v), b.attributes(v));
  }
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.attribute_order(), b.attribute_order());
  EXPECT_EQ(a.node_vocabulary(), b.node_vocabulary());
  EXPECT_EQ(a.edge_vocabulary(), b.edge_vocabulary());
  EXPECT_EQ(a.attribute_vocabulary(), b.attribute_vocabulary());
}

TEST(GraphTest, TriplesAssignAttributesFromTypeRows) {
  const DataGraph g = MovieGraph();
  EXPECT_EQ(g.attributes(Node(g, "John_Doe")),
            (std::vector<std::string>{"Actor", "Guitarist"}));
  EXPECT_EQ(g.attributes(Node(g, "Jurassic_Park_4")),
            (std::vector<std::string>{"Movie"}));
  // Type rows are attributes, not edges.
  EXPECT_FALSE(g.FindEdgeLabel("type").has_value());
  EXPECT_EQ(g.num_edges(), 6u);
}

TEST(GraphTest, QuotedObjectsBecomeLabeledLeaves) {
  const DataGraph g = MovieGraph();
  const NodeId date = Node(g, "\"03-01-1980\"");
  EXPECT_EQ(g.node_label(date), "03-01-1980");
  EXPECT_TRUE(g.out_edges(date).empty());
  EXPECT_TRUE(g.attributes(date).empty());
}

TEST(GraphTest, CustomTypePredicate) {
  std::istringstream in("a isA Thing .\na type b .\n");
  const DataGraph g = ParseTriples(in, nullptr, "isA");
  EXPECT_EQ(g.attributes(Node(g, "a")), (std::vector<std::string>{"Thing"}));
  EXPECT_TRUE(g.FindEdgeLabel("type").has_value());
}

TEST(GraphTest, EmptyInputGivesEmptyGraph) {
  const DataGraph g = FromTsv("");
  EXPECT_EQ(g.num_nodes(), 0u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_TRUE(g.node_vocabulary().empty());
  EXPECT_TRUE(g.edge_vocabulary().empty());
  EXPECT_TRUE(g.attribute_vocabulary().empty());
}

TEST(GraphTest, DuplicateEdgeLinesCollapse) {
  const DataGraph g = FromTsv("a\tr\tb\nb\tr\tc\na\tr\tb\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(GraphTest, NodeIdsFollowFirstAppearance) {
  const DataGraph g = FromTsv("x\tr\ty\n", "z\tZed\tA,B\ny\t\t\n");
  EXPECT_EQ(Node(g, "z"), 0u);
  EXPECT_EQ(Node(g, "y"), 1u);
  EXPECT_EQ(Node(g, "x"), 2u);
  EXPECT_EQ(g.node_label(0), "Zed");
  EXPECT_EQ(g.node_label(1), "");
  EXPECT_EQ(g.attributes(0), (std::vector<std::string>{"A", "B"}));
}

TEST(GraphTest, MalformedLineReportsLineNumber) {
  try {
    FromTsv("a\tr\tb\nbroken line\n");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(GraphTest, AttributeOrderIsTransitiveAndRejectsCycles) {
  const DataGraph g =
      FromTsv("", "", "Actor\tArtist\nArtist\tPerson\n");
  EXPECT_TRUE(g.IsSubAttribute("Actor", "Person"));
  EXPECT_FALSE(g.IsSubAttribute("Person", "Actor"));
  EXPECT_FALSE(g.IsSubAttribute("Actor", "Actor"));
  try {
    FromTsv("", "", "A\tB\nB\tC\nC\tA\n");
    FAIL() << "expected a cycle error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(GraphTest, TsvRoundTripPreservesEverything) {
  const DataGraph g = MovieGraph();
  std::ostringstream e, n, h;
  WriteTsvGraph(g, e, n, h);
  ExpectSameGraph(g, FromTsv(e.str(), n.str(), h.str()));
}

TEST(GraphTest, TsvRoundTripEscapesControlCharacters) {
  GraphBuilder b;
  const NodeId a = b.AddNode("a\tb");
  const NodeId c = b.AddNode("back\\slash");
  b.SetLabel(a, "line\nbreak");
  b.AddEdge(a, c, "has\ttab");
  b.AddAttributeOrder("X", "Y");
  const DataGraph g = std::move(b).Build();
  std::ostringstream e, n, h;
  WriteTsvGraph(g, e, n, h);
  ExpectSameGraph(g, FromTsv(e.str(), n.str(), h.str()));
}

TEST(GraphTest, RandomGraphsRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const DataGraph g = testing::RandomGraph(rng, 15, 30, "n");
    std::ostringstream e, n, h;
    WriteTsvGraph(g, e, n, h);
    ExpectSameGraph(g, FromTsv(e.str(), n.str(), h.str()));
  }
}

TEST(TrailTest, SingleLabelTrail) {
  const DataGraph g = MovieGraph();
  const auto trails = ValidTrails(g, Node(g, "John_Doe"), {"actedIn"});
  ASSERT_EQ(trails.size(), 1u);
  EXPECT_EQ(trails[0].nodes,
            (std::vector<NodeId>{Node(g, "John_Doe"), Node(g, "Jurassic_Park_4")}));
  EXPECT_EQ(trails[0].labels, (LabelSequence{"actedIn"}));
  EXPECT_EQ(LastNodes(trails),
            (std::vector<NodeId>{Node(g, "Jurassic_Park_4")}));
}

TEST(TrailTest, MissingEdgeGivesNoTrail) {
  const DataGraph g = MovieGraph();
  EXPECT_TRUE(ValidTrails(g, Node(g, "Christine_Doe"), {"bornOn"}).empty());
  EXPECT_TRUE(ValidTrails(g, Node(g, "John_Doe"), {"unknownLabel"}).empty());
}

TEST(TrailTest, TooShortGraphGivesNoLengthTwoTrail) {
  const DataGraph g = FromTsv("a\tr\tb\nc\tr\td\n");
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    EXPECT_TRUE(ValidTrails(g, v, {"r", "r"}).empty());
  }
}

TEST(TrailTest, CyclesAreAllowed) {
  const DataGraph g = MovieGraph();
  const auto trails =
      ValidTrails(g, Node(g, "John_Doe"), {"marriedTo", "marriedTo"});
  ASSERT_EQ(trails.size(), 1u);
  EXPECT_EQ(trails[0].last(), Node(g, "John_Doe"));
}

TEST(TrailTest, LastNodesCollapsesDuplicates) {
  const DataGraph g = FromTsv("a\tr\tb\na\tr\tc\nb\ts\td\nc\ts\td\n");
  const auto trails = ValidTrails(g, Node(g, "a"), {"r", "s"});
  EXPECT_EQ(trails.size(), 2u);
  EXPECT_EQ(LastNodes(trails), (std::vector<NodeId>{Node(g, "d")}));
  EXPECT_TRUE(LastNodes({}).empty());
}

TEST(TrailTest, LimitsAreEnforced) {
  const DataGraph g = MovieGraph();
  const NodeId v = Node(g, "John_Doe");
  EXPECT_THROW(ValidTrails(g, v, {}), Error);
  EXPECT_THROW(ValidTrails(g, v, {"a", "b", "c"}), Error);
  GraphBuilder b;
  const NodeId hub = b.AddNode("hub");
  for (int i = 0; i < 200; ++i) {
    b.AddEdge(hub, b.AddNode("x" + std::to_string(i)), "r");
    b.AddEdge(b.AddNode("x" + std::to_string(i)), hub, "r");
  }
  const DataGraph star = std::move(b).Build();
  TrailLimits limits;
  limits.max_trails = 100;
  try {
    ValidTrails(star, hub, {"r", "r"}, limits);
    FAIL() << "expected the trail cap to trip";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLimitExceeded);
  }
}

// Enumerates every node sequence of the right length and keeps those whose
// consecutive steps are edges with the requested labels.
std::vector<Trail> BruteForceTrails(const DataGraph& g, NodeId v,
                                    const LabelSequence& labels) {
  std::set<std::tuple<NodeId, NodeId, std::string>> edges;
  for (const Edge& e : g.edges()) edges.emplace(e.source, e.target, e.label);
  std::vector<Trail> out;
  std::vector<NodeId> nodes{v};
  std::function<void()> extend = [&] {
    if (nodes.size() == labels.size() + 1) {
      out.push_back({nodes, labels});
      return;
    }
    for (NodeId w = 0; w < g.num_nodes(); ++w) {
      if (edges.contains({nodes.back(), w, labels[nodes.size() - 1]})) {
        nodes.push_back(w);
        extend();
        nodes.pop_back();
      }
    }
  };
  extend();
  std::sort(out.begin(), out.end());
  return out;
}

TEST(TrailTest, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> labels = {"p", "q", "r"};
  TrailLimits limits;
  limits.max_length = 3;
  for (int round = 0; round < 30; ++round) {
    const DataGraph g = testing::RandomGraph(rng, 20, 45, "n");
    for (NodeId v = 0; v < g.num_nodes(); v += 3) {
      for (std::size_t len = 1; len <= 3; ++len) {
        LabelSequence s;
        for (std::size_t i = 0; i < len; ++i) s.push_back(labels[rng() % 3]);
        auto trails = ValidTrails(g, v, s, limits);
        for (const Trail& t : trails) {
          EXPECT_EQ(t.nodes.front(), v);
          EXPECT_EQ(t.labels, s);
        }
        std::sort(trails.begin(), trails.end());
        EXPECT_EQ(trails, BruteForceTrails(g, v, s));
        EXPECT_EQ(TrailEnds(g, v, s, limits), LastNodes(trails));
      }
    }
  }
}

TEST(TrailTest, TrailEndsOfEmptySequenceIsTheNode) {
  const DataGraph g = MovieGraph();
  EXPECT_EQ(TrailEnds(g, 2, {}), (std::vector<NodeId>{2}));
}

}  // namespace
}  // namespace dnfblock
