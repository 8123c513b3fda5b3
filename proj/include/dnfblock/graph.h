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

// Directed, labeled, attributed data graphs and trail enumeration.

#ifndef DNFBLOCK_GRAPH_H_
#define DNFBLOCK_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dnfblock {

using NodeId = std::uint32_t;
using EdgeLabelId = std::uint32_t;
using LabelSequence = std::vector<std::string>;

// One-graph: links live in V x V and a single graph is passed on both
// sides. Two-graph: links live in V1 x V2.
enum class Scenario { kOneGraph, kTwoGraph };

struct NodePair {
  NodeId first = 0;
  NodeId second = 0;

  auto operator<=>(const NodePair&) const = default;
};

// Orders the pair as (min, max); used for one-graph pair sets.
inline NodePair Canonical(NodePair p) {
  return p.first <= p.second ? p : NodePair{p.second, p.first};
}

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  std::string label;

  auto operator<=>(const Edge&) const = default;
};

struct OutEdge {
  EdgeLabelId label = 0;
  NodeId target = 0;

  auto operator<=>(const OutEdge&) const = default;
};

// Immutable data graph: nodes, labeled directed edges, node labels,
// attribute sets with an optional partial order, and the three
// vocabularies. Build one with GraphBuilder or LoadGraph.
class DataGraph {
 public:
  DataGraph() = default;

  std::size_t num_nodes() const { return external_ids_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  const std::string& external_id(NodeId v) const { return external_ids_[v]; }
  std::optional<NodeId> FindNode(std::string_view external_id) const;

  const std::string& node_label(NodeId v) const { return labels_[v]; }
  // Sorted, duplicate free.
  const std::vector<std::string>& attributes(NodeId v) const {
    return attributes_[v];
  }

  // Out-edges of v sorted by (label id, target).
  std::span<const OutEdge> out_edges(NodeId v) const { return out_[v]; }
  // Targets reachable from v over one edge with the given label.
  std::span<const OutEdge> out_edges(NodeId v, EdgeLabelId label) const;

  std::optional<EdgeLabelId> FindEdgeLabel(std::string_view label) const;
  const std::string& edge_label_name(EdgeLabelId id) const {
    return edge_label_names_[id];
  }
  std::size_t num_edge_labels() const { return edge_label_names_.size(); }

  // Every edge, sorted by (source, target, label).
  std::vector<Edge> edges() const;

  const std::set<std::string>& node_vocabulary() const { return vocab_nodes_; }
  const std::set<std::string>& edge_vocabulary() const { return vocab_edges_; }
  const std::set<std::string>& attribute_vocabulary() const {
    return vocab_attrs_;
  }

  // Transitive closure of the declared (child, parent) attribute pairs.
  const std::set<std::pair<std::string, std::string>>& attribute_order()
      const {
    return attribute_order_;
  }
  bool IsSubAttribute(const std::string& child,
                      const std::string& ancestor) const {
    return attribute_order_.contains({child, ancestor});
  }

  bool contains(NodeId v) const { return v < external_ids_.size(); }

 private:
  friend class GraphBuilder;

  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, NodeId> id_index_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::string>> attributes_;
  std::vector<std::vector<OutEdge>> out_;
  std::size_t num_edges_ = 0;
  std::vector<std::string> edge_label_names_;
  std::unordered_map<std::string, EdgeLabelId> edge_label_index_;
  std::set<std::string> vocab_nodes_;
  std::set<std::string> vocab_edges_;
  std::set<std::string> vocab_attrs_;
  std::set<std::pair<std::string, std::string>> attribute_order_;
};

// Accumulates nodes, edges and attributes. Node ids are assigned densely in
// first-appearance order; duplicate edges and attributes collapse.
class GraphBuilder {
 public:
  // Returns the existing id when the external id is already known.
  NodeId AddNode(std::string_view external_id);
  void SetLabel(NodeId v, std::string label);
  void AddAttribute(NodeId v, std::string attribute);
  void AddEdge(NodeId source, NodeId target, std::string_view label);
  void AddAttributeOrder(std::string child, std::string parent);

  std::size_t num_nodes() const { return graph_.external_ids_.size(); }

  // Throws Error(kParse) when the attribute order contains a cycle.
  DataGraph Build() &&;

 private:
  DataGraph graph_;
  std::vector<std::set<OutEdge>> out_;
  std::vector<std::set<std::string>> attributes_;
  std::vector<std::pair<std::string, std::string>> order_;
};

enum class GraphFormat { kTsvEdges, kTriples };

GraphFormat ParseGraphFormat(std::string_view name);

struct GraphFiles {
  GraphFormat format = GraphFormat::kTsvEdges;
  std::filesystem::path edges;
  // tsv-edges only: node<TAB>label<TAB>attr1,attr2,...
  std::optional<std::filesystem::path> nodes;
  // child_attr<TAB>parent_attr, either format.
  std::optional<std::filesystem::path> hierarchy;
  std::string type_predicate = "type";
};

DataGraph LoadGraph(const GraphFiles& files);

// Stream-level parsers; `nodes` and `hierarchy` may be null. The node file
// is read before the edge file so that its order fixes node ids.
DataGraph ParseTsvGraph(std::istream& edges, std::istream* nodes,
                        std::istream* hierarchy);
DataGraph ParseTriples(std::istream& triples, std::istream* hierarchy,
                       std::string_view type_predicate = "type");

// Writes the tsv-edges representation. Loading the three outputs back with
// ParseTsvGraph reproduces the graph with identical node ids.
void WriteTsvGraph(const DataGraph& g, std::ostream& edges,
                   std::ostream& nodes, std::ostream& hierarchy);

struct TrailLimits {
  std::size_t max_length = 2;
  std::size_t max_trails = 10000;
};

// node_0, label_1, node_1, ..., label_n, node_n.
struct Trail {
  std::vector<NodeId> nodes;
  LabelSequence labels;

  NodeId last() const { return nodes.back(); }
  auto operator<=>(const Trail&) const = default;
};

// All trails starting at v whose edge labels spell out `labels` exactly.
// Nodes may repeat. Sorted by node sequence. Throws kInvalidArgument for an
// empty or over-long sequence and kLimitExceeded past limits.max_trails.
std::vector<Trail> ValidTrails(const DataGraph& g, NodeId v,
                               const LabelSequence& labels,
                               const TrailLimits& limits = {});

// Set of terminating nodes, sorted.
std::vector<NodeId> LastNodes(std::span<const Trail> trails);

// Same result as LastNodes(ValidTrails(...)) but computed on the frontier,
// counting trails without materializing them. An empty sequence yields {v}.
std::vector<NodeId> TrailEnds(const DataGraph& g, NodeId v,
                              const LabelSequence& labels,
                              const TrailLimits& limits = {});

}  // namespace dnfblock

#endif  // DNFBLOCK_GRAPH_H_
