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

#include "dnfblock/graph.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dnfblock/error.h"
#include "dnfblock/tsv.h"

namespace dnfblock {

namespace {

[[noreturn]] void ParseFailure(std::string_view what, std::size_t line,
                               std::string_view detail) {
  std::ostringstream msg;
  msg << what << " line " << line << ": " << detail;
  throw Error(ErrorCode::kParse, msg.str());
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void ReadHierarchy(std::istream& in, GraphBuilder& builder) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      ParseFailure("hierarchy", line_no, "expected child<TAB>parent");
    }
    builder.AddAttributeOrder(Unescape(fields[0]), Unescape(fields[1]));
  }
}

}  // namespace

std::optional<NodeId> DataGraph::FindNode(std::string_view external_id) const {
  auto it = id_index_.find(std::string(external_id));
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const OutEdge> DataGraph::out_edges(NodeId v,
                                              EdgeLabelId label) const {
  const auto& all = out_[v];
  auto lo = std::lower_bound(all.begin(), all.end(), OutEdge{label, 0});
  auto hi = std::lower_bound(lo, all.end(), OutEdge{label + 1, 0});
  return {lo, hi};
}

std::optional<EdgeLabelId> DataGraph::FindEdgeLabel(
    std::string_view label) const {
  auto it = edge_label_index_.find(std::string(label));
  if (it == edge_label_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> DataGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges_);
  for (NodeId v = 0; v < out_.size(); ++v) {
    for (const OutEdge& e : out_[v]) {
      result.push_back({v, e.target, edge_label_names_[e.label]});
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

NodeId GraphBuilder::AddNode(std::string_view external_id) {
  std::string key(external_id);
  auto [it, inserted] = graph_.id_index_.try_emplace(
      key, static_cast<NodeId>(graph_.external_ids_.size()));
  if (inserted) {
    graph_.external_ids_.push_back(std::move(key));
    graph_.labels_.emplace_back();
    out_.emplace_back();
    attributes_.emplace_back();
  }
  return it->second;
}

void GraphBuilder::SetLabel(NodeId v, std::string label) {
  graph_.labels_.at(v) = std::move(label);
}

void GraphBuilder::AddAttribute(NodeId v, std::string attribute) {
  attributes_.at(v).insert(std::move(attribute));
}

void GraphBuilder::AddEdge(NodeId source, NodeId target,
                           std::string_view label) {
  if (source >= out_.size() || target >= out_.size()) {
    throw Error(ErrorCode::kNotFound, "edge endpoint is not a node");
  }
  std::string key(label);
  auto [it, inserted] = graph_.edge_label_index_.try_emplace(
      key, static_cast<EdgeLabelId>(graph_.edge_label_names_.size()));
  if (inserted) graph_.edge_label_names_.push_back(std::move(key));
  out_[source].insert({it->second, target});
}

void GraphBuilder::AddAttributeOrder(std::string child, std::string parent) {
  order_.emplace_back(std::move(child), std::move(parent));
}

DataGraph GraphBuilder::Build() && {
  DataGraph g = std::move(graph_);
  const std::size_t n = g.external_ids_.size();
  g.out_.resize(n);
  g.attributes_.resize(n);
  g.num_edges_ = 0;
  for (std::size_t v = 0; v < n; ++v) {
    g.out_[v].assign(out_[v].begin(), out_[v].end());
    g.num_edges_ += g.out_[v].size();
    g.attributes_[v].assign(attributes_[v].begin(), attributes_[v].end());
    for (const auto& a : g.attributes_[v]) g.vocab_attrs_.insert(a);
    if (!g.labels_[v].empty()) g.vocab_nodes_.insert(g.labels_[v]);
  }
  // Only labels that ended up on an edge belong to the vocabulary.
  for (const auto& edges : g.out_) {
    for (const OutEdge& e : edges) {
      g.vocab_edges_.insert(g.edge_label_names_[e.label]);
    }
  }

  std::map<std::string, std::set<std::string>> parents;
  for (const auto& [child, parent] : order_) {
    parents[child].insert(parent);
    g.vocab_attrs_.insert(child);
    g.vocab_attrs_.insert(parent);
  }
  for (const auto& [start, direct] : parents) {
    std::set<std::string> seen;
    std::vector<std::string> stack(direct.begin(), direct.end());
    while (!stack.empty()) {
      std::string a = std::move(stack.back());
      stack.pop_back();
      if (a == start) {
        throw Error(ErrorCode::kParse,
                    "attribute order has a cycle through '" + start + "'");
      }
      if (!seen.insert(a).second) continue;
      auto it = parents.find(a);
      if (it != parents.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
    for (const auto& ancestor : seen) {
      g.attribute_order_.emplace(start, ancestor);
    }
  }
  return g;
}

GraphFormat ParseGraphFormat(std::string_view name) {
  if (name == "tsv-edges") return GraphFormat::kTsvEdges;
  if (name == "triples") return GraphFormat::kTriples;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown graph format '" + std::string(name) + "'");
}

DataGraph ParseTsvGraph(std::istream& edges, std::istream* nodes,
                        std::istream* hierarchy) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  if (nodes != nullptr) {
    while (std::getline(*nodes, line)) {
      ++line_no;
      StripCarriageReturn(line);
      if (line.empty()) continue;
      auto fields = SplitTabs(line);
      if (fields.size() > 3 || fields[0].empty()) {
        ParseFailure("nodes", line_no, "expected node<TAB>label<TAB>attrs");
      }
      const NodeId v = builder.AddNode(Unescape(fields[0]));
      if (fields.size() >= 2) builder.SetLabel(v, Unescape(fields[1]));
      if (fields.size() == 3) {
        std::stringstream attrs(fields[2]);
        std::string attr;
        while (std::getline(attrs, attr, ',')) {
          if (!attr.empty()) builder.AddAttribute(v, Unescape(attr));
        }
      }
    }
  }
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      ParseFailure("edges", line_no, "expected source<TAB>label<TAB>target");
    }
    const NodeId s = builder.AddNode(Unescape(fields[0]));
    const NodeId t = builder.AddNode(Unescape(fields[2]));
    builder.AddEdge(s, t, Unescape(fields[1]));
  }
  if (hierarchy != nullptr) ReadHierarchy(*hierarchy, builder);
  return std::move(builder).Build();
}

namespace {

struct RdfTerm {
  std::string text;
  bool literal = false;
};

// Reads one subject/predicate/object term starting at `pos`.
bool NextTerm(std::string_view line, std::size_t& pos, RdfTerm& term,
              std::size_t line_no) {
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(
                                  line[pos]))) {
    ++pos;
  }
  if (pos >= line.size()) return false;
  term = RdfTerm{};
  if (line[pos] == '"') {
    term.literal = true;
    ++pos;
    bool closed = false;
    while (pos < line.size()) {
      const char c = line[pos++];
      if (c == '\\' && pos < line.size()) {
        const char e = line[pos++];
        term.text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else if (c == '"') {
        closed = true;
        break;
      } else {
        term.text += c;
      }
    }
    if (!closed) ParseFailure("triples", line_no, "unterminated literal");
    // Language tags and datatypes are accepted and dropped.
    while (pos < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    return true;
  }
  const std::size_t start = pos;
  while (pos < line.size() &&
         !std::isspace(static_cast<unsigned char>(line[pos]))) {
    ++pos;
  }
  term.text = std::string(line.substr(start, pos - start));
  return true;
}

}  // namespace

DataGraph ParseTriples(std::istream& triples, std::istream* hierarchy,
                       std::string_view type_predicate) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(triples, line)) {
    ++line_no;
    StripCarriageReturn(line);
    std::size_t pos = 0;
    std::vector<RdfTerm> terms;
    RdfTerm term;
    while (NextTerm(line, pos, term, line_no)) terms.push_back(term);
    if (terms.empty() || (!terms[0].literal && terms[0].text[0] == '#')) {
      continue;
    }
    if (!terms.back().literal && terms.back().text == ".") terms.pop_back();
    if (terms.size() != 3) {
      ParseFailure("triples", line_no, "expected subject predicate object .");
    }
    const RdfTerm& subject = terms[0];
    const RdfTerm& predicate = terms[1];
    const RdfTerm& object = terms[2];
    if (subject.literal || predicate.literal) {
      ParseFailure("triples", line_no, "literal in subject or predicate");
    }
    const NodeId s = builder.AddNode(subject.text);
    builder.SetLabel(s, subject.text);
    if (predicate.text == type_predicate) {
      builder.AddAttribute(s, object.text);
      continue;
    }
    NodeId o;
    if (object.literal) {
      o = builder.AddNode("\"" + object.text + "\"");
      builder.SetLabel(o, object.text);
    } else {
      o = builder.AddNode(object.text);
      builder.SetLabel(o, object.text);
    }
    builder.AddEdge(s, o, predicate.text);
  }
  if (hierarchy != nullptr) ReadHierarchy(*hierarchy, builder);
  return std::move(builder).Build();
}

DataGraph LoadGraph(const GraphFiles& files) {
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) {
      throw Error(ErrorCode::kNotFound, "cannot open '" + p.string() + "'");
    }
    return in;
  };
  std::ifstream edges = open(files.edges);
  std::optional<std::ifstream> hierarchy;
  if (files.hierarchy) hierarchy = open(*files.hierarchy);
  std::istream* hierarchy_ptr = hierarchy ? &*hierarchy : nullptr;
  if (files.format == GraphFormat::kTriples) {
    return ParseTriples(edges, hierarchy_ptr, files.type_predicate);
  }
  std::optional<std::ifstream> nodes;
  if (files.nodes) nodes = open(*files.nodes);
  return ParseTsvGraph(edges, nodes ? &*nodes : nullptr, hierarchy_ptr);
}

void WriteTsvGraph(const DataGraph& g, std::ostream& edges,
                   std::ostream& nodes, std::ostream& hierarchy) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    nodes << Escape(g.external_id(v)) << '\t' << Escape(g.node_label(v))
          << '\t';
    bool first = true;
    for (const auto& a : g.attributes(v)) {
      if (!first) nodes << ',';
      nodes << Escape(a);
      first = false;
    }
    nodes << '\n';
  }
  for (const Edge& e : g.edges()) {
    edges << Escape(g.external_id(e.source)) << '\t' << Escape(e.label)
          << '\t' << Escape(g.external_id(e.target)) << '\n';
  }
  for (const auto& [child, parent] : g.attribute_order()) {
    hierarchy << Escape(child) << '\t' << Escape(parent) << '\n';
  }
}

namespace {

void CheckSequence(const LabelSequence& labels, const TrailLimits& limits) {
  if (labels.size() > limits.max_length) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge-label sequence of length " +
                    std::to_string(labels.size()) + " exceeds the trail cap " +
                    std::to_string(limits.max_length));
  }
}

[[noreturn]] void TooManyTrails(const DataGraph& g, NodeId v,
                                const TrailLimits& limits) {
  throw Error(ErrorCode::kLimitExceeded,
              "more than " + std::to_string(limits.max_trails) +
                  " valid trails from node '" + g.external_id(v) + "'");
}

}  // namespace

std::vector<Trail> ValidTrails(const DataGraph& g, NodeId v,
                               const LabelSequence& labels,
                               const TrailLimits& limits) {
  if (labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a trail needs at least one edge label");
  }
  CheckSequence(labels, limits);
  std::vector<EdgeLabelId> ids;
  for (const auto& l : labels) {
    auto id = g.FindEdgeLabel(l);
    if (!id) return {};
    ids.push_back(*id);
  }
  std::vector<Trail> result;
  std::vector<NodeId> prefix{v};
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == ids.size()) {
      if (result.size() == limits.max_trails) TooManyTrails(g, v, limits);
      result.push_back({prefix, labels});
      return;
    }
    for (const OutEdge& e : g.out_edges(prefix.back(), ids[depth])) {
      prefix.push_back(e.target);
      extend(depth + 1);
      prefix.pop_back();
    }
  };
  extend(0);
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<NodeId> LastNodes(std::span<const Trail> trails) {
  std::vector<NodeId> ends;
  ends.reserve(trails.size());
  for (const Trail& t : trails) ends.push_back(t.last());
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  return ends;
}

std::vector<NodeId> TrailEnds(const DataGraph& g, NodeId v,
                              const LabelSequence& labels,
                              const TrailLimits& limits) {
  CheckSequence(labels, limits);
  // frontier node -> number of trails ending there, saturated past the cap
  const std::size_t saturate = limits.max_trails + 1;
  std::map<NodeId, std::size_t> frontier{{v, 1}};
  for (const auto& l : labels) {
    auto id = g.FindEdgeLabel(l);
    if (!id) return {};
    std::map<NodeId, std::size_t> next;
    for (const auto& [node, count] : frontier) {
      for (const OutEdge& e : g.out_edges(node, *id)) {
        std::size_t& c = next[e.target];
        c = std::min(saturate, c + count);
      }
    }
    if (next.empty()) return {};
    frontier = std::move(next);
  }
  std::size_t total = 0;
  std::vector<NodeId> ends;
  ends.reserve(frontier.size());
  for (const auto& [node, count] : frontier) {
    total = std::min(saturate, total + count);
    ends.push_back(node);
  }
  if (!labels.empty() && total > limits.max_trails) {
    TooManyTrails(g, v, limits);
  }
  return ends;
}

}  // namespace dnfblock
