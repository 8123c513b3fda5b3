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

#include "dnfblock/pairs_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "dnfblock/error.h"
#include "dnfblock/tsv.h"

namespace dnfblock {

namespace {

// Calls fn(line_number, fields) for every content line.
template <typename Fn>
void ForEachRecord(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fn(number, SplitTabs(line));
  }
}

NodeId Lookup(const DataGraph& g, const std::string& raw, std::size_t line) {
  const std::string id = Unescape(raw);
  auto v = g.FindNode(id);
  if (!v) {
    throw Error(ErrorCode::kParse, "pair file line " + std::to_string(line) +
                                       ": unknown node '" + id + "'");
  }
  return *v;
}

std::ifstream Open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  }
  return in;
}

}  // namespace

std::vector<NodePair> ReadPairs(std::istream& in, const DataGraph& g1,
                                const DataGraph& g2) {
  std::vector<NodePair> pairs;
  ForEachRecord(in, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() != 2) {
      throw Error(ErrorCode::kParse, "pair file line " + std::to_string(line) +
                                         ": expected 2 fields");
    }
    pairs.push_back({Lookup(g1, f[0], line), Lookup(g2, f[1], line)});
  });
  return pairs;
}

TrainingSet ReadTrainingSet(std::istream& in, const DataGraph& g1,
                            const DataGraph& g2) {
  TrainingSet train;
  ForEachRecord(in, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() != 3 || (f[2] != "1" && f[2] != "0")) {
      throw Error(ErrorCode::kParse,
                  "training file line " + std::to_string(line) +
                      ": expected id1, id2 and a 1 or 0 label");
    }
    const NodePair p{Lookup(g1, f[0], line), Lookup(g2, f[1], line)};
    (f[2] == "1" ? train.positives : train.negatives).push_back(p);
  });
  return train;
}

void WritePairs(std::ostream& out, const std::vector<NodePair>& pairs,
                const DataGraph& g1, const DataGraph& g2) {
  for (NodePair p : pairs) {
    out << Escape(g1.external_id(p.first)) << '\t'
        << Escape(g2.external_id(p.second)) << '\n';
  }
}

void WriteTrainingSet(std::ostream& out, const TrainingSet& train,
                      const DataGraph& g1, const DataGraph& g2) {
  for (const auto* list : {&train.positives, &train.negatives}) {
    const char label = list == &train.positives ? '1' : '0';
    for (NodePair p : *list) {
      out << Escape(g1.external_id(p.first)) << '\t'
          << Escape(g2.external_id(p.second)) << '\t' << label << '\n';
    }
  }
}

std::vector<NodePair> ReadPairsFile(const std::filesystem::path& path,
                                    const DataGraph& g1, const DataGraph& g2) {
  std::ifstream in = Open(path);
  return ReadPairs(in, g1, g2);
}

TrainingSet ReadTrainingFile(const std::filesystem::path& path,
                             const DataGraph& g1, const DataGraph& g2) {
  std::ifstream in = Open(path);
  return ReadTrainingSet(in, g1, g2);
}

}  // namespace dnfblock
