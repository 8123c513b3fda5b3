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

// Pair files: training sets (id1, id2, 1|0), truth and candidate pairs
// (id1, id2). Ids are external node ids, TSV-escaped.

#ifndef DNFBLOCK_PAIRS_IO_H_
#define DNFBLOCK_PAIRS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dnfblock/graph.h"
#include "dnfblock/learner.h"

namespace dnfblock {

// Blank lines and lines starting with '#' are skipped. Unknown ids and
// malformed lines throw kParse with the line number.
std::vector<NodePair> ReadPairs(std::istream& in, const DataGraph& g1,
                                const DataGraph& g2);
TrainingSet ReadTrainingSet(std::istream& in, const DataGraph& g1,
                            const DataGraph& g2);

void WritePairs(std::ostream& out, const std::vector<NodePair>& pairs,
                const DataGraph& g1, const DataGraph& g2);
void WriteTrainingSet(std::ostream& out, const TrainingSet& train,
                      const DataGraph& g1, const DataGraph& g2);

std::vector<NodePair> ReadPairsFile(const std::filesystem::path& path,
                                    const DataGraph& g1, const DataGraph& g2);
TrainingSet ReadTrainingFile(const std::filesystem::path& path,
                             const DataGraph& g1, const DataGraph& g2);

}  // namespace dnfblock

#endif  // DNFBLOCK_PAIRS_IO_H_
