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

// Blocking quality: pairs completeness, reduction ratio and their F-score.

#ifndef DNFBLOCK_METRICS_H_
#define DNFBLOCK_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dnfblock/executor.h"
#include "dnfblock/graph.h"
#include "json.hpp"

namespace dnfblock {

// kSquare: |V|^2 in one-graph mode, |V1||V2| otherwise.
// kExact: |V|(|V|-1)/2 in one-graph mode, |V1||V2| otherwise.
enum class RrDenominator { kSquare, kExact };

RrDenominator ParseRrDenominator(std::string_view name);
std::string_view RrDenominatorName(RrDenominator d);

inline constexpr int kReportVersion = 1;

struct MetricsReport {
  RrDenominator denominator = RrDenominator::kSquare;
  double pc = 0.0;
  double rr = 0.0;  // under `denominator`
  double rr_square = 0.0;
  double rr_exact = 0.0;
  double fscore = 0.0;
  std::size_t candidate_count = 0;
  std::size_t true_links = 0;
  std::size_t links_found = 0;
  std::size_t pair_space = 0;  // under `denominator`
  std::optional<double> rho;
  std::vector<std::pair<std::string, double>> runtime_ms;  // stage order

  nlohmann::json ToJson() const;
  std::string ToTable() const;
};

std::size_t PairSpace(const DataGraph& g1, const DataGraph& g2,
                      RrDenominator d);

// 2 pc rr / (pc + rr), or 0 when both are 0.
double FScore(double pc, double rr);

// Truth pairs are validated (known nodes, no one-graph self pairs) and
// deduplicated. Throws kInvalidArgument for an empty truth set.
MetricsReport ComputeMetrics(const CandidateSet& candidates,
                             std::vector<NodePair> truth, const DataGraph& g1,
                             const DataGraph& g2,
                             RrDenominator denominator = RrDenominator::kSquare);

// Negative fraction |N| / (|N| + |P|) of a labeled pair sample.
double Rho(std::size_t positives, std::size_t negatives);

}  // namespace dnfblock

#endif  // DNFBLOCK_METRICS_H_
