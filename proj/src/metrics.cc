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

#include "dnfblock/metrics.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dnfblock/error.h"

namespace dnfblock {

RrDenominator ParseRrDenominator(std::string_view name) {
  // "paper" is the interface alias of "square".
  if (name == "square" || name == "paper") return RrDenominator::kSquare;
  if (name == "exact") return RrDenominator::kExact;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown denominator '" + std::string(name) + "'");
}

std::string_view RrDenominatorName(RrDenominator d) {
  return d == RrDenominator::kSquare ? "square" : "exact";
}

std::size_t PairSpace(const DataGraph& g1, const DataGraph& g2,
                      RrDenominator d) {
  if (&g1 != &g2) return g1.num_nodes() * g2.num_nodes();
  const std::size_t n = g1.num_nodes();
  if (d == RrDenominator::kSquare) return n * n;
  return n < 2 ? 0 : n * (n - 1) / 2;
}

double FScore(double pc, double rr) {
  return pc + rr > 0.0 ? 2.0 * pc * rr / (pc + rr) : 0.0;
}

double Rho(std::size_t positives, std::size_t negatives) {
  const std::size_t total = positives + negatives;
  return total == 0 ? 0.0 : static_cast<double>(negatives) / total;
}

MetricsReport ComputeMetrics(const CandidateSet& candidates,
                             std::vector<NodePair> truth, const DataGraph& g1,
                             const DataGraph& g2, RrDenominator denominator) {
  const bool one_graph = &g1 == &g2;
  if (truth.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pairs completeness is undefined for an empty truth set");
  }
  for (NodePair& p : truth) {
    if (!g1.contains(p.first) || !g2.contains(p.second)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "truth pair references an unknown node");
    }
    if (one_graph) {
      if (p.first == p.second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "truth pair pairs a node with itself");
      }
      p = Canonical(p);
    }
  }
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());

  MetricsReport r;
  r.denominator = denominator;
  r.candidate_count = candidates.size();
  r.true_links = truth.size();
  for (NodePair p : truth) r.links_found += candidates.contains(p) ? 1 : 0;
  r.pc = static_cast<double>(r.links_found) / r.true_links;
  auto rr = [&](RrDenominator d) {
    const std::size_t space = PairSpace(g1, g2, d);
    if (space == 0) return 0.0;
    const double v =
        1.0 - static_cast<double>(r.candidate_count) / static_cast<double>(space);
    return std::clamp(v, 0.0, 1.0);
  };
  r.rr_square = rr(RrDenominator::kSquare);
  r.rr_exact = rr(RrDenominator::kExact);
  r.rr = denominator == RrDenominator::kSquare ? r.rr_square : r.rr_exact;
  r.pair_space = PairSpace(g1, g2, denominator);
  r.fscore = FScore(r.pc, r.rr);
  return r;
}

nlohmann::json MetricsReport::ToJson() const {
  nlohmann::json j;
  j["v"] = kReportVersion;
  j["denominator"] = RrDenominatorName(denominator);
  j["pc"] = pc;
  j["rr"] = rr;
  j["rr_square"] = rr_square;
  j["rr_exact"] = rr_exact;
  j["fscore"] = fscore;
  j["candidate_count"] = candidate_count;
  j["true_links"] = true_links;
  j["links_found"] = links_found;
  j["pair_space"] = pair_space;
  j["rho"] = rho ? nlohmann::json(*rho) : nlohmann::json(nullptr);
  nlohmann::json times = nlohmann::json::object();
  for (const auto& [stage, ms] : runtime_ms) times[stage] = ms;
  j["runtime_ms"] = std::move(times);
  return j;
}

std::string MetricsReport::ToTable() const {
  std::vector<std::pair<std::string, std::string>> rows;
  auto fixed = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return std::string(buf);
  };
  rows.emplace_back("PC", fixed(pc));
  rows.emplace_back("RR (square)", fixed(rr_square));
  rows.emplace_back("RR (exact)", fixed(rr_exact));
  rows.emplace_back("F-score (" + std::string(RrDenominatorName(denominator)) +
                        ")",
                    fixed(fscore));
  rows.emplace_back("candidates", std::to_string(candidate_count));
  rows.emplace_back("true links", std::to_string(true_links));
  rows.emplace_back("links found", std::to_string(links_found));
  rows.emplace_back("pair space", std::to_string(pair_space));
  if (rho) rows.emplace_back("rho", fixed(*rho));
  for (const auto& [stage, ms] : runtime_ms) {
    rows.emplace_back("time " + stage + " (ms)", fixed(ms));
  }
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream out;
  for (const auto& [name, value] : rows) {
    out << name << std::string(width - name.size() + 2, ' ') << value << '\n';
  }
  return out.str();
}

}  // namespace dnfblock
