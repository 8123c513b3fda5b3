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

// dnfblock: learn, execute and evaluate DNF blocking schemes.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dnfblock/ac_baseline.h"
#include "dnfblock/error.h"
#include "dnfblock/executor.h"
#include "dnfblock/extractors.h"
#include "dnfblock/graph.h"
#include "dnfblock/learner.h"
#include "dnfblock/metrics.h"
#include "dnfblock/pairs_io.h"
#include "dnfblock/predicates.h"
#include "dnfblock/scheme.h"
#include "dnfblock/synthetic.h"
#include "json.hpp"

namespace dnfblock {
namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

// Raised for flag combinations CLI11 cannot check on its own.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct GraphFlags {
  std::string graph1, nodes1, hierarchy1;
  std::string graph2, nodes2, hierarchy2;
  std::string format = "tsv-edges";
  std::string type_predicate = "type";

  void Add(CLI::App* app) {
    app->add_option("--graph1", graph1, "Edge or triple file of graph 1")
        ->required();
    app->add_option("--nodes1", nodes1, "Node file of graph 1 (tsv-edges)");
    app->add_option("--hierarchy1", hierarchy1,
                    "Attribute order of graph 1 (child<TAB>parent)");
    app->add_option("--graph2", graph2,
                    "Edge or triple file of graph 2; omit for one-graph mode");
    app->add_option("--nodes2", nodes2, "Node file of graph 2 (tsv-edges)");
    app->add_option("--hierarchy2", hierarchy2, "Attribute order of graph 2");
    app->add_option("--format", format, "Graph format")
        ->check(CLI::IsMember({"tsv-edges", "triples"}))
        ->capture_default_str();
    app->add_option("--type-predicate", type_predicate,
                    "Triple predicate that assigns attributes")
        ->capture_default_str();
  }
};

// Graph 1 and, in two-graph mode, graph 2.
struct Graphs {
  DataGraph g1;
  std::optional<DataGraph> g2_storage;

  const DataGraph& second() const { return g2_storage ? *g2_storage : g1; }
  bool one_graph() const { return !g2_storage; }
};

Graphs LoadGraphs(const GraphFlags& f) {
  auto files = [&](const std::string& edges, const std::string& nodes,
                   const std::string& hierarchy) {
    GraphFiles out;
    out.format = ParseGraphFormat(f.format);
    out.edges = edges;
    if (!nodes.empty()) out.nodes = nodes;
    if (!hierarchy.empty()) out.hierarchy = hierarchy;
    out.type_predicate = f.type_predicate;
    return out;
  };
  Graphs g;
  g.g1 = LoadGraph(files(f.graph1, f.nodes1, f.hierarchy1));
  if (!f.graph2.empty()) {
    g.g2_storage = LoadGraph(files(f.graph2, f.nodes2, f.hierarchy2));
  } else if (!f.nodes2.empty() || !f.hierarchy2.empty()) {
    throw ValidationError("--nodes2/--hierarchy2 need --graph2");
  }
  return g;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kNotFound, "cannot write '" + path.string() + "'");
  }
  return out;
}

void WriteJson(const std::string& path, const nlohmann::json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  OpenOut(path) << j.dump(2) << '\n';
}

// "inf" disables purging.
std::size_t ParsePurgeCap(const std::string& text) {
  if (text == "inf") return kNoPurge;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw ValidationError("--purge-cap must be a non-negative integer or inf");
  }
  return static_cast<std::size_t>(v);
}

void CheckScenario(const CompositeScheme& scheme, const Graphs& g) {
  const bool one = scheme.scenario == Scenario::kOneGraph;
  if (one != g.one_graph()) {
    throw ValidationError(std::string("scheme is ") +
                          std::string(ScenarioName(scheme.scenario)) +
                          " but " + (g.one_graph() ? "one graph" : "two graphs") +
                          " were given");
  }
}

nlohmann::json GraphSummary(const DataGraph& g) {
  return {{"nodes", g.num_nodes()},
          {"edges", g.num_edges()},
          {"edge_labels", g.edge_vocabulary().size()},
          {"attributes", g.attribute_vocabulary().size()},
          {"attribute_order_pairs", g.attribute_order().size()}};
}

void WriteStats(const std::string& path, const CandidateSet& c,
                const nlohmann::json& times) {
  if (path.empty()) return;
  WriteJson(path, {{"v", kReportVersion},
                   {"candidates", c.size()},
                   {"keys_joined", c.keys_joined},
                   {"keys_purged", c.keys_purged},
                   {"runtime_ms", times}});
}

int Run(int argc, char** argv) {
  CLI::App app{"Learn, execute and evaluate DNF blocking schemes"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load graphs and summarize");
  GraphFlags ingest_graphs;
  ingest_graphs.Add(ingest);
  std::string ingest_out;
  ingest->add_option("--out-dir", ingest_out,
                     "Write normalized tsv-edges files here");

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a composite DNF scheme");
  GraphFlags learn_graphs;
  learn_graphs.Add(learn);
  std::string train_path, scheme_out, learn_report;
  LearnerConfig config;
  double eta = -1.0;
  UniverseOptions universe_options;
  learn->add_option("--train", train_path, "Training pairs id1<TAB>id2<TAB>1|0")
      ->required();
  learn->add_option("--epsilon", config.epsilon,
                    "Minimum pairs completeness on training links, (0, 1]")
      ->capture_default_str();
  learn->add_option("--max-term-size", config.max_term_size,
                    "Predicates per conjunction")
      ->capture_default_str();
  learn->add_option("--max-terms", config.max_terms, "Terms per DNF")
      ->capture_default_str();
  learn->add_option("--eta", eta,
                    "Also decide whether the covered negative fraction is at "
                    "most eta");
  learn->add_option("--min-support", config.min_support,
                    "Training links needed to keep an attribute pair")
      ->capture_default_str();
  learn->add_option("--max-trail-len", universe_options.max_trail_len,
                    "Longest edge-label sequence in the universe")
      ->capture_default_str();
  learn->add_option("--max-universe", universe_options.max_size,
                    "Largest predicate universe")
      ->capture_default_str();
  learn->add_option("--out", scheme_out, "Scheme JSON output")->required();
  learn->add_option("--report", learn_report, "Learning summary JSON output");

  // block
  auto* block = app.add_subcommand("block", "Execute a scheme");
  GraphFlags block_graphs;
  block_graphs.Add(block);
  std::string block_scheme, block_out, block_stats;
  std::string purge_cap_text = "1000";
  bool oracle = false;
  std::size_t max_keys = IndexOptions{}.max_keys_per_term;
  block->add_option("--scheme", block_scheme, "Scheme JSON")->required();
  block->add_option("--purge-cap", purge_cap_text,
                    "Drop blocks emitting more pairs than this (or inf)")
      ->capture_default_str();
  block->add_option("--max-keys-per-term", max_keys,
                    "Key guard per node and term")
      ->capture_default_str();
  block->add_flag("--oracle", oracle,
                  "Evaluate every pair instead (quadratic, for verification)");
  block->add_option("--out", block_out, "Candidate pairs TSV")->required();
  block->add_option("--stats", block_stats, "Run statistics JSON output");

  // ac-block
  auto* ac = app.add_subcommand("ac-block", "Attribute Clustering baseline");
  GraphFlags ac_graphs;
  ac_graphs.Add(ac);
  AcOptions ac_options;
  std::string ac_purge_text = "1000", ac_out, ac_scheme_out, ac_clusters_out,
              ac_stats;
  ac->add_option("--sim-threshold", ac_options.sim_threshold,
                 "Cosine threshold for linking edge labels")
      ->capture_default_str();
  ac->add_flag("--glue-unlinked", ac_options.glue_unlinked,
               "Group all unlinked labels into one cluster");
  ac->add_option("--purge-cap", ac_purge_text,
                 "Drop blocks emitting more pairs than this (or inf)")
      ->capture_default_str();
  ac->add_option("--out", ac_out, "Candidate pairs TSV")->required();
  ac->add_option("--scheme-out", ac_scheme_out,
                 "Also write the equivalent DNF scheme");
  ac->add_option("--clusters-out", ac_clusters_out, "Cluster JSON output");
  ac->add_option("--stats", ac_stats, "Run statistics JSON output");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a candidate set");
  GraphFlags eval_graphs;
  eval_graphs.Add(evaluate);
  std::string candidates_path, truth_path, denominator = "square", eval_json,
              eval_train, eval_stats;
  evaluate->add_option("--candidates", candidates_path, "Candidate pairs TSV")
      ->required();
  evaluate->add_option("--truth", truth_path, "True links TSV")->required();
  evaluate->add_option("--denominator", denominator, "Reduction ratio base")
      ->check(CLI::IsMember({"square", "paper", "exact"}))
      ->capture_default_str();
  evaluate->add_option("--train", eval_train,
                       "Training file, to report its negative fraction");
  evaluate->add_option("--stats", eval_stats,
                       "Statistics JSON of the blocking run (timings)");
  evaluate->add_option("--json", eval_json, "Report JSON output");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark");
  SyntheticSpec spec;
  std::string synth_dir;
  double flip = 0.0;
  synth->add_option("--n-nodes", spec.n_nodes, "Persons per graph")
      ->capture_default_str();
  synth->add_option("--n-links", spec.n_links, "Planted links")
      ->capture_default_str();
  synth->add_option("--noise", spec.label_noise, "Perturbation rate")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  synth->add_option("--train-fraction", spec.train_fraction,
                    "Fraction of links sampled as training positives")
      ->capture_default_str();
  synth->add_option("--train-rho", spec.train_rho,
                    "Negative fraction of the training set")
      ->capture_default_str();
  synth->add_option("--flip", flip, "Fraction of training labels to flip")
      ->capture_default_str();
  synth->add_option("--out-dir", synth_dir, "Output directory")->required();

  // extractors
  auto* extractors = app.add_subcommand("extractors", "Extractor kit");
  extractors->require_subcommand(1);
  auto* list = extractors->add_subcommand("list", "List extractors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*ingest) {
      Graphs g = LoadGraphs(ingest_graphs);
      nlohmann::json j = {{"mode", g.one_graph() ? "one-graph" : "two-graph"},
                          {"graph1", GraphSummary(g.g1)}};
      if (!g.one_graph()) j["graph2"] = GraphSummary(g.second());
      if (!ingest_out.empty()) {
        std::filesystem::path dir(ingest_out);
        auto dump = [&](const DataGraph& dg, const std::string& prefix) {
          auto e = OpenOut(dir / (prefix + "_edges.tsv"));
          auto n = OpenOut(dir / (prefix + "_nodes.tsv"));
          auto h = OpenOut(dir / (prefix + "_hierarchy.tsv"));
          WriteTsvGraph(dg, e, n, h);
        };
        dump(g.g1, "g1");
        if (!g.one_graph()) dump(g.second(), "g2");
      }
      std::cout << j.dump(2) << '\n';
    } else if (*learn) {
      if (learn->count("--eta")) config.eta = eta;
      config.threads = threads;
      config.Validate();
      Graphs g = LoadGraphs(learn_graphs);
      const DataGraph& g2 = g.second();
      const TrainingSet train = ReadTrainingFile(train_path, g.g1, g2);
      auto start = Clock::now();
      const std::vector<Feo> feos = DefaultFeos();
      const auto universe = BuildUniverse(g.g1, g2, feos, universe_options);
      const double universe_ms = MillisSince(start);
      start = Clock::now();
      LearnResult r = LearnComposite(g.g1, g2, universe, train, config);
      const double learn_ms = MillisSince(start);
      OpenOut(scheme_out) << SerializeScheme(r.scheme);
      nlohmann::json members = nlohmann::json::array();
      for (const auto& m : r.members) {
        members.push_back({{"slice_positives", m.slice_positives},
                           {"positives_covered", m.positives_covered},
                           {"negatives_covered", m.negatives_covered},
                           {"terms", m.scheme.dnf.size()},
                           {"strategy", m.strategy},
                           {"epsilon_unmet", m.epsilon_unmet}});
      }
      nlohmann::json report = {
          {"v", kReportVersion},
          {"universe_size", r.universe_size},
          {"positives", r.positives},
          {"negatives", r.negatives},
          {"training_pc", r.training_pc()},
          {"negative_fraction", r.negative_fraction()},
          {"epsilon_unmet", r.epsilon_unmet()},
          {"members", members},
          {"runtime_ms", {{"universe", universe_ms}, {"learn", learn_ms}}}};
      if (r.decision) report["decision"] = *r.decision;
      if (!learn_report.empty()) WriteJson(learn_report, report);
      std::cerr << DescribeScheme(r.scheme);
      std::cerr << "training PC " << r.training_pc() << ", negatives covered "
                << r.negatives_covered << "/" << r.negatives << '\n';
      if (r.epsilon_unmet()) {
        std::cerr << "warning: epsilon not reached on some attribution slice\n";
      }
    } else if (*block) {
      const std::size_t cap = ParsePurgeCap(purge_cap_text);
      Graphs g = LoadGraphs(block_graphs);
      const CompositeScheme scheme = DeserializeScheme(ReadText(block_scheme));
      CheckScenario(scheme, g);
      nlohmann::json times;
      CandidateSet c;
      if (oracle) {
        auto start = Clock::now();
        c = BruteForceCandidates(g.g1, g.second(), scheme, {}, threads);
        times["oracle"] = MillisSince(start);
      } else {
        IndexOptions opts;
        opts.max_keys_per_term = max_keys;
        opts.threads = threads;
        auto start = Clock::now();
        const BlockIndex idx1 = IndexGraph(g.g1, scheme, 1, opts);
        const BlockIndex idx2 = IndexGraph(g.second(), scheme, 2, opts);
        times["index"] = MillisSince(start);
        start = Clock::now();
        c = GenerateCandidates(idx1, idx2, g.g1, g.second(), scheme, cap,
                               threads);
        times["generate"] = MillisSince(start);
      }
      auto out = OpenOut(block_out);
      WritePairs(out, c.pairs, g.g1, g.second());
      WriteStats(block_stats, c, times);
      std::cerr << c.size() << " candidate pairs\n";
    } else if (*ac) {
      const std::size_t cap = ParsePurgeCap(ac_purge_text);
      if (!(ac_options.sim_threshold >= 0.0 && ac_options.sim_threshold <= 1.0)) {
        throw ValidationError("--sim-threshold must be in [0, 1]");
      }
      Graphs g = LoadGraphs(ac_graphs);
      nlohmann::json times;
      auto start = Clock::now();
      const auto clusters = ClusterEdgeLabels(g.g1, g.second(), ac_options);
      times["cluster"] = MillisSince(start);
      start = Clock::now();
      const CandidateSet c = AcCandidates(g.g1, g.second(), clusters, cap,
                                          threads);
      times["generate"] = MillisSince(start);
      auto out = OpenOut(ac_out);
      WritePairs(out, c.pairs, g.g1, g.second());
      WriteStats(ac_stats, c, times);
      if (!ac_clusters_out.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& cl : clusters) {
          j.push_back(
              {{"id", cl.id}, {"labels1", cl.labels1}, {"labels2", cl.labels2}});
        }
        WriteJson(ac_clusters_out, j);
      }
      if (!ac_scheme_out.empty()) {
        const AcScheme s = AcAsDnf(clusters, g.g1, g.second());
        if (s.degenerate) {
          std::cerr << "warning: no cluster spans both sides; the equivalent "
                       "scheme is empty and was not written\n";
        } else {
          OpenOut(ac_scheme_out) << SerializeScheme(s.scheme);
        }
      }
      std::cerr << clusters.size() << " clusters, " << c.size()
                << " candidate pairs\n";
    } else if (*evaluate) {
      Graphs g = LoadGraphs(eval_graphs);
      const DataGraph& g2 = g.second();
      CandidateSet c;
      c.mode = g.one_graph() ? Scenario::kOneGraph : Scenario::kTwoGraph;
      c.pairs = ReadPairsFile(candidates_path, g.g1, g2);
      for (NodePair& p : c.pairs) {
        if (g.one_graph()) {
          if (p.first == p.second) {
            throw Error(ErrorCode::kParse, "candidate file holds a self pair");
          }
          p = Canonical(p);
        }
      }
      std::sort(c.pairs.begin(), c.pairs.end());
      c.pairs.erase(std::unique(c.pairs.begin(), c.pairs.end()),
                    c.pairs.end());
      MetricsReport report =
          ComputeMetrics(c, ReadPairsFile(truth_path, g.g1, g2), g.g1, g2,
                         ParseRrDenominator(denominator));
      if (!eval_train.empty()) {
        const TrainingSet t = ReadTrainingFile(eval_train, g.g1, g2);
        report.rho = Rho(t.positives.size(), t.negatives.size());
      }
      if (!eval_stats.empty()) {
        const auto stats = nlohmann::json::parse(ReadText(eval_stats));
        for (const auto& [stage, ms] : stats.at("runtime_ms").items()) {
          report.runtime_ms.emplace_back(stage, ms.get<double>());
        }
      }
      std::cout << report.ToTable();
      if (!eval_json.empty()) WriteJson(eval_json, report.ToJson());
    } else if (*synth) {
      spec.Validate();
      if (!(flip >= 0.0 && flip <= 1.0)) {
        throw ValidationError("--flip must be in [0, 1]");
      }
      SyntheticData data = GenerateSynthetic(spec);
      if (flip > 0.0) data.train = FlipLabels(data.train, flip, spec.seed + 1);
      std::filesystem::path dir(synth_dir);
      for (int side = 1; side <= 2; ++side) {
        const DataGraph& dg = side == 1 ? data.g1 : data.g2;
        const std::string prefix = "g" + std::to_string(side);
        auto e = OpenOut(dir / (prefix + "_edges.tsv"));
        auto n = OpenOut(dir / (prefix + "_nodes.tsv"));
        auto h = OpenOut(dir / (prefix + "_hierarchy.tsv"));
        WriteTsvGraph(dg, e, n, h);
      }
      {
        auto out = OpenOut(dir / "truth.tsv");
        WritePairs(out, data.truth, data.g1, data.g2);
      }
      {
        auto out = OpenOut(dir / "heldout.tsv");
        WritePairs(out, data.held_out, data.g1, data.g2);
      }
      {
        auto out = OpenOut(dir / "train.tsv");
        WriteTrainingSet(out, data.train, data.g1, data.g2);
      }
      std::cerr << "wrote " << dir.string() << '\n';
    } else if (*list) {
      for (const auto& e : BuiltinRegistry().entries()) {
        std::cout << (e.kind == ExtractorKind::kShallow ? "shallow" : "deep")
                  << '\t' << e.name << '\t' << e.description << '\n';
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitValidation
                                                   : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace
}  // namespace dnfblock

int main(int argc, char** argv) { return dnfblock::Run(argc, argv); }
