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

// Seeded synthetic two-graph benchmark with planted links.

#ifndef DNFBLOCK_SYNTHETIC_H_
#define DNFBLOCK_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dnfblock/graph.h"
#include "dnfblock/learner.h"

namespace dnfblock {

struct SyntheticSpec {
  std::size_t n_nodes = 1000;  // person entities per graph
  std::size_t n_links = 500;
  // Attribute sets drawn per linked entity (shared by both copies).
  std::vector<std::vector<std::string>> attr_profiles = {
      {"Actor"},
      {"Director"},
      {"Guitarist"},
      {"Actor", "Guitarist"},
      {"Director", "Guitarist"}};
  // Probability that each name token, the birth day and the city of the
  // second copy are perturbed.
  double label_noise = 0.0;
  std::uint64_t seed = 7;
  double train_fraction = 0.3;  // of links, sampled as positives
  double train_rho = 0.5;       // |N| / (|N| + |P|) of the training set

  // Throws kInvalidArgument.
  void Validate() const;
};

struct SyntheticData {
  DataGraph g1;
  DataGraph g2;
  std::vector<NodePair> truth;     // sorted
  TrainingSet train;               // sorted
  std::vector<NodePair> held_out;  // truth minus training positives
};

// Each person has a name label "First Last", attributes, a bornOn edge to
// a "DD-MM-YYYY" literal and a livesIn edge to a city. Linked persons share
// everything up to the noise; the rest are independent distractors.
SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

// Moves a `fraction` of the training pairs to the opposite label.
TrainingSet FlipLabels(const TrainingSet& train, double fraction,
                       std::uint64_t seed);

}  // namespace dnfblock

#endif  // DNFBLOCK_SYNTHETIC_H_
