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

#include "dnfblock/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "dnfblock/error.h"

namespace dnfblock {

namespace {

using Rng = std::mt19937_64;

std::size_t Uniform(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool Chance(Rng& rng, double p) {
  return p > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Distinct pronounceable words: the digits of i in base 10 pick syllables.
std::string Word(std::size_t i, std::string_view suffix) {
  static constexpr const char* kSyllables[] = {"ba", "ke", "lo", "mi", "nu",
                                               "ra", "si", "to", "vu", "ze"};
  std::string w;
  do {
    w += kSyllables[i % 10];
    i /= 10;
  } while (i > 0);
  w += suffix;
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

struct Person {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t profile = 0;
  int day = 1;
  int month = 1;
  int year = 1970;
  std::size_t city = 0;
};

struct Vocab {
  std::size_t firsts;
  std::size_t lasts;
  std::size_t cities;
};

Person RandomPerson(Rng& rng, const Vocab& v, std::size_t profiles) {
  Person p;
  p.first = Uniform(rng, v.firsts);
  p.last = Uniform(rng, v.lasts);
  p.profile = Uniform(rng, profiles);
  p.day = 1 + static_cast<int>(Uniform(rng, 28));
  p.month = 1 + static_cast<int>(Uniform(rng, 12));
  p.year = 1940 + static_cast<int>(Uniform(rng, 60));
  p.city = Uniform(rng, v.cities);
  return p;
}

Person Perturb(Rng& rng, Person p, const Vocab& v, double noise) {
  if (Chance(rng, noise)) p.first = Uniform(rng, v.firsts);
  if (Chance(rng, noise)) p.last = Uniform(rng, v.lasts);
  if (Chance(rng, noise)) p.day = p.day % 28 + 1;
  if (Chance(rng, noise)) p.city = Uniform(rng, v.cities);
  return p;
}

void AddPerson(GraphBuilder& b, NodeId v, const Person& p,
               const SyntheticSpec& spec) {
  b.SetLabel(v, Word(p.first, "") + " " + Word(p.last, "son"));
  for (const auto& a : spec.attr_profiles[p.profile]) b.AddAttribute(v, a);
  char date[16];
  std::snprintf(date, sizeof(date), "%02d-%02d-%04d", p.day, p.month, p.year);
  const NodeId d = b.AddNode(std::string("date:") + date);
  b.SetLabel(d, date);
  b.AddEdge(v, d, "bornOn");
  const std::string city = Word(p.city, "via");
  const NodeId c = b.AddNode("city:" + city);
  b.SetLabel(c, city);
  b.AddEdge(v, c, "livesIn");
}

}  // namespace

void SyntheticSpec::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (n_nodes == 0) fail("n_nodes must be positive");
  if (n_links == 0 || n_links > n_nodes) fail("n_links must be in [1, n_nodes]");
  if (attr_profiles.empty()) fail("at least one attribute profile is needed");
  for (const auto& p : attr_profiles) {
    if (p.empty()) fail("attribute profiles must be non-empty");
  }
  if (!(label_noise >= 0.0 && label_noise <= 1.0)) {
    fail("label_noise must be in [0, 1]");
  }
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    fail("train_fraction must be in (0, 1]");
  }
  if (!(train_rho >= 0.0 && train_rho < 1.0)) fail("train_rho must be in [0, 1)");
}

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const std::size_t n = spec.n_nodes;
  const Vocab vocab{std::max<std::size_t>(20, n / 4),
                    std::max<std::size_t>(20, n / 4),
                    std::max<std::size_t>(10, n / 20)};
  const std::size_t profiles = spec.attr_profiles.size();

  std::vector<Person> people1(n);
  for (auto& p : people1) p = RandomPerson(rng, vocab, profiles);
  // g2 position of g1 person i, for the linked prefix.
  std::vector<std::size_t> slot(n);
  std::iota(slot.begin(), slot.end(), 0);
  std::shuffle(slot.begin(), slot.end(), rng);
  std::vector<Person> people2(n);
  std::vector<bool> filled(n, false);
  for (std::size_t i = 0; i < spec.n_links; ++i) {
    people2[slot[i]] = Perturb(rng, people1[i], vocab, spec.label_noise);
    filled[slot[i]] = true;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!filled[j]) people2[j] = RandomPerson(rng, vocab, profiles);
  }

  GraphBuilder b1;
  GraphBuilder b2;
  for (std::size_t i = 0; i < n; ++i) b1.AddNode("a" + std::to_string(i));
  for (std::size_t j = 0; j < n; ++j) b2.AddNode("b" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) {
    AddPerson(b1, static_cast<NodeId>(i), people1[i], spec);
    AddPerson(b2, static_cast<NodeId>(i), people2[i], spec);
  }

  SyntheticData data;
  data.g1 = std::move(b1).Build();
  data.g2 = std::move(b2).Build();
  for (std::size_t i = 0; i < spec.n_links; ++i) {
    data.truth.push_back(
        {static_cast<NodeId>(i), static_cast<NodeId>(slot[i])});
  }
  std::sort(data.truth.begin(), data.truth.end());

  // Positives: a random subset of the links.
  std::vector<NodePair> links = data.truth;
  std::shuffle(links.begin(), links.end(), rng);
  const std::size_t num_pos = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(spec.train_fraction * spec.n_links)));
  data.train.positives.assign(links.begin(), links.begin() + num_pos);
  std::sort(data.train.positives.begin(), data.train.positives.end());
  std::set_difference(data.truth.begin(), data.truth.end(),
                      data.train.positives.begin(),
                      data.train.positives.end(),
                      std::back_inserter(data.held_out));

  // Negatives: half share a last name with their partner, half are random.
  const std::size_t num_neg = static_cast<std::size_t>(std::llround(
      num_pos * spec.train_rho / (1.0 - spec.train_rho)));
  std::unordered_map<std::size_t, std::vector<NodeId>> by_last;
  for (std::size_t j = 0; j < n; ++j) {
    by_last[people2[j].last].push_back(static_cast<NodeId>(j));
  }
  std::set<NodePair> negatives;
  auto add = [&](NodePair p) {
    if (!std::binary_search(data.truth.begin(), data.truth.end(), p)) {
      negatives.insert(p);
    }
  };
  const std::size_t max_attempts = 20 * num_neg + 100;
  for (std::size_t a = 0; a < max_attempts && negatives.size() < num_neg / 2;
       ++a) {
    const std::size_t i = Uniform(rng, n);
    const auto& same = by_last[people1[i].last];
    if (same.empty()) continue;
    add({static_cast<NodeId>(i), same[Uniform(rng, same.size())]});
  }
  for (std::size_t a = 0; a < max_attempts && negatives.size() < num_neg;
       ++a) {
    add({static_cast<NodeId>(Uniform(rng, n)),
         static_cast<NodeId>(Uniform(rng, n))});
  }
  data.train.negatives.assign(negatives.begin(), negatives.end());
  return data;
}

TrainingSet FlipLabels(const TrainingSet& train, double fraction,
                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "flip fraction must be in [0, 1]");
  }
  const std::size_t total = train.positives.size() + train.negatives.size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto flips =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
  std::vector<bool> flip(total, false);
  for (std::size_t k = 0; k < flips; ++k) flip[order[k]] = true;

  TrainingSet out;
  for (std::size_t i = 0; i < total; ++i) {
    const bool positive = i < train.positives.size();
    const NodePair p = positive ? train.positives[i]
                                : train.negatives[i - train.positives.size()];
    (positive != flip[i] ? out.positives : out.negatives).push_back(p);
  }
  std::sort(out.positives.begin(), out.positives.end());
  std::sort(out.negatives.begin(), out.negatives.end());
  return out;
}

}  // namespace dnfblock
