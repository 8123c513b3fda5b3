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

// Primitive shallow/deep extractors, feature extraction operators (FEOs)
// and their trail-sensitive application.

#ifndef DNFBLOCK_EXTRACTORS_H_
#define DNFBLOCK_EXTRACTORS_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dnfblock/graph.h"

namespace dnfblock {

// A canonical string set: sorted and duplicate free.
using FeatureSet = std::vector<std::string>;

void Canonicalize(FeatureSet& set);
FeatureSet SetUnion(const FeatureSet& a, const FeatureSet& b);
bool Intersects(const FeatureSet& a, const FeatureSet& b);

using ShallowFn = std::function<FeatureSet(std::string_view label)>;
using DeepFn = std::function<FeatureSet(const FeatureSet& input)>;

enum class ExtractorKind { kShallow, kDeep };

// Largest output any single extractor call may produce.
inline constexpr std::size_t kMaxExtractorOutput = 1024;

// Named extractors. Names are unique per kind and enumeration follows
// insertion order. Once frozen the registry is read-only and may be shared
// across threads.
class ExtractorRegistry {
 public:
  struct Entry {
    std::string name;
    ExtractorKind kind;
    std::string description;
  };

  void RegisterShallow(std::string name, ShallowFn fn,
                       std::string description = "");
  void RegisterDeep(std::string name, DeepFn fn,
                    std::string description = "");
  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  bool HasShallow(std::string_view name) const;
  bool HasDeep(std::string_view name) const;
  const ShallowFn& shallow(std::string_view name) const;
  const DeepFn& deep(std::string_view name) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  void CheckMutable(ExtractorKind kind, const std::string& name) const;

  std::vector<Entry> entries_;
  std::unordered_map<std::string, ShallowFn> shallow_;
  std::unordered_map<std::string, DeepFn> deep_;
  bool frozen_ = false;
};

// TokenizeString, TokenizeAlnum, LowercaseSet, First1Chars, First3Chars,
// Last3Chars, NumericOnly, AddOneToIntegers, RemoveStopWords, StemWords,
// SortedTokenBigrams, CharTrigrams.
void RegisterBuiltinExtractors(ExtractorRegistry& registry);

// Frozen registry holding the builtin kit.
const ExtractorRegistry& BuiltinRegistry();

// The fixed English stop-word list used by RemoveStopWords (25 words).
const std::vector<std::string>& StopWords();

// Feature extraction operator: one shallow extractor followed by zero or
// more deep extractors, applied left to right.
struct Feo {
  std::string shallow;
  std::vector<std::string> deep_chain;

  auto operator<=>(const Feo&) const = default;
  // e.g. "StemWords(RemoveStopWords(TokenizeString))"
  std::string ToString() const;
};

struct ExtractOptions {
  const ExtractorRegistry* registry = &BuiltinRegistry();
  TrailLimits trails;
};

FeatureSet ApplyFeo(const Feo& feo, std::string_view label,
                    const ExtractorRegistry& registry = BuiltinRegistry());

// Trail-sensitive application. An empty sequence applies the FEO to v's own
// label; otherwise the FEO outputs of all trail ends are united, and a node
// without a valid trail yields the empty set.
FeatureSet ApplyTrailFeo(const DataGraph& g, const Feo& feo, NodeId v,
                         const LabelSequence& labels,
                         const ExtractOptions& options = {});

// FEOs used to build a predicate universe when none are given.
std::vector<Feo> DefaultFeos();

// Snowball English (Porter2) stemmer over a lowercase ASCII word.
std::string StemWord(std::string_view word);

// Decimal increment preserving the digit width: "03" -> "04", "99" -> "100".
std::string IncrementDecimal(std::string_view digits);

}  // namespace dnfblock

#endif  // DNFBLOCK_EXTRACTORS_H_
