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

#include "dnfblock/extractors.h"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "dnfblock/error.h"

namespace dnfblock {

void Canonicalize(FeatureSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

FeatureSet SetUnion(const FeatureSet& a, const FeatureSet& b) {
  FeatureSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool Intersects(const FeatureSet& a, const FeatureSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

void ExtractorRegistry::CheckMutable(ExtractorKind kind,
                                     const std::string& name) const {
  if (frozen_) {
    throw Error(ErrorCode::kInvalidArgument,
                "extractor registry is frozen; cannot register '" + name +
                    "'");
  }
  const bool taken = kind == ExtractorKind::kShallow ? HasShallow(name)
                                                     : HasDeep(name);
  if (taken) {
    throw Error(ErrorCode::kInvalidArgument,
                "extractor '" + name + "' is already registered");
  }
}

void ExtractorRegistry::RegisterShallow(std::string name, ShallowFn fn,
                                        std::string description) {
  CheckMutable(ExtractorKind::kShallow, name);
  shallow_.emplace(name, std::move(fn));
  entries_.push_back(
      {std::move(name), ExtractorKind::kShallow, std::move(description)});
}

void ExtractorRegistry::RegisterDeep(std::string name, DeepFn fn,
                                     std::string description) {
  CheckMutable(ExtractorKind::kDeep, name);
  deep_.emplace(name, std::move(fn));
  entries_.push_back(
      {std::move(name), ExtractorKind::kDeep, std::move(description)});
}

bool ExtractorRegistry::HasShallow(std::string_view name) const {
  return shallow_.contains(std::string(name));
}

bool ExtractorRegistry::HasDeep(std::string_view name) const {
  return deep_.contains(std::string(name));
}

const ShallowFn& ExtractorRegistry::shallow(std::string_view name) const {
  auto it = shallow_.find(std::string(name));
  if (it == shallow_.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown shallow extractor '" + std::string(name) + "'");
  }
  return it->second;
}

const DeepFn& ExtractorRegistry::deep(std::string_view name) const {
  auto it = deep_.find(std::string(name));
  if (it == deep_.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown deep extractor '" + std::string(name) + "'");
  }
  return it->second;
}

const std::vector<std::string>& StopWords() {
  static const auto* words = new std::vector<std::string>{
      "a",  "an", "and", "are", "as",   "at",   "be",   "by",   "for",
      "from", "has", "he", "in",  "is",   "it",   "its",  "of",   "on",
      "that", "the", "to", "was", "were", "will", "with"};
  return *words;
}

std::string IncrementDecimal(std::string_view digits) {
  std::string out(digits);
  for (std::size_t i = out.size(); i-- > 0;) {
    if (out[i] != '9') {
      ++out[i];
      return out;
    }
    out[i] = '0';
  }
  return "1" + out;
}

namespace {

bool IsDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

template <typename IsDelimiter>
FeatureSet Split(std::string_view label, IsDelimiter is_delimiter) {
  FeatureSet tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= label.size(); ++i) {
    if (i == label.size() || is_delimiter(label[i])) {
      if (i > start) tokens.emplace_back(label.substr(start, i - start));
      start = i + 1;
    }
  }
  return tokens;
}

FeatureSet TokenizeString(std::string_view label) {
  return Split(label, [](char c) {
    return c == '-' || c == '_' || c == ',' || c == ';' || c == '/' ||
           std::isspace(static_cast<unsigned char>(c));
  });
}

FeatureSet TokenizeAlnum(std::string_view label) {
  return Split(label, [](char c) {
    return !std::isalnum(static_cast<unsigned char>(c));
  });
}

template <typename Fn>
FeatureSet MapEach(const FeatureSet& in, Fn fn) {
  FeatureSet out;
  out.reserve(in.size());
  for (const auto& s : in) out.push_back(fn(s));
  return out;
}

FeatureSet AddOneToIntegers(const FeatureSet& in) {
  FeatureSet out = in;
  for (const auto& s : in) {
    if (IsDigits(s)) out.push_back(IncrementDecimal(s));
  }
  return out;
}

FeatureSet RemoveStopWords(const FeatureSet& in) {
  FeatureSet out;
  for (const auto& s : in) {
    const std::string lower = Lower(s);
    if (std::find(StopWords().begin(), StopWords().end(), lower) ==
        StopWords().end()) {
      out.push_back(s);
    }
  }
  return out;
}

FeatureSet SortedTokenBigrams(const FeatureSet& in) {
  FeatureSet sorted = in;
  Canonicalize(sorted);
  FeatureSet out;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    out.push_back(sorted[i - 1] + " " + sorted[i]);
  }
  return out;
}

FeatureSet CharTrigrams(const FeatureSet& in) {
  FeatureSet out;
  for (const auto& s : in) {
    if (s.size() <= 3) {
      out.push_back(s);
      continue;
    }
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
      out.push_back(s.substr(i, 3));
    }
  }
  return out;
}

void CheckOutputSize(const FeatureSet& out, std::string_view extractor) {
  if (out.size() > kMaxExtractorOutput) {
    throw Error(ErrorCode::kLimitExceeded,
                "extractor '" + std::string(extractor) + "' produced " +
                    std::to_string(out.size()) + " strings (cap " +
                    std::to_string(kMaxExtractorOutput) + ")");
  }
}

}  // namespace

void RegisterBuiltinExtractors(ExtractorRegistry& r) {
  r.RegisterShallow("TokenizeString", TokenizeString,
                    "split on - _ , ; / and whitespace");
  r.RegisterShallow("TokenizeAlnum", TokenizeAlnum,
                    "split on every non-alphanumeric character");
  r.RegisterDeep(
      "LowercaseSet",
      [](const FeatureSet& in) { return MapEach(in, Lower); },
      "ASCII lowercase of every string");
  r.RegisterDeep(
      "First1Chars",
      [](const FeatureSet& in) {
        return MapEach(in, [](const std::string& s) { return s.substr(0, 1); });
      },
      "first character of every string");
  r.RegisterDeep(
      "First3Chars",
      [](const FeatureSet& in) {
        return MapEach(in, [](const std::string& s) { return s.substr(0, 3); });
      },
      "first three characters of every string");
  r.RegisterDeep(
      "Last3Chars",
      [](const FeatureSet& in) {
        return MapEach(in, [](const std::string& s) {
          return s.size() <= 3 ? s : s.substr(s.size() - 3);
        });
      },
      "last three characters of every string");
  r.RegisterDeep(
      "NumericOnly",
      [](const FeatureSet& in) {
        FeatureSet out;
        std::copy_if(in.begin(), in.end(), std::back_inserter(out), IsDigits);
        return out;
      },
      "keep strings made only of digits");
  r.RegisterDeep("AddOneToIntegers", AddOneToIntegers,
                 "add the increment of every integer, keeping the originals");
  r.RegisterDeep("RemoveStopWords", RemoveStopWords,
                 "drop the 25 fixed English stop words (case-insensitive)");
  r.RegisterDeep(
      "StemWords",
      [](const FeatureSet& in) {
        return MapEach(in,
                       [](const std::string& s) { return StemWord(Lower(s)); });
      },
      "lowercase and Porter2-stem every string");
  r.RegisterDeep("SortedTokenBigrams", SortedTokenBigrams,
                 "adjacent pairs of the sorted strings, space joined");
  r.RegisterDeep("CharTrigrams", CharTrigrams,
                 "character 3-grams of every string");
}

const ExtractorRegistry& BuiltinRegistry() {
  static const ExtractorRegistry* registry = [] {
    auto* r = new ExtractorRegistry;
    RegisterBuiltinExtractors(*r);
    r->Freeze();
    return r;
  }();
  return *registry;
}

std::string Feo::ToString() const {
  std::string out = shallow;
  for (const auto& d : deep_chain) out = d + "(" + out + ")";
  return out;
}

FeatureSet ApplyFeo(const Feo& feo, std::string_view label,
                    const ExtractorRegistry& registry) {
  FeatureSet out = registry.shallow(feo.shallow)(label);
  CheckOutputSize(out, feo.shallow);
  Canonicalize(out);
  for (const auto& name : feo.deep_chain) {
    out = registry.deep(name)(out);
    CheckOutputSize(out, name);
    Canonicalize(out);
  }
  return out;
}

FeatureSet ApplyTrailFeo(const DataGraph& g, const Feo& feo, NodeId v,
                         const LabelSequence& labels,
                         const ExtractOptions& options) {
  if (labels.empty()) return ApplyFeo(feo, g.node_label(v), *options.registry);
  FeatureSet out;
  for (NodeId end : TrailEnds(g, v, labels, options.trails)) {
    FeatureSet part = ApplyFeo(feo, g.node_label(end), *options.registry);
    out = out.empty() ? std::move(part) : SetUnion(out, part);
  }
  return out;
}

std::vector<Feo> DefaultFeos() {
  return {
      {"TokenizeString", {}},
      {"TokenizeAlnum", {"LowercaseSet"}},
      {"TokenizeString", {"AddOneToIntegers"}},
      {"TokenizeString", {"NumericOnly"}},
      {"TokenizeString", {"RemoveStopWords", "StemWords"}},
      {"TokenizeAlnum", {"LowercaseSet", "First3Chars"}},
      {"TokenizeAlnum", {"LowercaseSet", "Last3Chars"}},
      {"TokenizeAlnum", {"LowercaseSet", "SortedTokenBigrams"}},
  };
}

}  // namespace dnfblock
