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

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dnfblock/extractors.h"

namespace dnfblock {

namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' ||
         c == 'y';
}

bool EndsWith(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

// Position just past the first non-vowel that follows a vowel, scanning
// from `from`.
std::size_t RegionStart(const std::string& w, std::size_t from) {
  for (std::size_t i = from + 1; i < w.size(); ++i) {
    if (IsVowel(w[i - 1]) && !IsVowel(w[i])) return i + 1;
  }
  return w.size();
}

// Whether w[0, len) ends in a short syllable.
bool EndsShortSyllable(const std::string& w, std::size_t len) {
  if (len == 2) return IsVowel(w[0]) && !IsVowel(w[1]);
  if (len < 3) return false;
  const char c = w[len - 1];
  return !IsVowel(w[len - 3]) && IsVowel(w[len - 2]) && !IsVowel(c) &&
         c != 'w' && c != 'x' && c != 'Y';
}

bool HasVowel(const std::string& w, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    if (IsVowel(w[i])) return true;
  }
  return false;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Returns the longest suffix of w among rules, or nullptr.
const Rule* LongestMatch(const std::string& w, std::span<const Rule> rules) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (EndsWith(w, r.suffix) &&
        (best == nullptr || r.suffix.size() > best->suffix.size())) {
      best = &r;
    }
  }
  return best;
}

void Replace(std::string& w, std::size_t suffix_len, std::string_view with) {
  w.resize(w.size() - suffix_len);
  w += with;
}

bool IsValidLiEnding(char c) {
  return std::string_view("cdeghkmnrt").find(c) != std::string_view::npos;
}

constexpr std::array<Rule, 24> kStep2 = {{
    {"tional", "tion"}, {"enci", "ence"},     {"anci", "ance"},
    {"abli", "able"},   {"entli", "ent"},     {"izer", "ize"},
    {"ization", "ize"}, {"ational", "ate"},   {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},      {"aliti", "al"},
    {"alli", "al"},     {"fulness", "ful"},   {"ousli", "ous"},
    {"ousness", "ous"}, {"iveness", "ive"},   {"iviti", "ive"},
    {"biliti", "ble"},  {"bli", "ble"},       {"ogi", "og"},
    {"fulli", "ful"},   {"lessli", "less"},   {"li", ""},
}};

constexpr std::array<Rule, 9> kStep3 = {{
    {"tional", "tion"},
    {"ational", "ate"},
    {"alize", "al"},
    {"icate", "ic"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ful", ""},
    {"ness", ""},
    {"ative", ""},
}};

constexpr std::array<Rule, 18> kStep4 = {{
    {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},    {"ic", ""},
    {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
    {"ent", ""},  {"ism", ""},  {"ate", ""},  {"iti", ""},   {"ous", ""},
    {"ive", ""},  {"ize", ""},  {"ion", ""},
}};

const std::unordered_map<std::string_view, std::string_view>& Exceptions() {
  static const auto* table =
      new std::unordered_map<std::string_view, std::string_view>{
          {"skis", "ski"},     {"skies", "sky"},    {"dying", "die"},
          {"lying", "lie"},    {"tying", "tie"},    {"idly", "idl"},
          {"gently", "gentl"}, {"ugly", "ugli"},    {"early", "earli"},
          {"only", "onli"},    {"singly", "singl"}, {"sky", "sky"},
          {"news", "news"},    {"howe", "howe"},    {"atlas", "atlas"},
          {"cosmos", "cosmos"}, {"bias", "bias"},   {"andes", "andes"},
      };
  return *table;
}

bool IsInvariantAfterStep1a(const std::string& w) {
  static constexpr std::array<std::string_view, 8> kWords = {
      "inning", "outing", "canning", "herring",
      "earring", "proceed", "exceed", "succeed"};
  return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

}  // namespace

std::string StemWord(std::string_view input) {
  std::string w(input);
  if (w.size() <= 2) return w;
  if (w[0] == '\'') w.erase(0, 1);
  if (auto it = Exceptions().find(w); it != Exceptions().end()) {
    return std::string(it->second);
  }

  if (w[0] == 'y') w[0] = 'Y';
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == 'y' && IsVowel(w[i - 1])) w[i] = 'Y';
  }

  std::size_t r1 = RegionStart(w, 0);
  for (std::string_view prefix : {"gener", "commun", "arsen"}) {
    if (w.starts_with(prefix)) r1 = prefix.size();
  }
  const std::size_t r2 = r1 >= w.size() ? w.size() : RegionStart(w, r1);
  auto in_r1 = [&](std::size_t suffix_len) {
    return w.size() - suffix_len >= r1;
  };
  auto in_r2 = [&](std::size_t suffix_len) {
    return w.size() - suffix_len >= r2;
  };

  // Step 0: possessives.
  for (std::string_view s : {"'s'", "'s", "'"}) {
    if (EndsWith(w, s)) {
      w.resize(w.size() - s.size());
      break;
    }
  }

  // Step 1a.
  if (EndsWith(w, "sses")) {
    Replace(w, 4, "ss");
  } else if (EndsWith(w, "ied") || EndsWith(w, "ies")) {
    Replace(w, 3, w.size() > 4 ? "i" : "ie");
  } else if (EndsWith(w, "us") || EndsWith(w, "ss")) {
    // unchanged
  } else if (EndsWith(w, "s")) {
    if (w.size() >= 3 && HasVowel(w, 0, w.size() - 2)) w.pop_back();
  }
  if (IsInvariantAfterStep1a(w)) return w;

  // Step 1b.
  {
    static constexpr std::array<Rule, 6> kStep1b = {{
        {"eedly", ""}, {"ingly", ""}, {"edly", ""},
        {"eed", ""},   {"ing", ""},   {"ed", ""},
    }};
    if (const Rule* r = LongestMatch(w, kStep1b)) {
      const std::size_t len = r->suffix.size();
      if (r->suffix == "eed" || r->suffix == "eedly") {
        if (in_r1(len)) Replace(w, len, "ee");
      } else if (HasVowel(w, 0, w.size() - len)) {
        w.resize(w.size() - len);
        static constexpr std::array<std::string_view, 9> kDoubles = {
            "bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"};
        if (EndsWith(w, "at") || EndsWith(w, "bl") || EndsWith(w, "iz")) {
          w += 'e';
        } else if (std::any_of(kDoubles.begin(), kDoubles.end(),
                               [&](std::string_view d) {
                                 return EndsWith(w, d);
                               })) {
          w.pop_back();
        } else if (EndsShortSyllable(w, w.size()) && r1 >= w.size()) {
          w += 'e';
        }
      }
    }
  }

  // Step 1c.
  if (w.size() > 2 && (w.back() == 'y' || w.back() == 'Y') &&
      !IsVowel(w[w.size() - 2])) {
    w.back() = 'i';
  }

  // Step 2.
  if (const Rule* r = LongestMatch(w, kStep2)) {
    const std::size_t len = r->suffix.size();
    if (in_r1(len)) {
      if (r->suffix == "ogi") {
        if (w.size() > 3 && w[w.size() - 4] == 'l') Replace(w, len, "og");
      } else if (r->suffix == "li") {
        if (w.size() > 2 && IsValidLiEnding(w[w.size() - 3])) {
          w.resize(w.size() - 2);
        }
      } else {
        Replace(w, len, r->replacement);
      }
    }
  }

  // Step 3.
  if (const Rule* r = LongestMatch(w, kStep3)) {
    const std::size_t len = r->suffix.size();
    if (in_r1(len) && (r->suffix != "ative" || in_r2(len))) {
      Replace(w, len, r->replacement);
    }
  }

  // Step 4.
  if (const Rule* r = LongestMatch(w, kStep4)) {
    const std::size_t len = r->suffix.size();
    if (in_r2(len)) {
      if (r->suffix != "ion") {
        w.resize(w.size() - len);
      } else if (w.size() > 3 &&
                 (w[w.size() - 4] == 's' || w[w.size() - 4] == 't')) {
        w.resize(w.size() - len);
      }
    }
  }

  // Step 5.
  if (EndsWith(w, "e")) {
    if (in_r2(1) || (in_r1(1) && !EndsShortSyllable(w, w.size() - 1))) {
      w.pop_back();
    }
  } else if (EndsWith(w, "ll") && in_r2(1)) {
    w.pop_back();
  }

  for (char& c : w) {
    if (c == 'Y') c = 'y';
  }
  return w;
}

}  // namespace dnfblock
