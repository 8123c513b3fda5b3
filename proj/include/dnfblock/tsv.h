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

// Tab-separated field helpers shared by the graph and pair file formats.

#ifndef DNFBLOCK_TSV_H_
#define DNFBLOCK_TSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace dnfblock {

std::vector<std::string> SplitTabs(std::string_view line);

// Backslash escapes for tab, newline, carriage return and backslash.
std::string Escape(std::string_view s);
std::string Unescape(std::string_view s);

}  // namespace dnfblock

#endif  // DNFBLOCK_TSV_H_
