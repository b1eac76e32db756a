// Copyright 2026 The hexq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hexq/instance.hpp"

namespace hexq {

/// Reads an externally published term list. Accepted shapes:
///   - JSON object keyed by node tuples: {"(0,)": 1, "(0, 1)": -1, "3 4 5": 1}
///   - JSON array of [[nodes...], coeff] pairs
///   - plain text, one "i [j [k]] coeff" term per line, '#' comments
/// Throws FormatError on anything else or on repeated monomials.
std::vector<Term> parse_term_list(std::string_view text);

/// Infers the coupling graph from the quadratic terms and checks that the
/// linear and cubic terms are exactly the ones the heavy-hex structure
/// implies. The instance is marked CoefficientMode::imported.
IsingInstance instance_from_terms(const std::vector<Term> &terms, std::string id, std::string layout = "imported");

/// Loads a native instance JSON file as is, or converts a term list.
IsingInstance import_instance_file(const std::filesystem::path &path);

}  // namespace hexq
