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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hexq::cli {

/// 64-bit FNV-1a.
uint64_t fnv1a(std::string_view bytes);
std::string hex64(uint64_t x);
/// Hash of the file contents as 16 hex digits.
std::string file_hash(const std::filesystem::path &path);

/// Run record written next to every command's outputs. Timings live here
/// and nowhere else, so primary outputs are byte-reproducible.
class Manifest {
   public:
    Manifest(std::string command, std::vector<std::string> argv, nlohmann::json config);

    void add_input(const std::filesystem::path &path);
    void add_output(const std::filesystem::path &path);
    void add_timing(const std::string &stage, double seconds);
    void write(const std::filesystem::path &path) const;

    std::string config_hash() const;

   private:
    std::string command_;
    std::vector<std::string> argv_;
    nlohmann::json config_;
    std::vector<std::filesystem::path> inputs_;
    std::vector<std::filesystem::path> outputs_;
    nlohmann::json timings_ = nlohmann::json::object();
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Writes text, creating parent directories.
void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);

/// Input lookup: the path itself if it exists, else the same relative path
/// under $HEXQ_DATA_DIR. Throws MissingInput when neither exists.
std::filesystem::path resolve_input(const std::filesystem::path &path);

/// File-name-safe form of an identifier.
std::string safe_name(std::string_view id);

}  // namespace hexq::cli
