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

#include "manifest.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hexq/error.hpp"
#include "hexq/instance.hpp"

namespace hexq::cli {

uint64_t fnv1a(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t x) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; i--) {
        out[i] = digits[x & 0xf];
        x >>= 4;
    }
    return out;
}

std::string file_hash(const std::filesystem::path &path) {
    return hex64(fnv1a(read_text_file(path)));
}

Manifest::Manifest(std::string command, std::vector<std::string> argv, nlohmann::json config)
    : command_(std::move(command)), argv_(std::move(argv)), config_(std::move(config)) {}

void Manifest::add_input(const std::filesystem::path &path) {
    inputs_.push_back(path);
}

void Manifest::add_output(const std::filesystem::path &path) {
    outputs_.push_back(path);
}

void Manifest::add_timing(const std::string &stage, double seconds) {
    timings_[stage] = seconds;
}

std::string Manifest::config_hash() const {
    return hex64(fnv1a(config_.dump()));
}

void Manifest::write(const std::filesystem::path &path) const {
    auto listing = [](const std::vector<std::filesystem::path> &paths) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &p : paths) {
            out.push_back({{"path", p.generic_string()}, {"fnv1a", file_hash(p)}});
        }
        return out;
    };
    nlohmann::json timings = timings_;
    timings["total_wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    nlohmann::json j = {
        {"format", "hexq-manifest"},
        {"version", 1},
        {"hexq_version", HEXQ_VERSION},
        {"command", command_},
        {"argv", argv_},
        {"cwd", std::filesystem::current_path().generic_string()},
        {"config", config_},
        {"config_hash", config_hash()},
        {"inputs", listing(inputs_)},
        {"outputs", listing(outputs_)},
        {"timings", timings},
    };
    write_json_file(j, path);
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw MissingInput("cannot write " + path.string());
    }
    out << text;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingInput("cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::filesystem::path resolve_input(const std::filesystem::path &path) {
    if (std::filesystem::exists(path)) {
        return path;
    }
    if (const char *dir = std::getenv("HEXQ_DATA_DIR"); dir && *dir && path.is_relative()) {
        auto candidate = std::filesystem::path(dir) / path;
        if (std::filesystem::exists(candidate)) {
            return candidate;
        }
    }
    throw MissingInput("input not found: " + path.string());
}

std::string safe_name(std::string_view id) {
    std::string out;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                  c == '_';
        out.push_back(ok ? c : '_');
    }
    return out;
}

}  // namespace hexq::cli
