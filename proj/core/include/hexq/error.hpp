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

#include <stdexcept>
#include <string>

namespace hexq {

/// Broad failure categories. The command line tool maps each one to a
/// distinct process exit code.
enum class ErrorKind {
    invalid_argument,
    format,
    capacity,
    missing_input,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

/// A caller supplied a value outside an operation's contract.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string &what) : Error(ErrorKind::invalid_argument, what) {}
};

/// A file or string could not be parsed, or carried an unsupported version.
struct FormatError : Error {
    explicit FormatError(const std::string &what) : Error(ErrorKind::format, what) {}
};

/// The problem exceeds a configured size cap (qubits, spins, ...).
struct CapacityError : Error {
    explicit CapacityError(const std::string &what) : Error(ErrorKind::capacity, what) {}
};

/// A required upstream artifact is absent.
struct MissingInput : Error {
    explicit MissingInput(const std::string &what) : Error(ErrorKind::missing_input, what) {}
};

}  // namespace hexq
