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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hexq/error.hpp"

namespace {

int exit_code(hexq::ErrorKind kind) {
    switch (kind) {
        case hexq::ErrorKind::invalid_argument:
        case hexq::ErrorKind::format:
            return 2;
        case hexq::ErrorKind::capacity:
            return 3;
        case hexq::ErrorKind::missing_input:
            return 4;
    }
    return 5;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heavy-hex QAOA angle training, transfer and circuit tools", "hexq"};
    app.set_version_flag("--version", HEXQ_VERSION);
    hexq::cli::Context ctx;
    ctx.argv.assign(argv + 1, argv + argc);
    app.add_option("-j,--jobs", ctx.jobs, "Worker thread cap")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("-q,--quiet", ctx.quiet, "Suppress progress messages");
    hexq::cli::register_commands(app, ctx);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hexq::Error &e) {
        std::cerr << "hexq: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "hexq: internal error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
