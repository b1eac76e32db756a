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

// Internal helper shared by the exhaustive solvers: per-node local fields.

#include <vector>

#include "hexq/instance.hpp"

namespace hexq::detail {

/// For every node, the terms containing it with the other participating nodes
/// (-1 for unused slots).
struct Incidence {
    struct Entry {
        int coeff;
        int a;
        int b;
    };
    std::vector<std::vector<Entry>> by_node;

    explicit Incidence(const IsingInstance &instance) : by_node(instance.node_count()) {
        for (const auto &t : instance.terms()) {
            for (int s = 0; s < t.order; s++) {
                Entry e{t.coeff, -1, -1};
                int slot = 0;
                for (int o = 0; o < t.order; o++) {
                    if (o != s) {
                        (slot++ == 0 ? e.a : e.b) = t.nodes[o];
                    }
                }
                by_node[t.nodes[s]].push_back(e);
            }
        }
    }

    /// Coefficient of z_j in C(z); flipping j changes C by -2 z_j field.
    int field(int j, const int8_t *z) const {
        int h = 0;
        for (const auto &e : by_node[j]) {
            int v = e.coeff;
            if (e.a >= 0) v *= z[e.a];
            if (e.b >= 0) v *= z[e.b];
            h += v;
        }
        return h;
    }
};

}  // namespace hexq::detail
