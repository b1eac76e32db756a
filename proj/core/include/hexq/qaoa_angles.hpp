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

#include <vector>

namespace hexq {

/// Raw QAOA parameters: layer j applies exp(-i gammas[j] H_C) followed by
/// exp(-i betas[j] H_M).
struct QaoaAngles {
    std::vector<double> betas;
    std::vector<double> gammas;

    int p() const noexcept {
        return static_cast<int>(betas.size());
    }
    bool operator==(const QaoaAngles &) const = default;

    /// Packed as [beta_1..beta_p, gamma_1..gamma_p].
    std::vector<double> packed() const {
        std::vector<double> x(betas);
        x.insert(x.end(), gammas.begin(), gammas.end());
        return x;
    }
    static QaoaAngles unpack(const std::vector<double> &x) {
        size_t p = x.size() / 2;
        return {std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
    }
};

}  // namespace hexq
