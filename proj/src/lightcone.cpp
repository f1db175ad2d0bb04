/*
 * Copyright 2026 The LOFP Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lofp/lightcone.hpp"

#include "lofp/errors.hpp"

#include <algorithm>
#include <string>

namespace lofp {

namespace {

void require_in_circuit(const Interferometer& circuit, WaveguideId wg) {
    if (wg.mode < 1 || wg.mode > circuit.modes() || wg.segment < 0 || wg.segment > circuit.depth()) {
        throw ValidationError("waveguide (mode " + std::to_string(wg.mode) + ", segment " + std::to_string(wg.segment) +
                              ") outside a " + std::to_string(circuit.modes()) + "-mode, depth-" +
                              std::to_string(circuit.depth()) + " circuit");
    }
}

// The reachable set stays an interval because elements only couple
// neighbours; a layer can only widen it at either end.
ModeInterval widen(const Interferometer& circuit, int layer, ModeInterval cone) {
    if (int p = circuit.placement_at(layer, cone.first); p >= 0) {
        cone.first = std::min(cone.first, circuit.placements()[static_cast<std::size_t>(p)].top_mode);
    }
    if (int p = circuit.placement_at(layer, cone.last); p >= 0) {
        cone.last = std::max(cone.last, circuit.placements()[static_cast<std::size_t>(p)].top_mode + 1);
    }
    return cone;
}

int sum_over(const FockState& state, ModeInterval cone) {
    int total = 0;
    for (int m = cone.first; m <= cone.last; ++m) total += state[m - 1];
    return total;
}

}  // namespace

ModeInterval past_cone(const Interferometer& circuit, WaveguideId wg) {
    require_in_circuit(circuit, wg);
    ModeInterval cone{wg.mode, wg.mode};
    for (int layer = wg.segment; layer >= 1; --layer) cone = widen(circuit, layer, cone);
    return cone;
}

ModeInterval future_cone(const Interferometer& circuit, WaveguideId wg) {
    require_in_circuit(circuit, wg);
    ModeInterval cone{wg.mode, wg.mode};
    for (int layer = wg.segment + 1; layer <= circuit.depth(); ++layer) cone = widen(circuit, layer, cone);
    return cone;
}

int occupation_bound(const Interferometer& circuit, const FockState& input, const FockState& output, WaveguideId wg) {
    if (input.modes() != circuit.modes() || output.modes() != circuit.modes()) {
        throw PreconditionError("Fock state length does not match the circuit");
    }
    if (input.total_photons() != output.total_photons()) {
        throw PreconditionError("light-cone bounds need equal input and output photon numbers");
    }
    return std::min(sum_over(input, past_cone(circuit, wg)), sum_over(output, future_cone(circuit, wg)));
}

LightConeBounds::LightConeBounds(const Interferometer& circuit, const FockState& input, const FockState& output)
    : modes_(circuit.modes()), depth_(circuit.depth()) {
    if (input.modes() != modes_ || output.modes() != modes_) {
        throw PreconditionError("Fock state length does not match the circuit");
    }
    if (input.total_photons() != output.total_photons()) {
        throw PreconditionError("light-cone bounds need equal input and output photon numbers");
    }
    // Prefix sums make each cone sum O(1); cones themselves are built
    // incrementally per mode, so the whole table costs O(M D^2) at worst.
    std::vector<int> in_prefix(static_cast<std::size_t>(modes_) + 1, 0);
    std::vector<int> out_prefix(static_cast<std::size_t>(modes_) + 1, 0);
    for (int m = 0; m < modes_; ++m) {
        in_prefix[static_cast<std::size_t>(m) + 1] = in_prefix[static_cast<std::size_t>(m)] + input[m];
        out_prefix[static_cast<std::size_t>(m) + 1] = out_prefix[static_cast<std::size_t>(m)] + output[m];
    }
    auto range_sum = [](const std::vector<int>& prefix, ModeInterval c) {
        return prefix[static_cast<std::size_t>(c.last)] - prefix[static_cast<std::size_t>(c.first) - 1];
    };
    bounds_.resize(static_cast<std::size_t>(modes_) * static_cast<std::size_t>(depth_ + 1));
    for (int j = 0; j <= depth_; ++j) {
        for (int m = 1; m <= modes_; ++m) {
            const WaveguideId wg{m, j};
            const int past = range_sum(in_prefix, past_cone(circuit, wg));
            const int future = range_sum(out_prefix, future_cone(circuit, wg));
            bounds_[static_cast<std::size_t>(j) * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(m - 1)] =
                std::min(past, future);
        }
    }
}

LightConeBounds LightConeBounds::naive(const Interferometer& circuit, int photons) {
    return LightConeBounds(circuit.modes(), circuit.depth(),
                           std::vector<int>(static_cast<std::size_t>(circuit.modes()) *
                                                static_cast<std::size_t>(circuit.depth() + 1),
                                            photons));
}

int LightConeBounds::at(WaveguideId wg) const {
    if (wg.mode < 1 || wg.mode > modes_ || wg.segment < 0 || wg.segment > depth_) {
        throw ValidationError("waveguide outside the bound table");
    }
    return bounds_[static_cast<std::size_t>(wg.segment) * static_cast<std::size_t>(modes_) +
                   static_cast<std::size_t>(wg.mode - 1)];
}

}  // namespace lofp
