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

#pragma once

#include "lofp/circuit.hpp"
#include "lofp/fock.hpp"

#include <vector>

namespace lofp {

/// A waveguide segment: `mode` in [1, M], `segment` in [0, D]. Segment 0 is
/// the input, segment j > 0 the stretch right after layer j, so segment D
/// is the output.
struct WaveguideId {
    int mode = 1;
    int segment = 0;

    friend bool operator==(const WaveguideId&, const WaveguideId&) = default;
};

/// Inclusive mode range [first, last], 1-based.
struct ModeInterval {
    int first = 1;
    int last = 0;

    friend bool operator==(const ModeInterval&, const ModeInterval&) = default;
};

/// Input modes that can feed `wg`, traced backwards through the actual
/// element placements. On a Clements mesh this is [m - j + 1, m + j] for
/// odd-parity waveguides, clipped to [1, M]. Throws ValidationError when
/// `wg` is outside the circuit.
[[nodiscard]] ModeInterval past_cone(const Interferometer& circuit, WaveguideId wg);

/// Output modes reachable from `wg`.
[[nodiscard]] ModeInterval future_cone(const Interferometer& circuit, WaveguideId wg);

/// min(photons entering the past cone, photons leaving the future cone).
/// Every valid path puts at most this many photons on `wg`.
[[nodiscard]] int occupation_bound(const Interferometer& circuit, const FockState& input, const FockState& output,
                                   WaveguideId wg);

/// occupation_bound for every segment of a circuit, computed once.
class LightConeBounds {
public:
    LightConeBounds(const Interferometer& circuit, const FockState& input, const FockState& output);

    /// Every segment bounded by the total photon number only.
    static LightConeBounds naive(const Interferometer& circuit, int photons);

    [[nodiscard]] int at(WaveguideId wg) const;
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }

    /// Flat view indexed by segment * modes + (mode - 1).
    [[nodiscard]] const std::vector<int>& flat() const noexcept { return bounds_; }

private:
    LightConeBounds(int modes, int depth, std::vector<int> bounds)
        : modes_(modes), depth_(depth), bounds_(std::move(bounds)) {}

    int modes_ = 0;
    int depth_ = 0;
    std::vector<int> bounds_;
};

}  // namespace lofp
