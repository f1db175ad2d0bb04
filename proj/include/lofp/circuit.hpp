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

#include "lofp/beamsplitter.hpp"
#include "lofp/matrix.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lofp {

/// One beam splitter in the mesh. `layer` is 1-based, `top_mode` is 1-based
/// and the element couples (top_mode, top_mode + 1).
struct BSPlacement {
    int layer = 1;
    int top_mode = 1;
    BSParams params;

    friend bool operator==(const BSPlacement&, const BSPlacement&) = default;
};

/// A planar, nearest-neighbour interferometer of `modes` waveguides and
/// `depth` beam-splitter layers. Modes not covered by a layer pass through.
///
/// Invariants (checked on construction, ValidationError otherwise): layers
/// in [1, depth], top modes in [1, modes - 1], no mode used twice in a layer.
/// Placements are kept sorted by (layer, top_mode).
class Interferometer {
public:
    Interferometer() = default;
    Interferometer(int modes, int depth, std::vector<BSPlacement> placements);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] std::span<const BSPlacement> placements() const noexcept { return placements_; }
    [[nodiscard]] std::size_t beam_splitter_count() const noexcept { return placements_.size(); }

    /// Index into placements() of the beam splitter in `layer` (1-based) that
    /// touches `mode` (1-based), or -1 if the mode passes straight through.
    [[nodiscard]] int placement_at(int layer, int mode) const;

    friend bool operator==(const Interferometer&, const Interferometer&) = default;

private:
    int modes_ = 0;
    int depth_ = 0;
    std::vector<BSPlacement> placements_;
    std::vector<int> slot_;  // (layer-1) * modes + (mode-1) -> placement index or -1
};

/// Portable seeded generator for circuit angles: std::mt19937_64, whose
/// output sequence is fixed by the C++ standard, with doubles formed from the
/// top 53 bits. std::uniform_real_distribution is avoided because its output
/// differs between standard library implementations.
class CircuitRng {
public:
    explicit CircuitRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::mt19937_64 engine_;
};

/// Staggered Clements mesh. Odd layers couple (1,2), (3,4), ..., (M-1,M);
/// even layers couple (2,3), ..., (M-2,M-1) and leave modes 1 and M alone.
/// Angles are drawn per element, theta ~ U[0, pi/2] then phi ~ U[0, pi].
[[nodiscard]] Interferometer build_clements_mesh(int modes, int depth, std::uint64_t seed);

/// Same topology with explicit angles, consumed in placement order.
[[nodiscard]] Interferometer build_clements_mesh(int modes, int depth, std::span<const BSParams> params);

/// Number of elements a Clements mesh of this shape holds.
[[nodiscard]] int clements_beam_splitter_count(int modes, int depth);

/// U = U_D ... U_1 with each layer's 2x2 blocks embedded on their modes.
[[nodiscard]] UnitaryMatrix circuit_unitary(const Interferometer& circuit);

/// `first` followed by `second` (layers of `second` shifted by first.depth()).
[[nodiscard]] Interferometer concatenate(const Interferometer& first, const Interferometer& second);

/// Layer order mirrored (layer j -> D + 1 - j). Angles are kept as is, so
/// this is a connectivity mirror, not the inverse unitary.
[[nodiscard]] Interferometer mirror_layers(const Interferometer& circuit);

/// JSON document {"modes", "depth", "placements": [{"layer", "top_mode",
/// "theta", "phi"}]}, angles with 17 significant digits.
[[nodiscard]] std::string serialize_circuit(const Interferometer& circuit);

/// Inverse of serialize_circuit. Malformed JSON or missing/mistyped fields
/// raise ParseError naming the field; invariant violations raise
/// ValidationError.
[[nodiscard]] Interferometer parse_circuit(std::string_view text);

}  // namespace lofp
