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
#include "lofp/lightcone.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lofp {

/// Machine-independent cost of one amplitude evaluation.
struct EvalStats {
    /// Complete assignments that passed every conservation check (paths for
    /// the direct sum, strip assignments for the contraction).
    std::uint64_t feasible_assignments = 0;
    /// Single beam-splitter amplitudes evaluated. This is the work counter
    /// reported by the CLI and the bench harness.
    std::uint64_t bs_evaluations = 0;
    /// Ryser subset steps (permanent method only).
    std::uint64_t subset_steps = 0;
    std::size_t peak_table_entries = 0;
    std::size_t peak_table_bytes = 0;

    [[nodiscard]] std::uint64_t work_counter() const noexcept { return bs_evaluations + subset_steps; }
};

enum class WaveguideClass : std::uint8_t {
    Fixed,       ///< input or output segment, value given
    Free,        ///< enumerated ("green")
    Determined,  ///< forced by conservation ("red")
};

class WaveguideClassification {
public:
    WaveguideClassification(int modes, int depth, std::vector<WaveguideClass> classes, std::vector<WaveguideId> free)
        : modes_(modes), depth_(depth), classes_(std::move(classes)), free_(std::move(free)) {}

    [[nodiscard]] WaveguideClass at(WaveguideId wg) const;
    /// Free segments in enumeration order.
    [[nodiscard]] const std::vector<WaveguideId>& free_segments() const noexcept { return free_; }
    [[nodiscard]] std::size_t free_count() const noexcept { return free_.size(); }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }

private:
    int modes_;
    int depth_;
    std::vector<WaveguideClass> classes_;
    std::vector<WaveguideId> free_;
};

/// Occupation of every segment for one Feynman path.
class PathAssignment {
public:
    PathAssignment(int modes, int depth, std::vector<int> occupations)
        : modes_(modes), depth_(depth), occupations_(std::move(occupations)) {}

    [[nodiscard]] int at(WaveguideId wg) const {
        return occupations_[static_cast<std::size_t>(wg.segment) * static_cast<std::size_t>(modes_) +
                            static_cast<std::size_t>(wg.mode - 1)];
    }
    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    /// Flat, indexed by segment * modes + (mode - 1).
    [[nodiscard]] const std::vector<int>& occupations() const noexcept { return occupations_; }

    friend bool operator==(const PathAssignment&, const PathAssignment&) = default;

private:
    int modes_;
    int depth_;
    std::vector<int> occupations_;
};

/// Marks inputs/outputs fixed, then alternates constraint propagation (an
/// element with three known segments fixes the fourth; a pass-through
/// copies its value) with promoting the earliest unknown segment, lowest
/// layer first and then top mode first, to a free segment. Clements meshes
/// of depth <= 2 end up with no free segments.
[[nodiscard]] WaveguideClassification classify_waveguides(const Interferometer& circuit, const FockState& input,
                                                          const FockState& output);

/// Completes a path from values for the free segments (in
/// classify_waveguides order). Returns nullopt when conservation cannot be
/// met (a derived occupation is negative or a fully known element or
/// pass-through does not balance).
[[nodiscard]] std::optional<PathAssignment> solve_determined(const Interferometer& circuit, const FockState& input,
                                                             const FockState& output, std::span<const int> free_values);

/// Product of the element amplitudes along a valid path.
[[nodiscard]] Amplitude path_amplitude(const Interferometer& circuit, const PathAssignment& path);

struct DirectOptions {
    /// Bound free segments by their light cones; otherwise by N.
    bool light_cone = true;
};

/// Feynman path sum over every valid path. Returns exactly 0 when the input
/// and output photon numbers differ. Free segments are visited in ascending
/// mixed-radix order with a single accumulator, so results are bit-for-bit
/// reproducible.
[[nodiscard]] Amplitude amplitude_direct(const Interferometer& circuit, const FockState& input, const FockState& output,
                                         DirectOptions options = {}, EvalStats* stats = nullptr);

/// Calls `visit` once per valid path, in the same order amplitude_direct
/// sums them.
void for_each_valid_path(const Interferometer& circuit, const FockState& input, const FockState& output,
                         const std::function<void(const PathAssignment&)>& visit, DirectOptions options = {});

}  // namespace lofp
