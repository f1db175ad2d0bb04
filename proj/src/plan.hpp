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

// Internal: the conservation network of a mesh and the compiled enumeration
// plans shared by the direct path sum and the strip contraction.

#pragma once

#include "lofp/beamsplitter.hpp"
#include "lofp/circuit.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lofp::detail {

/// sum_i sign[i] * value[segment[i]] == 0 over `arity` segments.
struct Relation {
    std::array<int, 4> segment{};
    std::array<int, 4> sign{};
    int arity = 0;
};

/// Segment ids are segment * modes + (mode - 1); mode and segment as in
/// WaveguideId. Every element yields one conservation relation and every
/// (mode, layer) an element skips yields an equality relation.
class Network {
public:
    explicit Network(const Interferometer& circuit);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] int segment_count() const noexcept { return modes_ * (depth_ + 1); }
    [[nodiscard]] int segment_id(int mode, int segment) const noexcept { return segment * modes_ + (mode - 1); }

    [[nodiscard]] const std::vector<Relation>& relations() const noexcept { return relations_; }
    /// Relation index of element p (same order as circuit.placements()).
    [[nodiscard]] int element_relation(int placement) const { return element_relation_[static_cast<std::size_t>(placement)]; }
    /// Pass-through relations owned by `mode` (1-based).
    [[nodiscard]] const std::vector<int>& pass_relations(int mode) const {
        return pass_relations_[static_cast<std::size_t>(mode - 1)];
    }
    /// (in_top, in_bottom, out_top, out_bottom) segment ids of element p.
    [[nodiscard]] const std::array<int, 4>& element_segments(int placement) const {
        return element_segments_[static_cast<std::size_t>(placement)];
    }
    [[nodiscard]] const BSUnitary& element_unitary(int placement) const {
        return unitaries_[static_cast<std::size_t>(placement)];
    }

private:
    int modes_ = 0;
    int depth_ = 0;
    std::vector<Relation> relations_;
    std::vector<int> element_relation_;
    std::vector<std::vector<int>> pass_relations_;
    std::vector<std::array<int, 4>> element_segments_;
    std::vector<BSUnitary> unitaries_;
};

enum class StepKind : std::uint8_t { Green, Derive, Check, Factor };

struct Step {
    StepKind kind;
    int target;  // segment for Green/Derive, relation for Check, placement for Factor
    int relation = -1;  // Derive only
};

/// A straight-line program over a scope of unknown segments. Green steps
/// iterate a segment over [0, bound]; Derive steps solve a relation for its
/// one unknown; Check steps test a fully known relation; Factor steps
/// multiply in an element amplitude once its four segments are known.
struct Plan {
    std::vector<Step> steps;
    std::vector<int> greens;
    std::vector<int> derived;
};

/// Compiles a plan. `known` marks segments whose values are supplied before
/// execution; `unknown` lists the scope in green-selection priority order;
/// `relations` and `elements` are the constraints and amplitude factors the
/// plan must cover. Constraint propagation runs to a fixed point before each
/// green choice, so a green is only introduced when nothing can be derived.
[[nodiscard]] Plan compile_plan(const Network& net, std::vector<bool> known, std::span<const int> unknown,
                                std::span<const int> relations, std::span<const int> elements);

struct ExecutionCounters {
    std::uint64_t feasible_assignments = 0;
    std::uint64_t bs_evaluations = 0;
};

/// Depth-first execution: greens ascend (mixed-radix order), derived values
/// must land in [0, bound], checks must hold. `leaf(partial)` runs once per
/// feasible assignment with `values` fully populated for the scope.
class Executor {
public:
    Executor(const Network& net, const Plan& plan, std::span<const int> bounds, std::vector<int>& values,
             ExecutionCounters& counters)
        : net_(net), plan_(plan), bounds_(bounds), values_(values), counters_(counters) {}

    template <typename Leaf>
    void run(Amplitude start, Leaf&& leaf) {
        step(0, start, leaf);
    }

private:
    [[nodiscard]] int relation_residual_without(const Relation& r, int skip_index) const {
        int total = 0;
        for (int i = 0; i < r.arity; ++i)
            if (i != skip_index) total += r.sign[static_cast<std::size_t>(i)] * values_[static_cast<std::size_t>(r.segment[static_cast<std::size_t>(i)])];
        return total;
    }

    template <typename Leaf>
    void step(std::size_t index, Amplitude partial, Leaf& leaf) {
        const auto& steps = plan_.steps;
        while (index < steps.size()) {
            const Step& s = steps[index];
            switch (s.kind) {
                case StepKind::Green: {
                    const int bound = bounds_[static_cast<std::size_t>(s.target)];
                    int& slot = values_[static_cast<std::size_t>(s.target)];
                    for (int v = 0; v <= bound; ++v) {
                        slot = v;
                        step(index + 1, partial, leaf);
                    }
                    return;
                }
                case StepKind::Derive: {
                    const Relation& r = net_.relations()[static_cast<std::size_t>(s.relation)];
                    int pos = 0;
                    while (r.segment[static_cast<std::size_t>(pos)] != s.target) ++pos;
                    const int v = -relation_residual_without(r, pos) * r.sign[static_cast<std::size_t>(pos)];
                    if (v < 0 || v > bounds_[static_cast<std::size_t>(s.target)]) return;
                    values_[static_cast<std::size_t>(s.target)] = v;
                    break;
                }
                case StepKind::Check: {
                    const Relation& r = net_.relations()[static_cast<std::size_t>(s.target)];
                    if (relation_residual_without(r, -1) != 0) return;
                    break;
                }
                case StepKind::Factor: {
                    const auto& seg = net_.element_segments(s.target);
                    partial *= bs_amplitude(net_.element_unitary(s.target), values_[static_cast<std::size_t>(seg[0])],
                                            values_[static_cast<std::size_t>(seg[1])], values_[static_cast<std::size_t>(seg[2])],
                                            values_[static_cast<std::size_t>(seg[3])]);
                    ++counters_.bs_evaluations;
                    break;
                }
            }
            ++index;
        }
        ++counters_.feasible_assignments;
        leaf(partial);
    }

    const Network& net_;
    const Plan& plan_;
    std::span<const int> bounds_;
    std::vector<int>& values_;
    ExecutionCounters& counters_;
};

}  // namespace lofp::detail
