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

#include "lofp/pathsum.hpp"

#include "lofp/errors.hpp"
#include "plan.hpp"

#include <limits>
#include <numeric>

namespace lofp {

namespace {

void require_matching(const Interferometer& circuit, const FockState& input, const FockState& output) {
    if (input.modes() != circuit.modes() || output.modes() != circuit.modes()) {
        throw PreconditionError("Fock state length (" + std::to_string(input.modes()) + ", " +
                                std::to_string(output.modes()) + ") does not match the " +
                                std::to_string(circuit.modes()) + "-mode circuit");
    }
}

// The whole circuit as one enumeration scope.
struct WholeCircuit {
    detail::Network net;
    detail::Plan plan;
    std::vector<int> values;

    WholeCircuit(const Interferometer& circuit, const FockState& input, const FockState& output) : net(circuit) {
        const int m = circuit.modes();
        const int d = circuit.depth();
        std::vector<bool> known(static_cast<std::size_t>(net.segment_count()), false);
        values.assign(static_cast<std::size_t>(net.segment_count()), 0);
        for (int mode = 1; mode <= m; ++mode) {
            known[static_cast<std::size_t>(net.segment_id(mode, 0))] = true;
            values[static_cast<std::size_t>(net.segment_id(mode, 0))] = input[mode - 1];
        }
        // Outputs are written after inputs so that for depth 0 (input and
        // output share a segment) the mismatch is caught by the caller.
        for (int mode = 1; mode <= m; ++mode) {
            known[static_cast<std::size_t>(net.segment_id(mode, d))] = true;
            values[static_cast<std::size_t>(net.segment_id(mode, d))] = output[mode - 1];
        }
        std::vector<int> unknown;
        for (int j = 1; j < d; ++j)
            for (int mode = 1; mode <= m; ++mode) unknown.push_back(net.segment_id(mode, j));
        std::vector<int> relations(net.relations().size());
        std::iota(relations.begin(), relations.end(), 0);
        std::vector<int> elements(circuit.beam_splitter_count());
        std::iota(elements.begin(), elements.end(), 0);
        plan = detail::compile_plan(net, std::move(known), unknown, relations, elements);
    }
};

template <typename Leaf>
void run_whole(const Interferometer& circuit, const FockState& input, const FockState& output, DirectOptions options,
               detail::ExecutionCounters& counters, Leaf&& leaf) {
    WholeCircuit scope(circuit, input, output);
    const LightConeBounds bounds = options.light_cone ? LightConeBounds(circuit, input, output)
                                                      : LightConeBounds::naive(circuit, input.total_photons());
    detail::Executor exec(scope.net, scope.plan, bounds.flat(), scope.values, counters);
    exec.run(Amplitude{1.0}, [&](Amplitude partial) { leaf(partial, scope.values); });
}

}  // namespace

WaveguideClass WaveguideClassification::at(WaveguideId wg) const {
    if (wg.mode < 1 || wg.mode > modes_ || wg.segment < 0 || wg.segment > depth_) {
        throw ValidationError("waveguide outside the classified circuit");
    }
    return classes_[static_cast<std::size_t>(wg.segment) * static_cast<std::size_t>(modes_) +
                    static_cast<std::size_t>(wg.mode - 1)];
}

WaveguideClassification classify_waveguides(const Interferometer& circuit, const FockState& input,
                                            const FockState& output) {
    require_matching(circuit, input, output);
    const WholeCircuit scope(circuit, input, output);
    const int m = circuit.modes();
    std::vector<WaveguideClass> classes(static_cast<std::size_t>(scope.net.segment_count()), WaveguideClass::Fixed);
    std::vector<WaveguideId> free;
    for (int s : scope.plan.greens) {
        classes[static_cast<std::size_t>(s)] = WaveguideClass::Free;
        free.push_back({s % m + 1, s / m});
    }
    for (int s : scope.plan.derived) {
        // Derived fixed segments only arise for depth 0; they stay fixed.
        if (s / m != 0 && s / m != circuit.depth()) classes[static_cast<std::size_t>(s)] = WaveguideClass::Determined;
    }
    return WaveguideClassification(m, circuit.depth(), std::move(classes), std::move(free));
}

std::optional<PathAssignment> solve_determined(const Interferometer& circuit, const FockState& input,
                                               const FockState& output, std::span<const int> free_values) {
    require_matching(circuit, input, output);
    if (input.total_photons() != output.total_photons()) return std::nullopt;
    WholeCircuit scope(circuit, input, output);
    if (free_values.size() != scope.plan.greens.size()) {
        throw PreconditionError("expected " + std::to_string(scope.plan.greens.size()) + " free-segment values, got " +
                                std::to_string(free_values.size()));
    }
    // Greens are pre-seeded and dropped from the plan; element factors turn
    // into plain conservation checks. Bounds are effectively unlimited so
    // only conservation decides feasibility.
    std::vector<int> bounds(static_cast<std::size_t>(scope.net.segment_count()), std::numeric_limits<int>::max() / 4);
    detail::Plan pinned = scope.plan;
    for (detail::Step& step : pinned.steps) {
        if (step.kind == detail::StepKind::Factor) step = {detail::StepKind::Check, scope.net.element_relation(step.target)};
    }
    for (std::size_t i = 0; i < pinned.greens.size(); ++i) {
        if (free_values[i] < 0) return std::nullopt;
        scope.values[static_cast<std::size_t>(pinned.greens[i])] = free_values[i];
    }
    std::erase_if(pinned.steps, [](const detail::Step& s) { return s.kind == detail::StepKind::Green; });

    if (circuit.depth() == 0 && input != output) return std::nullopt;
    detail::ExecutionCounters counters;
    detail::Executor exec(scope.net, pinned, bounds, scope.values, counters);
    std::optional<PathAssignment> result;
    exec.run(Amplitude{1.0}, [&](Amplitude) { result.emplace(circuit.modes(), circuit.depth(), scope.values); });
    return result;
}

Amplitude path_amplitude(const Interferometer& circuit, const PathAssignment& path) {
    Amplitude product = 1.0;
    for (const BSPlacement& p : circuit.placements()) {
        const int x1 = path.at({p.top_mode, p.layer - 1});
        const int x2 = path.at({p.top_mode + 1, p.layer - 1});
        const int y1 = path.at({p.top_mode, p.layer});
        const int y2 = path.at({p.top_mode + 1, p.layer});
        product *= bs_amplitude(bs_unitary(p.params), x1, x2, y1, y2);
    }
    return product;
}

Amplitude amplitude_direct(const Interferometer& circuit, const FockState& input, const FockState& output,
                           DirectOptions options, EvalStats* stats) {
    require_matching(circuit, input, output);
    if (stats) *stats = {};
    if (input.total_photons() != output.total_photons()) return {};
    if (circuit.depth() == 0) {
        if (stats && input == output) stats->feasible_assignments = 1;
        return input == output ? Amplitude{1.0} : Amplitude{};
    }
    detail::ExecutionCounters counters;
    Amplitude sum{};
    run_whole(circuit, input, output, options, counters, [&](Amplitude partial, const std::vector<int>&) { sum += partial; });
    if (stats) {
        stats->feasible_assignments = counters.feasible_assignments;
        stats->bs_evaluations = counters.bs_evaluations;
    }
    return sum;
}

void for_each_valid_path(const Interferometer& circuit, const FockState& input, const FockState& output,
                         const std::function<void(const PathAssignment&)>& visit, DirectOptions options) {
    require_matching(circuit, input, output);
    if (input.total_photons() != output.total_photons()) return;
    if (circuit.depth() == 0) {
        if (input == output) {
            visit(PathAssignment(circuit.modes(), 0, std::vector<int>(input.occupations().begin(), input.occupations().end())));
        }
        return;
    }
    detail::ExecutionCounters counters;
    run_whole(circuit, input, output, options, counters, [&](Amplitude, const std::vector<int>& values) {
        visit(PathAssignment(circuit.modes(), circuit.depth(), values));
    });
}

}  // namespace lofp
