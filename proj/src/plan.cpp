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

#include "plan.hpp"

#include "lofp/errors.hpp"

#include <algorithm>

namespace lofp::detail {

Network::Network(const Interferometer& circuit) : modes_(circuit.modes()), depth_(circuit.depth()) {
    const auto placements = circuit.placements();
    element_relation_.reserve(placements.size());
    element_segments_.reserve(placements.size());
    unitaries_.reserve(placements.size());
    for (const BSPlacement& p : placements) {
        const std::array<int, 4> seg{segment_id(p.top_mode, p.layer - 1), segment_id(p.top_mode + 1, p.layer - 1),
                                     segment_id(p.top_mode, p.layer), segment_id(p.top_mode + 1, p.layer)};
        element_relation_.push_back(static_cast<int>(relations_.size()));
        relations_.push_back(Relation{seg, {1, 1, -1, -1}, 4});
        element_segments_.push_back(seg);
        unitaries_.push_back(bs_unitary(p.params));
    }
    pass_relations_.resize(static_cast<std::size_t>(modes_));
    for (int layer = 1; layer <= depth_; ++layer) {
        for (int mode = 1; mode <= modes_; ++mode) {
            if (circuit.placement_at(layer, mode) >= 0) continue;
            pass_relations_[static_cast<std::size_t>(mode - 1)].push_back(static_cast<int>(relations_.size()));
            relations_.push_back(Relation{{segment_id(mode, layer - 1), segment_id(mode, layer), 0, 0}, {1, -1, 0, 0}, 2});
        }
    }
}

Plan compile_plan(const Network& net, std::vector<bool> known, std::span<const int> unknown,
                  std::span<const int> relations, std::span<const int> elements) {
    Plan plan;
    std::vector<int> element_of_relation(net.relations().size(), -1);
    for (int p : elements) element_of_relation[static_cast<std::size_t>(net.element_relation(p))] = p;

    std::vector<bool> used(relations.size(), false);
    auto mark_used = [&](std::size_t i) {
        used[i] = true;
        // An element's amplitude is only evaluated after its conservation
        // relation has been enforced, so bs_amplitude never sees a violation.
        if (int p = element_of_relation[static_cast<std::size_t>(relations[i])]; p >= 0) {
            plan.steps.push_back({StepKind::Factor, p});
        }
    };
    auto propagate = [&] {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < relations.size(); ++i) {
                if (used[i]) continue;
                const Relation& r = net.relations()[static_cast<std::size_t>(relations[i])];
                int unknown_count = 0;
                int last_unknown = -1;
                for (int k = 0; k < r.arity; ++k) {
                    const int s = r.segment[static_cast<std::size_t>(k)];
                    if (!known[static_cast<std::size_t>(s)]) {
                        ++unknown_count;
                        last_unknown = s;
                    }
                }
                if (unknown_count == 0) {
                    plan.steps.push_back({StepKind::Check, relations[i]});
                    mark_used(i);
                    changed = true;
                } else if (unknown_count == 1) {
                    plan.steps.push_back({StepKind::Derive, last_unknown, relations[i]});
                    plan.derived.push_back(last_unknown);
                    known[static_cast<std::size_t>(last_unknown)] = true;
                    mark_used(i);
                    changed = true;
                }
            }
        }
    };

    propagate();
    for (int s : unknown) {
        if (known[static_cast<std::size_t>(s)]) continue;
        plan.steps.push_back({StepKind::Green, s});
        plan.greens.push_back(s);
        known[static_cast<std::size_t>(s)] = true;
        propagate();
    }
    for (std::size_t i = 0; i < relations.size(); ++i) {
        if (!used[i]) throw PreconditionError("enumeration plan left a relation over segments outside its scope");
    }
    for (int p : elements) {
        if (std::find(relations.begin(), relations.end(), net.element_relation(p)) == relations.end()) {
            throw PreconditionError("enumeration plan has an element without its conservation relation");
        }
    }
    return plan;
}

}  // namespace lofp::detail
