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

#include "lofp/contraction.hpp"

#include "lofp/errors.hpp"
#include "lofp/lightcone.hpp"
#include "plan.hpp"

#include <algorithm>
#include <string>

namespace lofp {

// ---------------------------------------------------------------------------
// AmplitudeTable

AmplitudeTable::AmplitudeTable(int tuple_length, int byte_width, bool merge)
    : tuple_length_(tuple_length), byte_width_(byte_width), merge_(merge) {
    if (tuple_length < 0) throw PreconditionError("negative boundary tuple length");
    if (byte_width != 1 && byte_width != 2) throw PreconditionError("boundary keys use one or two bytes per entry");
}

AmplitudeTable AmplitudeTable::unit() {
    AmplitudeTable table(0, 1);
    table.add({}, 1.0);
    table.finalize();
    return table;
}

std::string AmplitudeTable::encode(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != tuple_length_) {
        throw PreconditionError("boundary tuple has length " + std::to_string(tuple.size()) + ", table expects " +
                                std::to_string(tuple_length_));
    }
    std::string key(static_cast<std::size_t>(tuple_length_ * byte_width_), '\0');
    const int limit = byte_width_ == 1 ? 0xFF : 0xFFFF;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const int v = tuple[i];
        if (v < 0 || v > limit) throw PreconditionError("occupation does not fit the boundary key width");
        // Big-endian so byte order matches numeric order when sorting.
        if (byte_width_ == 2) {
            key[2 * i] = static_cast<char>((v >> 8) & 0xFF);
            key[2 * i + 1] = static_cast<char>(v & 0xFF);
        } else {
            key[i] = static_cast<char>(v);
        }
    }
    return key;
}

void AmplitudeTable::add(std::span<const int> tuple, Amplitude amplitude) {
    std::string key = encode(tuple);
    if (!merge_) {
        entries_.push_back({std::move(key), amplitude});
        return;
    }
    auto [it, inserted] = index_.try_emplace(key, entries_.size());
    if (inserted)
        entries_.push_back({std::move(key), amplitude});
    else
        entries_[it->second].amplitude += amplitude;
}

void AmplitudeTable::finalize() {
    // char_traits<char> orders bytes as unsigned char, i.e. numerically.
    std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    index_.clear();
    if (merge_) {
        index_.reserve(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].key, i);
    }
}

void AmplitudeTable::decode(std::size_t index, std::span<int> out) const {
    const std::string& key = entries_.at(index).key;
    for (int i = 0; i < tuple_length_; ++i) {
        if (byte_width_ == 2) {
            out[static_cast<std::size_t>(i)] = (static_cast<unsigned char>(key[static_cast<std::size_t>(2 * i)]) << 8) |
                                               static_cast<unsigned char>(key[static_cast<std::size_t>(2 * i + 1)]);
        } else {
            out[static_cast<std::size_t>(i)] = static_cast<unsigned char>(key[static_cast<std::size_t>(i)]);
        }
    }
}

BoundaryTuple AmplitudeTable::tuple(std::size_t index) const {
    BoundaryTuple out(static_cast<std::size_t>(tuple_length_));
    decode(index, out);
    return out;
}

Amplitude AmplitudeTable::lookup(std::span<const int> tuple) const {
    const std::string key = encode(tuple);
    if (merge_) {
        auto it = index_.find(key);
        return it == index_.end() ? Amplitude{} : entries_[it->second].amplitude;
    }
    Amplitude sum{};
    for (const Entry& e : entries_)
        if (e.key == key) sum += e.amplitude;
    return sum;
}

Amplitude AmplitudeTable::total() const {
    Amplitude sum{};
    for (const Entry& e : entries_) sum += e.amplitude;
    return sum;
}

// ---------------------------------------------------------------------------
// Strip assignment

std::vector<std::vector<int>> assign_blocks(const Interferometer& circuit) {
    const int m = circuit.modes();
    if (m % 2 != 0) {
        throw ValidationError("strip contraction needs an even mode count (got " + std::to_string(m) +
                              "); use the direct path sum instead");
    }
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m / 2));
    const auto placements = circuit.placements();
    for (std::size_t i = 0; i < placements.size(); ++i) {
        const int lower = placements[i].top_mode + 1;
        blocks[static_cast<std::size_t>((lower - 1) / 2)].push_back(static_cast<int>(i));
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// StripContractor

struct StripContractor::Impl {
    Interferometer circuit;
    detail::Network net;
    std::vector<int> bounds;
    std::vector<int> values;
    std::vector<detail::Plan> plans;
    ContractionOptions options;
    int byte_width = 1;
    EvalStats stats;
    detail::ExecutionCounters counters;

    Impl(const Interferometer& c, const FockState& input, const FockState& output, ContractionOptions opts)
        : circuit(c), net(c), options(opts) {
        if (input.modes() != c.modes() || output.modes() != c.modes()) {
            throw PreconditionError("Fock state length does not match the circuit");
        }
        if (input.total_photons() != output.total_photons()) {
            throw PreconditionError("strip contraction needs equal input and output photon numbers");
        }
        const auto blocks = assign_blocks(c);
        const int d = c.depth();
        if (d < 1) throw PreconditionError("strip contraction needs depth >= 1");
        bounds = opts.light_cone ? LightConeBounds(c, input, output).flat()
                                 : LightConeBounds::naive(c, input.total_photons()).flat();
        const int widest = bounds.empty() ? 0 : *std::max_element(bounds.begin(), bounds.end());
        byte_width = widest > 0xFF ? 2 : 1;

        values.assign(static_cast<std::size_t>(net.segment_count()), 0);
        for (int mode = 1; mode <= c.modes(); ++mode) {
            values[static_cast<std::size_t>(net.segment_id(mode, 0))] = input[mode - 1];
            values[static_cast<std::size_t>(net.segment_id(mode, d))] = output[mode - 1];
        }

        for (int k = 1; k <= c.modes() / 2; ++k) {
            const int upper = 2 * k - 1;
            const int lower = 2 * k;
            std::vector<bool> known(static_cast<std::size_t>(net.segment_count()), false);
            for (int mode = 1; mode <= c.modes(); ++mode) {
                for (int j = 0; j <= d; ++j) {
                    const bool internal = j > 0 && j < d;
                    if (!internal || mode < upper) known[static_cast<std::size_t>(net.segment_id(mode, j))] = true;
                }
            }
            std::vector<int> unknown;
            for (int j = 1; j < d; ++j) {
                unknown.push_back(net.segment_id(upper, j));
                unknown.push_back(net.segment_id(lower, j));
            }
            const auto& elements = blocks[static_cast<std::size_t>(k - 1)];
            std::vector<int> relations;
            for (int p : elements) relations.push_back(net.element_relation(p));
            for (int mode : {upper, lower})
                for (int r : net.pass_relations(mode)) relations.push_back(r);
            plans.push_back(detail::compile_plan(net, std::move(known), unknown, relations, elements));
        }
    }

    [[nodiscard]] int strips() const { return circuit.modes() / 2; }

    void record(const AmplitudeTable& table) {
        stats.peak_table_entries = std::max(stats.peak_table_entries, table.size());
        stats.peak_table_bytes = std::max(stats.peak_table_bytes, table.approx_bytes());
    }

    AmplitudeTable process(int k, const AmplitudeTable& incoming) {
        if (k < 1 || k > strips()) throw PreconditionError("strip index out of range");
        const int d = circuit.depth();
        const int expected_in = k == 1 ? 0 : d - 1;
        if (incoming.tuple_length() != expected_in) {
            throw PreconditionError("incoming table for strip " + std::to_string(k) + " must have tuples of length " +
                                    std::to_string(expected_in));
        }
        const bool last = k == strips();
        AmplitudeTable outgoing(last ? 0 : d - 1, byte_width, options.merge);
        const int lower = 2 * k;
        std::vector<int> in_tuple(static_cast<std::size_t>(expected_in));
        std::vector<int> out_tuple(static_cast<std::size_t>(last ? 0 : d - 1));

        detail::Executor exec(net, plans[static_cast<std::size_t>(k - 1)], bounds, values, counters);
        for (std::size_t e = 0; e < incoming.size(); ++e) {
            if (expected_in > 0) {
                incoming.decode(e, in_tuple);
                for (int j = 1; j < d; ++j) {
                    values[static_cast<std::size_t>(net.segment_id(lower - 2, j))] = in_tuple[static_cast<std::size_t>(j - 1)];
                }
            }
            exec.run(incoming.entries()[e].amplitude, [&](Amplitude amplitude) {
                for (std::size_t j = 0; j < out_tuple.size(); ++j) {
                    out_tuple[j] = values[static_cast<std::size_t>(net.segment_id(lower, static_cast<int>(j) + 1))];
                }
                outgoing.add(out_tuple, amplitude);
            });
        }
        outgoing.finalize();
        record(incoming);
        record(outgoing);
        stats.feasible_assignments = counters.feasible_assignments;
        stats.bs_evaluations = counters.bs_evaluations;
        return outgoing;
    }

    Amplitude run() {
        AmplitudeTable table = AmplitudeTable::unit();
        for (int k = 1; k <= strips(); ++k) {
            table = process(k, table);
            if (table.empty()) return {};
        }
        return table.total();
    }
};

StripContractor::StripContractor(const Interferometer& circuit, const FockState& input, const FockState& output,
                                 ContractionOptions options)
    : impl_(std::make_unique<Impl>(circuit, input, output, options)) {}

StripContractor::~StripContractor() = default;
StripContractor::StripContractor(StripContractor&&) noexcept = default;
StripContractor& StripContractor::operator=(StripContractor&&) noexcept = default;

int StripContractor::strip_count() const noexcept { return impl_->strips(); }

AmplitudeTable StripContractor::process(int k, const AmplitudeTable& incoming) { return impl_->process(k, incoming); }

Amplitude StripContractor::run() { return impl_->run(); }

const EvalStats& StripContractor::stats() const noexcept { return impl_->stats; }

AmplitudeTable process_block(const Interferometer& circuit, int k, const AmplitudeTable& incoming,
                             const FockState& input, const FockState& output, ContractionOptions options,
                             EvalStats* stats) {
    StripContractor contractor(circuit, input, output, options);
    AmplitudeTable out = contractor.process(k, incoming);
    if (stats) *stats = contractor.stats();
    return out;
}

Amplitude amplitude_contracted(const Interferometer& circuit, const FockState& input, const FockState& output,
                               ContractionOptions options, EvalStats* stats) {
    if (circuit.modes() % 2 != 0) (void)assign_blocks(circuit);
    if (input.modes() != circuit.modes() || output.modes() != circuit.modes()) {
        throw PreconditionError("Fock state length does not match the circuit");
    }
    if (stats) *stats = {};
    if (input.total_photons() != output.total_photons()) return {};
    if (circuit.depth() <= 2) return amplitude_direct(circuit, input, output, DirectOptions{options.light_cone}, stats);
    StripContractor contractor(circuit, input, output, options);
    const Amplitude result = contractor.run();
    if (stats) *stats = contractor.stats();
    return result;
}

}  // namespace lofp
