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
#include "lofp/pathsum.hpp"

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lofp {

/// Occupations of the internal segments 1..D-1 of a strip's lower mode.
using BoundaryTuple = std::vector<int>;

/// Boundary tuple -> accumulated amplitude. Keys are byte-packed (one byte
/// per segment, two when any bound exceeds 255). Identical keys are merged
/// by complex addition unless the table was built in multiset mode; entries
/// iterate in sorted key order once finalized.
class AmplitudeTable {
public:
    struct Entry {
        std::string key;
        Amplitude amplitude;
    };

    AmplitudeTable(int tuple_length, int byte_width, bool merge = true);

    /// The starting table: one empty tuple carrying amplitude 1.
    static AmplitudeTable unit();

    void add(std::span<const int> tuple, Amplitude amplitude);
    void finalize();

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] int tuple_length() const noexcept { return tuple_length_; }
    [[nodiscard]] int byte_width() const noexcept { return byte_width_; }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

    [[nodiscard]] BoundaryTuple tuple(std::size_t index) const;
    void decode(std::size_t index, std::span<int> out) const;

    /// Amplitude stored for `tuple` (sum over duplicates in multiset mode);
    /// 0 when absent.
    [[nodiscard]] Amplitude lookup(std::span<const int> tuple) const;

    /// Sum of all stored amplitudes.
    [[nodiscard]] Amplitude total() const;

    /// Key plus amplitude payload bytes; container overhead not included.
    [[nodiscard]] std::size_t approx_bytes() const noexcept {
        return entries_.size() * (static_cast<std::size_t>(tuple_length_ * byte_width_) + sizeof(Amplitude));
    }

private:
    [[nodiscard]] std::string encode(std::span<const int> tuple) const;

    int tuple_length_;
    int byte_width_;
    bool merge_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Placement indices owned by each strip C_1..C_{M/2} (vector index k-1).
/// Strip k holds modes (2k-1, 2k); an element belongs to the strip of its
/// lower mode, so the straddling element on (2k, 2k+1) goes to C_{k+1}.
/// Throws ValidationError for odd M (use amplitude_direct instead).
[[nodiscard]] std::vector<std::vector<int>> assign_blocks(const Interferometer& circuit);

struct ContractionOptions {
    bool light_cone = true;
    /// false keeps every strip assignment as its own table row and sums at
    /// the end; only useful for checking that merging is exact.
    bool merge = true;
};

/// Top-to-bottom strip contraction for one (input, output) pair. The
/// per-strip enumeration plans and light-cone bounds are built once.
class StripContractor {
public:
    StripContractor(const Interferometer& circuit, const FockState& input, const FockState& output,
                    ContractionOptions options = {});
    ~StripContractor();
    StripContractor(StripContractor&&) noexcept;
    StripContractor& operator=(StripContractor&&) noexcept;

    [[nodiscard]] int strip_count() const noexcept;

    /// Consumes the table left by strip k-1 and returns the one for strip k
    /// (1-based). The last strip returns a table keyed by the empty tuple.
    [[nodiscard]] AmplitudeTable process(int k, const AmplitudeTable& incoming);

    /// Folds process() over every strip.
    [[nodiscard]] Amplitude run();

    [[nodiscard]] const EvalStats& stats() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One strip step; see StripContractor::process.
[[nodiscard]] AmplitudeTable process_block(const Interferometer& circuit, int k, const AmplitudeTable& incoming,
                                           const FockState& input, const FockState& output,
                                           ContractionOptions options = {}, EvalStats* stats = nullptr);

/// Amplitude by strip contraction. Needs even M; depth <= 2 is delegated to
/// amplitude_direct. Returns 0 for a photon-number mismatch or when the
/// final table is empty. `stats` gets the peak table size over all strips.
[[nodiscard]] Amplitude amplitude_contracted(const Interferometer& circuit, const FockState& input,
                                             const FockState& output, ContractionOptions options = {},
                                             EvalStats* stats = nullptr);

}  // namespace lofp
