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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lofp {

enum class Method { Direct, Contraction, Ryser, Auto };

[[nodiscard]] std::string_view to_string(Method method);
/// "direct", "contraction", "ryser" or "auto"; ParseError otherwise.
[[nodiscard]] Method parse_method(std::string_view text);

/// Auto becomes Direct for depth <= 2 or odd M, Contraction otherwise.
/// Other methods are returned unchanged.
[[nodiscard]] Method resolve_method(Method method, const Interferometer& circuit);

/// Single amplitude by the chosen method. Contraction on an odd-mode
/// circuit raises ValidationError. Photon-number mismatches give exactly 0.
[[nodiscard]] Amplitude compute_amplitude(const Interferometer& circuit, const FockState& input, const FockState& output,
                                          Method method, EvalStats* stats = nullptr);

struct OutputDistribution {
    std::vector<FockState> states;
    std::vector<double> probabilities;

    [[nodiscard]] double total() const;
    [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
};

/// |amplitude|^2 for every output state, in enumerate_output_states order.
/// Amplitudes are independent, so up to `threads` workers fill a pre-sized
/// buffer; the result does not depend on the thread count.
[[nodiscard]] OutputDistribution distribution(const Interferometer& circuit, const FockState& input, Method method,
                                              unsigned threads = 1, EvalStats* total_stats = nullptr);

/// (1/2) sum_i |p_i - q_i|. Both distributions must list the same states in
/// the same order (PreconditionError otherwise).
[[nodiscard]] double tvd(const OutputDistribution& p, const OutputDistribution& q);

/// Thread count from LOFP_THREADS; 1 when unset or unparsable.
[[nodiscard]] unsigned threads_from_environment();

/// One benchmark row: a seeded Clements mesh with `density` photons in every
/// input and output mode.
struct BenchCase {
    int modes = 0;
    int depth = 0;
    int density = 1;
    Method method = Method::Auto;
    std::uint64_t seed = 0;
};

struct BenchRecord {
    BenchCase config;
    double wall_seconds = 0.0;
    std::uint64_t work_counter = 0;
    std::size_t peak_table_entries = 0;
    std::size_t peak_table_bytes = 0;
    std::uint64_t feasible_assignments = 0;
    std::optional<std::string> error;
};

/// Parses a bench spec:
///   {"cases": [{"modes": 20, "depth": 3, "density": 1, "method": "auto", "seed": 1}, ...],
///    "sweeps": [{"modes": [20, 40], "depths": [3, 4], "densities": [1],
///                "methods": ["contraction"], "seeds": [1]}]}
/// Both keys are optional; sweeps expand to their cartesian product after
/// the explicit cases. ParseError on malformed input.
[[nodiscard]] std::vector<BenchCase> parse_bench_spec(std::string_view text);

/// Runs one case; failures (odd M, Ryser beyond its size guard, ...) are
/// captured in `error` instead of thrown.
[[nodiscard]] BenchRecord run_bench_case(const BenchCase& config);

[[nodiscard]] std::vector<BenchRecord> run_bench(const std::vector<BenchCase>& cases);

/// modes,depth,density,method,seed,wall_seconds,work_counter,peak_table_entries
/// Failed rows leave the three measurement fields empty.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace lofp
