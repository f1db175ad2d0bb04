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

#include "lofp/analysis.hpp"

#include "lofp/contraction.hpp"
#include "lofp/errors.hpp"
#include "lofp/permanent.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace lofp {

namespace {

using json = nlohmann::json;

int bench_int(const json& item, const char* key, const std::string& where) {
    auto it = item.find(key);
    if (it == item.end()) throw ParseError(where + ": missing field '" + key + "'");
    if (!it->is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
    return it->get<int>();
}

std::vector<json> bench_list(const json& item, const char* key, const std::string& where) {
    auto it = item.find(key);
    if (it == item.end()) throw ParseError(where + ": missing field '" + key + "'");
    if (!it->is_array()) throw ParseError(where + ": field '" + key + "' must be an array");
    return std::vector<json>(it->begin(), it->end());
}

Method bench_method(const json& value, const std::string& where) {
    if (!value.is_string()) throw ParseError(where + ": method must be a string");
    return parse_method(value.get<std::string>());
}

std::uint64_t bench_seed(const json& value, const std::string& where) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw ParseError(where + ": seed must be a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Direct: return "direct";
        case Method::Contraction: return "contraction";
        case Method::Ryser: return "ryser";
        case Method::Auto: return "auto";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    if (text == "direct") return Method::Direct;
    if (text == "contraction") return Method::Contraction;
    if (text == "ryser") return Method::Ryser;
    if (text == "auto") return Method::Auto;
    throw ParseError("unknown method '" + std::string(text) + "' (expected direct, contraction, ryser or auto)");
}

Method resolve_method(Method method, const Interferometer& circuit) {
    if (method != Method::Auto) return method;
    if (circuit.depth() <= 2 || circuit.modes() % 2 != 0) return Method::Direct;
    return Method::Contraction;
}

Amplitude compute_amplitude(const Interferometer& circuit, const FockState& input, const FockState& output,
                            Method method, EvalStats* stats) {
    if (stats) *stats = {};
    switch (resolve_method(method, circuit)) {
        case Method::Direct: return amplitude_direct(circuit, input, output, {}, stats);
        case Method::Contraction: return amplitude_contracted(circuit, input, output, {}, stats);
        case Method::Ryser: {
            if (input.modes() != circuit.modes() || output.modes() != circuit.modes()) {
                throw PreconditionError("Fock state length does not match the circuit");
            }
            if (input.total_photons() != output.total_photons()) return {};
            std::uint64_t steps = 0;
            const Amplitude a = amplitude_via_permanent(circuit_unitary(circuit), input, output, &steps);
            if (stats) stats->subset_steps = steps;
            return a;
        }
        case Method::Auto: break;
    }
    throw PreconditionError("unresolved method");
}

double OutputDistribution::total() const {
    double sum = 0.0;
    for (double p : probabilities) sum += p;
    return sum;
}

OutputDistribution distribution(const Interferometer& circuit, const FockState& input, Method method, unsigned threads,
                                EvalStats* total_stats) {
    if (input.modes() != circuit.modes()) throw PreconditionError("Fock state length does not match the circuit");
    const Method resolved = resolve_method(method, circuit);
    if (resolved == Method::Contraction) (void)assign_blocks(circuit);
    if (resolved == Method::Ryser && input.total_photons() > kRyserMaxSize) {
        throw PreconditionError("too many photons for the Ryser baseline");
    }

    OutputDistribution dist;
    dist.states = enumerate_output_states(circuit.modes(), input.total_photons());
    dist.probabilities.assign(dist.states.size(), 0.0);
    std::vector<EvalStats> stats(dist.states.size());

    // The unitary is shared across all outputs for the permanent baseline.
    const UnitaryMatrix u = resolved == Method::Ryser ? circuit_unitary(circuit) : UnitaryMatrix{};
    auto evaluate = [&](std::size_t i) {
        Amplitude a;
        if (resolved == Method::Ryser) {
            std::uint64_t steps = 0;
            a = amplitude_via_permanent(u, input, dist.states[i], &steps);
            stats[i].subset_steps = steps;
        } else {
            a = compute_amplitude(circuit, input, dist.states[i], resolved, &stats[i]);
        }
        dist.probabilities[i] = std::norm(a);
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(dist.states.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < dist.states.size(); ++i) evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                while (!failed.load()) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= dist.states.size()) return;
                    try {
                        evaluate(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& worker : pool) worker.join();
        if (failure) std::rethrow_exception(failure);
    }

    if (total_stats) {
        *total_stats = {};
        for (const EvalStats& s : stats) {
            total_stats->feasible_assignments += s.feasible_assignments;
            total_stats->bs_evaluations += s.bs_evaluations;
            total_stats->subset_steps += s.subset_steps;
            total_stats->peak_table_entries = std::max(total_stats->peak_table_entries, s.peak_table_entries);
            total_stats->peak_table_bytes = std::max(total_stats->peak_table_bytes, s.peak_table_bytes);
        }
    }
    return dist;
}

double tvd(const OutputDistribution& p, const OutputDistribution& q) {
    if (p.size() != q.size() || p.probabilities.size() != q.probabilities.size()) {
        throw PreconditionError("distributions have different lengths");
    }
    if (p.states != q.states) throw PreconditionError("distributions list different output states");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.probabilities.size(); ++i) sum += std::abs(p.probabilities[i] - q.probabilities[i]);
    return 0.5 * sum;
}

unsigned threads_from_environment() {
    const char* value = std::getenv("LOFP_THREADS");
    if (!value || !*value) return 1;
    char* end = nullptr;
    const unsigned long n = std::strtoul(value, &end, 10);
    if (end == value || *end != '\0' || n == 0) return 1;
    return static_cast<unsigned>(std::min<unsigned long>(n, 1024));
}

std::vector<BenchCase> parse_bench_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bench spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("bench spec must be a JSON object");
    std::vector<BenchCase> cases;
    if (auto it = doc.find("cases"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("bench spec: 'cases' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& item = (*it)[i];
            const std::string where = "cases[" + std::to_string(i) + "]";
            if (!item.is_object()) throw ParseError(where + ": must be an object");
            BenchCase c;
            c.modes = bench_int(item, "modes", where);
            c.depth = bench_int(item, "depth", where);
            c.density = item.contains("density") ? bench_int(item, "density", where) : 1;
            c.method = item.contains("method") ? bench_method(item["method"], where) : Method::Auto;
            c.seed = item.contains("seed") ? bench_seed(item["seed"], where) : 0;
            cases.push_back(c);
        }
    }
    if (auto it = doc.find("sweeps"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("bench spec: 'sweeps' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& sweep = (*it)[i];
            const std::string where = "sweeps[" + std::to_string(i) + "]";
            if (!sweep.is_object()) throw ParseError(where + ": must be an object");
            const auto modes = bench_list(sweep, "modes", where);
            const auto depths = bench_list(sweep, "depths", where);
            const auto densities = sweep.contains("densities") ? bench_list(sweep, "densities", where) : std::vector<json>{1};
            const auto methods = sweep.contains("methods") ? bench_list(sweep, "methods", where) : std::vector<json>{"auto"};
            const auto seeds = sweep.contains("seeds") ? bench_list(sweep, "seeds", where) : std::vector<json>{0};
            for (const json& method : methods)
                for (const json& depth : depths)
                    for (const json& density : densities)
                        for (const json& mode : modes)
                            for (const json& seed : seeds) {
                                if (!mode.is_number_integer() || !depth.is_number_integer() ||
                                    !density.is_number_integer()) {
                                    throw ParseError(where + ": modes, depths and densities must hold integers");
                                }
                                cases.push_back({mode.get<int>(), depth.get<int>(), density.get<int>(),
                                                 bench_method(method, where), bench_seed(seed, where)});
                            }
        }
    }
    return cases;
}

BenchRecord run_bench_case(const BenchCase& config) {
    BenchRecord record;
    record.config = config;
    try {
        if (config.density < 0) throw ValidationError("density must be non-negative");
        const Interferometer circuit = build_clements_mesh(config.modes, config.depth, config.seed);
        const FockState state = FockState::uniform(config.modes, config.density);
        if (resolve_method(config.method, circuit) == Method::Ryser && state.total_photons() > kRyserMaxSize) {
            throw PreconditionError("Ryser baseline skipped: " + std::to_string(state.total_photons()) +
                                    " photons exceed the size guard");
        }
        EvalStats stats;
        const auto start = std::chrono::steady_clock::now();
        (void)compute_amplitude(circuit, state, state, config.method, &stats);
        const auto stop = std::chrono::steady_clock::now();
        record.wall_seconds = std::chrono::duration<double>(stop - start).count();
        record.work_counter = stats.work_counter();
        record.peak_table_entries = stats.peak_table_entries;
        record.peak_table_bytes = stats.peak_table_bytes;
        record.feasible_assignments = stats.feasible_assignments;
    } catch (const std::exception& e) {
        record.error = e.what();
    }
    return record;
}

std::vector<BenchRecord> run_bench(const std::vector<BenchCase>& cases) {
    std::vector<BenchRecord> records;
    records.reserve(cases.size());
    for (const BenchCase& c : cases) records.push_back(run_bench_case(c));
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "modes,depth,density,method,seed,wall_seconds,work_counter,peak_table_entries\n";
    char seconds[32];
    for (const BenchRecord& r : records) {
        out << r.config.modes << ',' << r.config.depth << ',' << r.config.density << ',' << to_string(r.config.method)
            << ',' << r.config.seed << ',';
        if (r.error) {
            out << ",,\n";
            continue;
        }
        std::snprintf(seconds, sizeof seconds, "%.6g", r.wall_seconds);
        out << seconds << ',' << r.work_counter << ',' << r.peak_table_entries << '\n';
    }
}

}  // namespace lofp
