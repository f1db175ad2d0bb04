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

// lofp command-line driver.
//
// Exit codes: 0 success, 1 validation failure (invalid circuit or failed
// validate suite), 2 usage or parse error.

#include "lofp/analysis.hpp"
#include "lofp/circuit.hpp"
#include "lofp/errors.hpp"
#include "lofp/fock.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lofp;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::string number(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string json_string(std::string_view text) {
    std::string out = "\"";
    for (char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

/// Flat JSON object with keys kept in insertion order.
class JsonObject {
public:
    JsonObject& raw(std::string_view key, std::string value) {
        fields_.emplace_back(std::string(key), std::move(value));
        return *this;
    }
    JsonObject& num(std::string_view key, double value) { return raw(key, number(value)); }
    JsonObject& integer(std::string_view key, std::uint64_t value) { return raw(key, std::to_string(value)); }
    JsonObject& str(std::string_view key, std::string_view value) { return raw(key, json_string(value)); }
    JsonObject& boolean(std::string_view key, bool value) { return raw(key, value ? "true" : "false"); }

    [[nodiscard]] std::string dump(int indent = 0) const {
        const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
        std::string out = "{\n";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            out += pad + json_string(fields_[i].first) + ": " + fields_[i].second;
            out += i + 1 < fields_.size() ? ",\n" : "\n";
        }
        return out + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

FockState state_for(const Interferometer& circuit, const std::string& text, const char* what) {
    FockState state = parse_fock_state(text);
    if (state.modes() != circuit.modes()) {
        throw ParseError(std::string(what) + " state has " + std::to_string(state.modes()) +
                         " modes, circuit has " + std::to_string(circuit.modes()));
    }
    return state;
}

struct GenArgs {
    int modes = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    write_output(args.out, serialize_circuit(build_clements_mesh(args.modes, args.depth, args.seed)));
    return kExitOk;
}

struct AmplitudeArgs {
    std::string circuit;
    std::string input;
    std::string output;
    std::string method = "auto";
    bool timings = false;
};

int cmd_amplitude(const AmplitudeArgs& args) {
    const Interferometer circuit = parse_circuit(read_file(args.circuit));
    const FockState input = state_for(circuit, args.input, "input");
    const FockState output = state_for(circuit, args.output, "output");
    const Method method = parse_method(args.method);

    EvalStats stats;
    const auto start = std::chrono::steady_clock::now();
    const Amplitude a = compute_amplitude(circuit, input, output, method, &stats);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    JsonObject json;
    json.num("re", a.real())
        .num("im", a.imag())
        .num("probability", std::norm(a))
        .integer("work_counter", stats.work_counter())
        .integer("peak_table_entries", stats.peak_table_entries)
        .str("method", to_string(resolve_method(method, circuit)));
    if (input.total_photons() != output.total_photons()) {
        json.str("warning", "photon number not conserved (input " + std::to_string(input.total_photons()) +
                                ", output " + std::to_string(output.total_photons()) + "); amplitude is 0");
    }
    if (args.timings) json.num("wall_seconds", seconds);
    std::cout << json.dump() << '\n';
    return kExitOk;
}

struct DistributionArgs {
    std::string circuit;
    std::string input;
    std::string method = "auto";
    std::string format = "json";
    std::string out;
    bool timings = false;
};

int cmd_distribution(const DistributionArgs& args) {
    const Interferometer circuit = parse_circuit(read_file(args.circuit));
    const FockState input = state_for(circuit, args.input, "input");
    const Method method = parse_method(args.method);

    EvalStats stats;
    const auto start = std::chrono::steady_clock::now();
    const OutputDistribution dist = distribution(circuit, input, method, threads_from_environment(), &stats);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string text;
    if (args.format == "csv") {
        text = "state,probability\n";
        for (std::size_t i = 0; i < dist.size(); ++i) {
            text += csv_field(dist.states[i].to_string()) + "," + number(dist.probabilities[i]) + "\n";
        }
    } else {
        std::string outcomes = "[";
        for (std::size_t i = 0; i < dist.size(); ++i) {
            outcomes += i == 0 ? "\n" : ",\n";
            outcomes += "    {\"state\": " + json_string(dist.states[i].to_string()) +
                        ", \"probability\": " + number(dist.probabilities[i]) + "}";
        }
        outcomes += dist.size() > 0 ? "\n  ]" : "]";
        JsonObject json;
        json.str("method", to_string(resolve_method(method, circuit)))
            .str("input", input.to_string())
            .integer("outcome_count", dist.size())
            .num("total", dist.total())
            .integer("work_counter", stats.work_counter())
            .integer("peak_table_entries", stats.peak_table_entries);
        if (args.timings) json.num("wall_seconds", seconds);
        json.raw("outcomes", outcomes);
        text = json.dump() + "\n";
    }
    write_output(args.out, text);
    return kExitOk;
}

struct ValidateArgs {
    int modes = 6;
    std::string suite = "paper";
    std::string method = "auto";
    std::uint64_t seed = 0;
    std::string circuit;
};

struct SuiteCase {
    const char* input;
    int depth;
};

constexpr SuiteCase kPaperSuite[] = {
    {"1,1,1,1,1,1", 3},
    {"0,0,4,0,0,4", 4},
    {"2,0,3,0,0,3", 5},
    {"2,0,0,2,0,2", 6},
};

constexpr double kNormTolerance = 1e-9;
constexpr double kTvdTolerance = 1e-10;

int cmd_validate(const ValidateArgs& args) {
    if (args.suite != "paper") throw ParseError("unknown suite '" + args.suite + "' (expected paper)");
    if (args.modes != 6) throw ParseError("the paper suite is defined for 6 modes");
    const Method method = parse_method(args.method);
    std::optional<Interferometer> fixed;
    if (!args.circuit.empty()) {
        fixed = parse_circuit(read_file(args.circuit));
        if (fixed->modes() != args.modes) throw ParseError("circuit file must have 6 modes");
    }
    const unsigned threads = threads_from_environment();

    bool all_pass = true;
    std::string cases = "[";
    for (std::size_t i = 0; i < std::size(kPaperSuite); ++i) {
        const SuiteCase& c = kPaperSuite[i];
        const std::uint64_t seed = args.seed + i;
        const Interferometer circuit = fixed ? *fixed : build_clements_mesh(args.modes, c.depth, seed);
        const FockState input = parse_fock_state(c.input);
        const OutputDistribution lofp = distribution(circuit, input, method, threads);
        const OutputDistribution ryser = distribution(circuit, input, Method::Ryser, threads);
        const double total = lofp.total();
        const double distance = tvd(lofp, ryser);
        const bool pass = std::abs(total - 1.0) <= kNormTolerance && distance <= kTvdTolerance;
        all_pass = all_pass && pass;

        JsonObject row;
        row.str("input", c.input)
            .integer("depth", static_cast<std::uint64_t>(circuit.depth()))
            .raw("seed", fixed ? "null" : std::to_string(seed))
            .str("method", to_string(resolve_method(method, circuit)))
            .integer("outcome_count", lofp.size())
            .num("total", total)
            .num("tvd", distance)
            .boolean("pass", pass);
        cases += (i == 0 ? "\n    " : ",\n    ") + row.dump(4);
    }
    cases += "\n  ]";

    JsonObject report;
    report.str("suite", args.suite)
        .integer("modes", static_cast<std::uint64_t>(args.modes))
        .num("norm_tolerance", kNormTolerance)
        .num("tvd_tolerance", kTvdTolerance)
        .raw("cases", cases)
        .boolean("pass", all_pass);
    std::cout << report.dump() << '\n';
    return all_pass ? kExitOk : kExitValidation;
}

struct BenchArgs {
    std::string spec;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    const std::vector<BenchCase> cases = parse_bench_spec(read_file(args.spec));
    const std::vector<BenchRecord> records = run_bench(cases);
    for (const BenchRecord& r : records) {
        if (r.error) {
            std::cerr << "bench: modes=" << r.config.modes << " depth=" << r.config.depth
                      << " density=" << r.config.density << " method=" << to_string(r.config.method)
                      << " seed=" << r.config.seed << ": " << *r.error << '\n';
        }
    }
    std::ostringstream csv;
    write_bench_csv(csv, records);
    write_output(args.out, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear-optics Feynman path amplitudes"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a seeded Clements mesh as JSON");
    gen_cmd->add_option("--modes", gen.modes, "Number of modes (even)")->required();
    gen_cmd->add_option("--depth", gen.depth, "Number of layers")->required();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    AmplitudeArgs amp;
    auto* amp_cmd = app.add_subcommand("amplitude", "One transition amplitude");
    amp_cmd->add_option("--circuit", amp.circuit, "Circuit JSON file")->required();
    amp_cmd->add_option("--input", amp.input, "Input occupations, e.g. 1,0,1,0")->required();
    amp_cmd->add_option("--output", amp.output, "Output occupations")->required();
    amp_cmd->add_option("--method", amp.method, "direct, contraction, ryser or auto")->capture_default_str();
    amp_cmd->add_flag("--timings", amp.timings, "Include wall_seconds");

    DistributionArgs dist;
    auto* dist_cmd = app.add_subcommand("distribution", "Probabilities of every output state");
    dist_cmd->add_option("--circuit", dist.circuit, "Circuit JSON file")->required();
    dist_cmd->add_option("--input", dist.input, "Input occupations")->required();
    dist_cmd->add_option("--method", dist.method, "direct, contraction, ryser or auto")->capture_default_str();
    dist_cmd->add_option("--format", dist.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    dist_cmd->add_option("--out", dist.out, "Output file (default stdout)");
    dist_cmd->add_flag("--timings", dist.timings, "Include wall_seconds (json only)");

    ValidateArgs val;
    auto* val_cmd = app.add_subcommand("validate", "Normalization and TVD against the Ryser baseline");
    val_cmd->add_option("--modes", val.modes, "Number of modes")->capture_default_str();
    val_cmd->add_option("--suite", val.suite, "Validation suite")->capture_default_str();
    val_cmd->add_option("--method", val.method, "direct, contraction or auto")->capture_default_str();
    val_cmd->add_option("--seed", val.seed, "Base seed; case i uses seed + i")->capture_default_str();
    val_cmd->add_option("--circuit", val.circuit, "Use this circuit for every case instead of seeded meshes");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark spec and emit CSV");
    bench_cmd->add_option("--spec", bench.spec, "Bench spec JSON file")->required();
    bench_cmd->add_option("--out", bench.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*amp_cmd) return cmd_amplitude(amp);
        if (*dist_cmd) return cmd_distribution(dist);
        if (*val_cmd) return cmd_validate(val);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const ValidationError& e) {
        std::cerr << "lofp: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "lofp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "lofp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "lofp: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
