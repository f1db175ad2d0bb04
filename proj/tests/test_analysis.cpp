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

#include "doctest.h"

#include "lofp/analysis.hpp"
#include "lofp/errors.hpp"
#include "test_support.hpp"

#include <numbers>
#include <random>
#include <sstream>

using namespace lofp;

namespace {

OutputDistribution random_distribution(const std::vector<FockState>& states, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    OutputDistribution d;
    d.states = states;
    double total = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        d.probabilities.push_back(unit(rng));
        total += d.probabilities.back();
    }
    for (double& p : d.probabilities) p /= total;
    return d;
}

}  // namespace

TEST_CASE("method names") {
    for (Method m : {Method::Direct, Method::Contraction, Method::Ryser, Method::Auto})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS((void)parse_method("fast"), ParseError);
    CHECK(resolve_method(Method::Auto, build_clements_mesh(6, 2, 0)) == Method::Direct);
    CHECK(resolve_method(Method::Auto, build_clements_mesh(6, 3, 0)) == Method::Contraction);
    CHECK(resolve_method(Method::Auto, Interferometer(5, 4, {})) == Method::Direct);
    CHECK(resolve_method(Method::Ryser, build_clements_mesh(6, 3, 0)) == Method::Ryser);
}

TEST_CASE("Hong-Ou-Mandel distribution") {
    const Interferometer hom(2, 1, {{1, 1, BSParams(std::numbers::pi / 4, 0.0)}});
    for (Method m : {Method::Direct, Method::Ryser, Method::Auto}) {
        const OutputDistribution d = distribution(hom, FockState{1, 1}, m);
        REQUIRE(d.size() == 3);
        CHECK(d.states[0] == FockState{0, 2});
        CHECK(std::abs(d.probabilities[0] - 0.5) <= 1e-12);
        CHECK(d.probabilities[1] <= 1e-30);
        CHECK(std::abs(d.probabilities[2] - 0.5) <= 1e-12);
    }
}

TEST_CASE("uniform six-mode input sums to one") {
    const Interferometer c = build_clements_mesh(6, 3, 1);
    const FockState ones = FockState::uniform(6, 1);
    for (Method m : {Method::Direct, Method::Contraction, Method::Ryser}) {
        CHECK(std::abs(distribution(c, ones, m).total() - 1.0) <= 1e-9);
    }
}

TEST_CASE("methods agree on random six-mode circuits") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Interferometer c = build_clements_mesh(6, 3 + static_cast<int>(seed), seed);
        const FockState x{1, 0, 2, 0, 1, 1};
        const OutputDistribution direct = distribution(c, x, Method::Direct);
        const OutputDistribution contracted = distribution(c, x, Method::Contraction);
        const OutputDistribution ryser = distribution(c, x, Method::Ryser);
        CHECK(tvd(direct, ryser) <= 1e-12);
        CHECK(tvd(contracted, ryser) <= 1e-12);
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(std::abs(direct.probabilities[i] - contracted.probabilities[i]) <= 1e-10);
    }
}

TEST_CASE("thread count does not change the distribution") {
    const Interferometer c = build_clements_mesh(6, 4, 17);
    const FockState x{0, 0, 4, 0, 0, 4};
    EvalStats one_stats, many_stats;
    const OutputDistribution one = distribution(c, x, Method::Contraction, 1, &one_stats);
    const OutputDistribution many = distribution(c, x, Method::Contraction, 4, &many_stats);
    CHECK(one.states == many.states);
    CHECK(one.probabilities == many.probabilities);
    CHECK(one_stats.work_counter() == many_stats.work_counter());
    CHECK(one_stats.work_counter() > 0);
}

TEST_CASE("contraction on odd modes is rejected") {
    const Interferometer odd(5, 3, {{1, 1, {0.1, 0.2}}});
    CHECK_THROWS_AS((void)distribution(odd, FockState{1, 0, 0, 0, 1}, Method::Contraction), ValidationError);
    CHECK_THROWS_AS((void)compute_amplitude(odd, FockState{1, 0, 0, 0, 1}, FockState{1, 0, 0, 0, 1}, Method::Contraction),
                    ValidationError);
    CHECK_NOTHROW((void)distribution(odd, FockState{1, 0, 0, 0, 1}, Method::Auto));
}

TEST_CASE("compute_amplitude on a photon mismatch") {
    const Interferometer c = build_clements_mesh(4, 3, 0);
    for (Method m : {Method::Direct, Method::Contraction, Method::Ryser, Method::Auto})
        CHECK(compute_amplitude(c, FockState{1, 1, 0, 0}, FockState{2, 1, 0, 0}, m) == Amplitude{});
}

TEST_CASE("tvd") {
    const auto states = enumerate_output_states(3, 2);
    OutputDistribution p, q;
    p.states = q.states = states;
    p.probabilities.assign(states.size(), 0.0);
    q.probabilities.assign(states.size(), 0.0);
    p.probabilities[0] = 1.0;
    q.probabilities[3] = 1.0;
    CHECK(tvd(p, p) == 0.0);
    CHECK(tvd(p, q) == 1.0);

    OutputDistribution half, point;
    half.states = point.states = enumerate_output_states(2, 1);
    half.probabilities = {0.5, 0.5};
    point.probabilities = {1.0, 0.0};
    CHECK(tvd(half, point) == 0.5);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_distribution(states, rng);
        const auto b = random_distribution(states, rng);
        const auto c = random_distribution(states, rng);
        CHECK(tvd(a, a) == 0.0);
        CHECK(tvd(a, b) == tvd(b, a));
        CHECK(tvd(a, c) <= tvd(a, b) + tvd(b, c) + 1e-15);
        CHECK(tvd(a, b) >= 0.0);
        CHECK(tvd(a, b) <= 1.0);
    }

    OutputDistribution shorter;
    shorter.states = enumerate_output_states(2, 2);
    shorter.probabilities.assign(3, 1.0 / 3.0);
    CHECK_THROWS_AS((void)tvd(p, shorter), PreconditionError);
    OutputDistribution reordered = p;
    std::swap(reordered.states[0], reordered.states[1]);
    CHECK_THROWS_AS((void)tvd(p, reordered), PreconditionError);
}

TEST_CASE("bench spec parsing") {
    CHECK(parse_bench_spec("{}").empty());
    const auto cases = parse_bench_spec(R"({
        "cases": [{"modes": 8, "depth": 3, "method": "contraction", "seed": 4, "density": 2}],
        "sweeps": [{"modes": [4, 6], "depths": [1, 2], "methods": ["direct"], "seeds": [1]}]
    })");
    REQUIRE(cases.size() == 5);
    CHECK(cases[0].modes == 8);
    CHECK(cases[0].density == 2);
    CHECK(cases[0].method == Method::Contraction);
    CHECK(cases[0].seed == 4);
    CHECK(cases[1].modes == 4);
    CHECK(cases[1].depth == 1);
    CHECK(cases[2].modes == 6);
    CHECK(cases[3].depth == 2);
    CHECK(cases[4].method == Method::Direct);

    const auto defaults = parse_bench_spec(R"({"cases": [{"modes": 4, "depth": 3}]})");
    REQUIRE(defaults.size() == 1);
    CHECK(defaults[0].density == 1);
    CHECK(defaults[0].method == Method::Auto);
    CHECK(defaults[0].seed == 0);

    CHECK_THROWS_AS((void)parse_bench_spec("nope"), ParseError);
    CHECK_THROWS_AS((void)parse_bench_spec("[]"), ParseError);
    CHECK_THROWS_AS((void)parse_bench_spec(R"({"cases": [{"depth": 3}]})"), ParseError);
    CHECK_THROWS_AS((void)parse_bench_spec(R"({"cases": [{"modes": 4, "depth": 3, "method": "magic"}]})"), ParseError);
    CHECK_THROWS_AS((void)parse_bench_spec(R"({"sweeps": [{"modes": [4]}]})"), ParseError);
}

TEST_CASE("bench records and csv") {
    const auto records = run_bench({{8, 2, 1, Method::Auto, 1},
                                    {5, 3, 1, Method::Contraction, 1},
                                    {40, 2, 1, Method::Ryser, 1},
                                    {8, 3, 1, Method::Contraction, 2}});
    REQUIRE(records.size() == 4);
    CHECK_FALSE(records[0].error.has_value());
    CHECK(records[0].feasible_assignments == 1);
    CHECK(records[1].error.has_value());
    CHECK(records[2].error.has_value());
    CHECK_FALSE(records[3].error.has_value());
    CHECK(records[3].peak_table_entries > 0);

    std::ostringstream out;
    write_bench_csv(out, records);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "modes,depth,density,method,seed,wall_seconds,work_counter,peak_table_entries");
    std::getline(lines, line);
    CHECK(line.rfind("8,2,1,auto,1,", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "5,3,1,contraction,1,,,");
    int rows = 2;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 4);

    std::ostringstream empty;
    write_bench_csv(empty, {});
    CHECK(empty.str() == "modes,depth,density,method,seed,wall_seconds,work_counter,peak_table_entries\n");
}

TEST_CASE("bench runs are deterministic in their counters") {
    const BenchCase config{10, 4, 1, Method::Contraction, 3};
    const BenchRecord a = run_bench_case(config);
    const BenchRecord b = run_bench_case(config);
    CHECK(a.work_counter == b.work_counter);
    CHECK(a.peak_table_entries == b.peak_table_entries);
}
