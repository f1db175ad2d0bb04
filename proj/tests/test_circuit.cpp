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

#include "lofp/circuit.hpp"
#include "lofp/errors.hpp"
#include "test_support.hpp"

#include <numbers>
#include <random>
#include <string>

using namespace lofp;

namespace {

double unitary_distance(const UnitaryMatrix& a, const BSUnitary& b) {
    return std::max({std::abs(a(0, 0) - b.u11), std::abs(a(0, 1) - b.u12), std::abs(a(1, 0) - b.u21),
                     std::abs(a(1, 1) - b.u22)});
}

}  // namespace

TEST_CASE("Clements mesh shapes") {
    const Interferometer two = build_clements_mesh(2, 1, 1);
    REQUIRE(two.beam_splitter_count() == 1);
    CHECK(two.placements()[0].layer == 1);
    CHECK(two.placements()[0].top_mode == 1);

    const Interferometer six = build_clements_mesh(6, 3, 42);
    CHECK(six.beam_splitter_count() == 8);
    std::vector<int> sizes(4, 0);
    for (const BSPlacement& p : six.placements()) ++sizes[static_cast<std::size_t>(p.layer)];
    CHECK(sizes[1] == 3);
    CHECK(sizes[2] == 2);
    CHECK(sizes[3] == 3);
    CHECK(clements_beam_splitter_count(6, 3) == 8);

    const Interferometer empty = build_clements_mesh(4, 0, 3);
    CHECK(empty.beam_splitter_count() == 0);
    CHECK(circuit_unitary(empty) == ComplexMatrix::identity(4));

    CHECK_THROWS_AS((void)build_clements_mesh(5, 2, 1), ValidationError);
    CHECK_THROWS_AS((void)build_clements_mesh(0, 2, 1), ValidationError);
    CHECK_THROWS_AS((void)build_clements_mesh(4, -1, 1), ValidationError);
}

TEST_CASE("parity rule holds for generated meshes") {
    for (int m = 2; m <= 12; m += 2)
        for (int d = 0; d <= 7; ++d) {
            const Interferometer c = build_clements_mesh(m, d, static_cast<std::uint64_t>(m * 100 + d));
            CHECK(static_cast<int>(c.beam_splitter_count()) == clements_beam_splitter_count(m, d));
            for (const BSPlacement& p : c.placements()) CHECK(p.layer % 2 == p.top_mode % 2);
        }
}

TEST_CASE("explicit angles are consumed in placement order") {
    const std::vector<BSParams> params = {{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}};
    const Interferometer c = build_clements_mesh(4, 2, params);
    REQUIRE(c.beam_splitter_count() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.placements()[i].params == params[i]);
    CHECK_THROWS_AS((void)build_clements_mesh(4, 2, std::span<const BSParams>(params.data(), 2)), ValidationError);
}

TEST_CASE("same seed gives identical circuits") {
    const Interferometer a = build_clements_mesh(8, 5, 1234);
    const Interferometer b = build_clements_mesh(8, 5, 1234);
    CHECK(a == b);
    CHECK(serialize_circuit(a) == serialize_circuit(b));
    CHECK_FALSE(a == build_clements_mesh(8, 5, 1235));
    for (const BSPlacement& p : a.placements()) {
        CHECK(p.params.theta() >= 0.0);
        CHECK(p.params.theta() <= BSParams::kThetaMax);
        CHECK(p.params.phi() >= 0.0);
        CHECK(p.params.phi() <= BSParams::kPhiMax);
    }
}

TEST_CASE("interferometer invariants") {
    const BSParams p(0.3, 0.1);
    CHECK_THROWS_AS(Interferometer(4, 1, {{1, 1, p}, {1, 2, p}}), ValidationError);
    CHECK_THROWS_AS(Interferometer(4, 1, {{0, 1, p}}), ValidationError);
    CHECK_THROWS_AS(Interferometer(4, 1, {{2, 1, p}}), ValidationError);
    CHECK_THROWS_AS(Interferometer(4, 1, {{1, 4, p}}), ValidationError);
    CHECK_THROWS_AS(Interferometer(0, 0, {}), ValidationError);
    const Interferometer odd(3, 2, {{2, 2, p}, {1, 1, p}});
    CHECK(odd.placements()[0].layer == 1);
    CHECK(odd.placement_at(1, 1) == 0);
    CHECK(odd.placement_at(1, 2) == 0);
    CHECK(odd.placement_at(1, 3) == -1);
    CHECK(odd.placement_at(2, 3) == 1);
}

TEST_CASE("circuit_unitary") {
    CHECK(circuit_unitary(build_clements_mesh(6, 0, 1)) == ComplexMatrix::identity(6));

    const BSParams p(0.7, 2.1);
    CHECK(unitary_distance(circuit_unitary(Interferometer(2, 1, {{1, 1, p}})), bs_unitary(p)) == 0.0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(unitarity_defect(circuit_unitary(build_clements_mesh(6, 3, seed))) <= 1e-12);
        CHECK(unitarity_defect(circuit_unitary(build_clements_mesh(8, 7, seed))) <= 1e-12);
    }
}

TEST_CASE("concatenation multiplies unitaries") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Interferometer a = build_clements_mesh(6, 3, seed);
        const Interferometer b = build_clements_mesh(6, 2, seed + 100);
        const Interferometer ab = concatenate(a, b);
        CHECK(ab.depth() == 5);
        CHECK(ab.beam_splitter_count() == a.beam_splitter_count() + b.beam_splitter_count());
        CHECK(max_abs_difference(circuit_unitary(ab), circuit_unitary(b) * circuit_unitary(a)) <= 1e-12);
    }
    CHECK_THROWS_AS((void)concatenate(build_clements_mesh(4, 1, 0), build_clements_mesh(6, 1, 0)), ValidationError);
}

TEST_CASE("mirror_layers reverses layer order") {
    const Interferometer c = build_clements_mesh(6, 4, 9);
    const Interferometer m = mirror_layers(c);
    CHECK(m.beam_splitter_count() == c.beam_splitter_count());
    for (const BSPlacement& p : c.placements()) {
        const int idx = m.placement_at(c.depth() + 1 - p.layer, p.top_mode);
        REQUIRE(idx >= 0);
        CHECK(m.placements()[static_cast<std::size_t>(idx)].params == p.params);
    }
    CHECK(mirror_layers(m) == c);
}

TEST_CASE("serialization round trip") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Interferometer c = build_clements_mesh(6, 3, seed);
        CHECK(parse_circuit(serialize_circuit(c)) == c);
    }
    const Interferometer empty = build_clements_mesh(4, 0, 0);
    CHECK(parse_circuit(serialize_circuit(empty)) == empty);
    const Interferometer odd(5, 2, {{1, 1, {0.2, 0.3}}, {2, 4, {1.0, 3.0}}});
    CHECK(parse_circuit(serialize_circuit(odd)) == odd);
}

TEST_CASE("parse_circuit errors") {
    const std::string shared =
        R"({"modes": 4, "depth": 1, "placements": [)"
        R"({"layer": 1, "top_mode": 1, "theta": 0.1, "phi": 0.1},)"
        R"({"layer": 1, "top_mode": 2, "theta": 0.1, "phi": 0.1}]})";
    CHECK_THROWS_AS((void)parse_circuit(shared), ValidationError);

    const std::string layer_zero =
        R"({"modes": 4, "depth": 1, "placements": [{"layer": 0, "top_mode": 1, "theta": 0.1, "phi": 0.1}]})";
    CHECK_THROWS_AS((void)parse_circuit(layer_zero), ValidationError);

    const std::string bad_angle =
        R"({"modes": 2, "depth": 1, "placements": [{"layer": 1, "top_mode": 1, "theta": 7.0, "phi": 0.1}]})";
    CHECK_THROWS_AS((void)parse_circuit(bad_angle), ValidationError);

    CHECK_THROWS_AS((void)parse_circuit("{not json"), ParseError);
    CHECK_THROWS_AS((void)parse_circuit("[]"), ParseError);
    CHECK_THROWS_AS((void)parse_circuit(R"({"modes": 2, "placements": []})"), ParseError);

    const std::string missing_theta =
        R"({"modes": 2, "depth": 1, "placements": [{"layer": 1, "top_mode": 1, "phi": 0.1}]})";
    try {
        (void)parse_circuit(missing_theta);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("theta") != std::string::npos);
    }
}
