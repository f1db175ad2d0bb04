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

#include "lofp/beamsplitter.hpp"
#include "lofp/errors.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lofp;

namespace {

constexpr double kPi = std::numbers::pi;

void check_close(Amplitude a, Amplitude b, double tol) {
    CHECK(std::abs(a - b) <= tol);
}

}  // namespace

TEST_CASE("BSParams validates its ranges") {
    CHECK_NOTHROW(BSParams(0.0, 0.0));
    CHECK_NOTHROW(BSParams(kPi / 2, kPi));
    CHECK_THROWS_AS(BSParams(-1e-9, 0.0), ValidationError);
    CHECK_THROWS_AS(BSParams(kPi / 2 + 1e-9, 0.0), ValidationError);
    CHECK_THROWS_AS(BSParams(0.1, kPi + 1e-9), ValidationError);
    CHECK_THROWS_AS(BSParams(std::nan(""), 0.0), ValidationError);
}

TEST_CASE("bs_unitary matches the closed form") {
    const BSUnitary id = bs_unitary({0.0, 0.0});
    check_close(id.u11, 1.0, 0.0);
    check_close(id.u12, 0.0, 0.0);
    check_close(id.u21, 0.0, 0.0);
    check_close(id.u22, 1.0, 0.0);

    const BSUnitary swap = bs_unitary({kPi / 2, 0.0});
    check_close(swap.u11, 0.0, 1e-15);
    check_close(swap.u12, -1.0, 1e-15);
    check_close(swap.u21, 1.0, 1e-15);
    check_close(swap.u22, 0.0, 1e-15);

    const BSUnitary h = bs_unitary({kPi / 4, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    check_close(h.u11, r, 1e-15);
    check_close(h.u12, -r, 1e-15);
    check_close(h.u21, r, 1e-15);
    check_close(h.u22, r, 1e-15);
}

TEST_CASE("bs_unitary is unitary for random angles") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const BSUnitary u = bs_unitary(testing::random_params(rng));
        CHECK(std::abs(std::norm(u.u11) + std::norm(u.u21) - 1.0) <= 1e-12);
        CHECK(std::abs(std::norm(u.u12) + std::norm(u.u22) - 1.0) <= 1e-12);
        CHECK(std::abs(u.u11 * std::conj(u.u12) + u.u21 * std::conj(u.u22)) <= 1e-12);
    }
}

TEST_CASE("bs_amplitude closed-form cases") {
    const BSUnitary id = bs_unitary({0.0, 0.0});
    for (int x1 = 0; x1 <= 4; ++x1)
        for (int x2 = 0; x2 <= 4; ++x2) check_close(bs_amplitude(id, x1, x2, x1, x2), 1.0, 1e-15);

    const BSUnitary h = bs_unitary({kPi / 4, 0.0});
    check_close(bs_amplitude(h, 1, 1, 1, 1), 0.0, 1e-15);
    check_close(bs_amplitude(h, 1, 1, 2, 0), -1.0 / std::sqrt(2.0), 1e-15);
    check_close(bs_amplitude(h, 1, 1, 0, 2), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST_CASE("bs_amplitude rejects non-conserving occupations") {
    const BSUnitary h = bs_unitary({kPi / 4, 0.0});
    CHECK_THROWS_AS((void)bs_amplitude(h, 1, 1, 2, 1), PreconditionError);
    CHECK_THROWS_AS((void)bs_permanent_expanded(h, 1, 0, 0, 0), PreconditionError);
    CHECK_THROWS_AS((void)bs_permanent_expanded(h, 6, 5, 6, 5), PreconditionError);
}

TEST_CASE("bs_permanent_expanded reference values") {
    const BSUnitary id = bs_unitary({0.0, 0.0});
    check_close(bs_permanent_expanded(id, 2, 1, 2, 1), 1.0, 1e-15);
    check_close(bs_permanent_expanded(bs_unitary({kPi / 4, 0.0}), 1, 1, 1, 1), 0.0, 1e-15);
    // Per([[u11, u11], [u21, u21]]) / sqrt(2) evaluated independently.
    const Amplitude expected{0.33086623905652696, 0.5152936365341505};
    check_close(bs_permanent_expanded(bs_unitary({kPi / 3, 1.0}), 2, 0, 1, 1), expected, 1e-14);
    check_close(bs_amplitude(bs_unitary({kPi / 3, 1.0}), 2, 0, 1, 1), expected, 1e-14);
}

TEST_CASE("bs_amplitude matches the expanded permanent for N <= 8") {
    std::mt19937_64 rng(2024);
    std::vector<BSUnitary> unitaries = {bs_unitary({0.0, 0.0}), bs_unitary({kPi / 2, kPi}), bs_unitary({kPi / 4, 0.0})};
    for (int i = 0; i < 20; ++i) unitaries.push_back(bs_unitary(testing::random_params(rng)));
    double worst = 0.0;
    for (const BSUnitary& u : unitaries) {
        for (int n = 0; n <= 8; ++n)
            for (int x1 = 0; x1 <= n; ++x1)
                for (int y1 = 0; y1 <= n; ++y1) {
                    const int x2 = n - x1;
                    const int y2 = n - y1;
                    int terms = -1;
                    const Amplitude fast = bs_amplitude(u, x1, x2, y1, y2, &terms);
                    worst = std::max(worst, std::abs(fast - bs_permanent_expanded(u, x1, x2, y1, y2)));
                    CHECK(terms <= n + 1);
                    CHECK(terms == bs_amplitude_term_count(x1, x2, y1, y2));
                }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("single beam splitter rows are normalized") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        const BSUnitary u = bs_unitary(testing::random_params(rng));
        for (int n = 0; n <= 6; ++n)
            for (int x1 = 0; x1 <= n; ++x1) {
                double sum = 0.0;
                for (int y1 = 0; y1 <= n; ++y1) sum += std::norm(bs_amplitude(u, x1, n - x1, y1, n - y1));
                CHECK(std::abs(sum - 1.0) <= 1e-10);
            }
    }
}

TEST_CASE("bs_amplitude_stable agrees with the closed form for small N") {
    std::mt19937_64 rng(404);
    std::vector<BSUnitary> unitaries = {bs_unitary({0.0, 0.0}), bs_unitary({kPi / 2, 0.3}), bs_unitary({kPi / 4, kPi})};
    for (int i = 0; i < 20; ++i) unitaries.push_back(bs_unitary(testing::random_params(rng)));
    for (const BSUnitary& u : unitaries)
        for (int n = 0; n <= 12; ++n)
            for (int x1 = 0; x1 <= n; ++x1)
                for (int y1 = 0; y1 <= n; ++y1) {
                    const Amplitude a = bs_amplitude(u, x1, n - x1, y1, n - y1);
                    const Amplitude b = bs_amplitude_stable(u, x1, n - x1, y1, n - y1);
                    CHECK(std::abs(a - b) <= 1e-13);
                }
}

TEST_CASE("large occupations match high-precision references") {
    struct Case {
        double theta, phi;
        int x1, x2, y1, y2;
        Amplitude expected;
    };
    // Exact closed-form sum evaluated with 120 significant digits.
    const Case cases[] = {
        {0.7, 0.3, 120, 80, 100, 100, {-0.034549359844169601, 0.010054077623032995}},
        {0.7, 0.3, 60, 140, 150, 50, {-0.020570135316837235, -0.067340530162050974}},
        {1.2, 2.5, 200, 0, 37, 163, {0.052913926750574135, -0.06765332339581627}},
        {0.1, 1.0, 33, 45, 40, 38, {-0.23657924895508668, 0.20616650925634468}},
        {1.5, 3.0, 250, 250, 260, 240, {0.00081838448971434765, 0.0052420237028187542}},
    };
    for (const Case& c : cases) {
        const BSUnitary u = bs_unitary({c.theta, c.phi});
        CHECK(std::abs(bs_amplitude(u, c.x1, c.x2, c.y1, c.y2) - c.expected) <= 1e-12);
        CHECK(std::abs(bs_amplitude_stable(u, c.x1, c.x2, c.y1, c.y2) - c.expected) <= 1e-12);
    }
}

TEST_CASE("rows stay normalized for large occupations") {
    const BSUnitary u = bs_unitary({0.7, 0.3});
    for (int n : {50, 200, 1000}) {
        double sum = 0.0;
        for (int y1 = 0; y1 <= n; ++y1) {
            const Amplitude a = bs_amplitude(u, n / 3, n - n / 3, y1, n - y1);
            REQUIRE(std::isfinite(a.real()));
            REQUIRE(std::isfinite(a.imag()));
            sum += std::norm(a);
        }
        CAPTURE(n);
        CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
}
