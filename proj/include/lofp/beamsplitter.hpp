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

#include "lofp/fock.hpp"

#include <numbers>

namespace lofp {

/// Generalized beam splitter angles: transmissivity theta in [0, pi/2] and
/// phase phi in [0, pi]. Construction rejects anything outside those ranges.
class BSParams {
public:
    static constexpr double kThetaMax = std::numbers::pi / 2;
    static constexpr double kPhiMax = std::numbers::pi;

    BSParams() = default;
    BSParams(double theta, double phi);

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }

    friend bool operator==(const BSParams&, const BSParams&) = default;

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// 2x2 unitary acting on (top, bottom) creation operators.
struct BSUnitary {
    Amplitude u11, u12, u21, u22;
};

/// [[cos t, -e^{-i p} sin t], [e^{i p} sin t, cos t]]
[[nodiscard]] BSUnitary bs_unitary(const BSParams& params);

/// Number of terms in the single-beam-splitter sum for (x1, x2) -> (y1, y2):
/// min(x1, y1) - max(0, y1 - x2, x1 - y2) + 1, or 0 when the range is empty.
[[nodiscard]] int bs_amplitude_term_count(int x1, int x2, int y1, int y2);

/// Fock amplitude <y1, y2| BS |x1, x2> in time linear in the photon number.
///
/// The sum runs over t, the number of top-input photons that leave through
/// the top output. Combinatorial prefactors follow a multiplicative
/// recurrence in t, so nothing overflows for large occupations. 0^0 is 1,
/// which matters for theta = 0 or pi/2.
///
/// The terms alternate in sign and their magnitudes grow roughly like 2^N,
/// so the sum loses precision for large N. When the sum of term magnitudes
/// exceeds 64 the result is recomputed with bs_amplitude_stable.
///
/// Throws PreconditionError when x1 + x2 != y1 + y2. If `terms` is non-null
/// it receives the number of summed terms.
[[nodiscard]] Amplitude bs_amplitude(const BSUnitary& u, int x1, int x2, int y1, int y2, int* terms = nullptr);

/// Same amplitude through a Jacobi polynomial in cos(2 theta), evaluated by
/// its three-term recurrence. Accurate to a few ulps for any N. `u` must
/// come from bs_unitary.
[[nodiscard]] Amplitude bs_amplitude_stable(const BSUnitary& u, int x1, int x2, int y1, int y2);

/// Reference value for bs_amplitude: builds the expanded (x1+x2)-square
/// matrix (rows repeated by output occupations, columns by input ones),
/// takes its permanent by summing over permutations and normalizes.
/// Limited to x1 + x2 <= 10.
[[nodiscard]] Amplitude bs_permanent_expanded(const BSUnitary& u, int x1, int x2, int y1, int y2);

}  // namespace lofp
