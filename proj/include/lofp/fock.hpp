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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lofp {

using Amplitude = std::complex<double>;

/// Photon occupation numbers of an M-mode Fock state |x_1, ..., x_M>.
///
/// Modes are stored 0-based; the textual form and the CLI use the plain
/// comma-separated list ("1,1,0,2"). The photon total is cached and kept
/// consistent because the value is immutable after construction.
class FockState {
public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);
    FockState(std::initializer_list<int> occupations);

    /// Uniform state with `per_mode` photons in each of `modes` modes.
    static FockState uniform(int modes, int per_mode);

    [[nodiscard]] int modes() const noexcept { return static_cast<int>(occupations_.size()); }
    [[nodiscard]] int total_photons() const noexcept { return total_; }
    [[nodiscard]] int operator[](int mode) const { return occupations_[static_cast<std::size_t>(mode)]; }
    [[nodiscard]] std::span<const int> occupations() const noexcept { return occupations_; }

    /// Copy with one extra photon in `mode` (0-based).
    [[nodiscard]] FockState with_added_photon(int mode) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const FockState&, const FockState&) = default;
    friend auto operator<=>(const FockState& a, const FockState& b) { return a.occupations_ <=> b.occupations_; }

private:
    std::vector<int> occupations_;
    int total_ = 0;
};

[[nodiscard]] inline int total_photons(const FockState& state) noexcept { return state.total_photons(); }

/// Parses "1,0,2" (whitespace around entries tolerated). Throws ParseError.
[[nodiscard]] FockState parse_fock_state(std::string_view text);

/// Every `modes`-long occupation tuple with `photons` photons in total, in
/// lexicographic order. Length is C(modes + photons - 1, photons).
[[nodiscard]] std::vector<FockState> enumerate_output_states(int modes, int photons);

/// C(modes + photons - 1, photons), saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t count_output_states(int modes, int photons);

/// ln(n!). Exact table for n <= 20, lgamma above.
[[nodiscard]] double log_factorial(int n);

}  // namespace lofp
