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

#include "lofp/fock.hpp"

#include "lofp/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace lofp {

namespace {

int checked_sum(const std::vector<int>& occupations) {
    long long total = 0;
    for (int n : occupations) {
        if (n < 0) throw ValidationError("occupation numbers must be non-negative");
        total += n;
    }
    if (total > std::numeric_limits<int>::max()) throw ValidationError("photon count overflows int");
    return static_cast<int>(total);
}

const std::array<double, 21>& log_factorial_table() {
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        std::uint64_t f = 1;
        for (int n = 0; n <= 20; ++n) {
            if (n > 0) f *= static_cast<std::uint64_t>(n);
            t[static_cast<std::size_t>(n)] = static_cast<double>(std::log(static_cast<long double>(f)));
        }
        return t;
    }();
    return table;
}

void enumerate_into(int mode, int remaining, std::vector<int>& current, std::vector<FockState>& out) {
    const int modes = static_cast<int>(current.size());
    if (mode == modes - 1) {
        current[static_cast<std::size_t>(mode)] = remaining;
        out.emplace_back(current);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        current[static_cast<std::size_t>(mode)] = n;
        enumerate_into(mode + 1, remaining - n, current, out);
    }
}

}  // namespace

FockState::FockState(std::vector<int> occupations)
    : occupations_(std::move(occupations)), total_(checked_sum(occupations_)) {}

FockState::FockState(std::initializer_list<int> occupations) : FockState(std::vector<int>(occupations)) {}

FockState FockState::uniform(int modes, int per_mode) {
    if (modes < 0 || per_mode < 0) throw ValidationError("uniform state needs non-negative modes and density");
    return FockState(std::vector<int>(static_cast<std::size_t>(modes), per_mode));
}

FockState FockState::with_added_photon(int mode) const {
    std::vector<int> copy = occupations_;
    copy.at(static_cast<std::size_t>(mode)) += 1;
    return FockState(std::move(copy));
}

std::string FockState::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(occupations_[i]);
    }
    return out;
}

FockState parse_fock_state(std::string_view text) {
    std::vector<int> occupations;
    std::size_t pos = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (true) {
        std::size_t end = text.find(',', pos);
        std::string_view field = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        while (!field.empty() && is_space(field.front())) field.remove_prefix(1);
        while (!field.empty() && is_space(field.back())) field.remove_suffix(1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || value < 0) {
            throw ParseError("invalid occupation number '" + std::string(field) + "' in Fock state '" +
                             std::string(text) + "'");
        }
        occupations.push_back(value);
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return FockState(std::move(occupations));
}

std::vector<FockState> enumerate_output_states(int modes, int photons) {
    if (modes < 1) throw PreconditionError("enumerate_output_states needs at least one mode");
    if (photons < 0) throw PreconditionError("photon number must be non-negative");
    std::vector<FockState> out;
    const std::uint64_t count = count_output_states(modes, photons);
    if (count < (std::uint64_t{1} << 32)) out.reserve(static_cast<std::size_t>(count));
    std::vector<int> current(static_cast<std::size_t>(modes), 0);
    enumerate_into(0, photons, current, out);
    return out;
}

std::uint64_t count_output_states(int modes, int photons) {
    // C(n, k) with n = modes + photons - 1, k = min(photons, modes - 1).
    const std::uint64_t n = static_cast<std::uint64_t>(modes) + static_cast<std::uint64_t>(photons) - 1;
    const std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(photons),
                                                    static_cast<std::uint64_t>(modes) - 1);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

double log_factorial(int n) {
    if (n < 0) throw PreconditionError("log_factorial of a negative number");
    if (n <= 20) return log_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace lofp
