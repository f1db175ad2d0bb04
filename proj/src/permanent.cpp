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

#include "lofp/permanent.hpp"

#include "lofp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace lofp {

Amplitude ryser_gray(const ComplexMatrix& matrix, std::uint64_t* subset_steps) {
    const int n = matrix.size();
    if (n > kRyserMaxSize) {
        throw PreconditionError("ryser_gray supports matrices up to " + std::to_string(kRyserMaxSize) +
                                " rows, got " + std::to_string(n));
    }
    if (subset_steps) *subset_steps = 0;
    if (n == 0) return 1.0;

    std::vector<Amplitude> row_sums(static_cast<std::size_t>(n));
    std::vector<bool> in_subset(static_cast<std::size_t>(n), false);
    Amplitude total{};
    int subset_size = 0;
    const std::uint64_t steps = (std::uint64_t{1} << n) - 1;

    for (std::uint64_t g = 1; g <= steps; ++g) {
        // Gray code g ^ (g >> 1) differs from its predecessor in bit ctz(g).
        const int col = std::countr_zero(g);
        const bool adding = !in_subset[static_cast<std::size_t>(col)];
        in_subset[static_cast<std::size_t>(col)] = adding;
        subset_size += adding ? 1 : -1;
        for (int i = 0; i < n; ++i) {
            if (adding)
                row_sums[static_cast<std::size_t>(i)] += matrix(i, col);
            else
                row_sums[static_cast<std::size_t>(i)] -= matrix(i, col);
        }
        Amplitude product = 1.0;
        for (const Amplitude& s : row_sums) product *= s;
        if (subset_size % 2 == 0)
            total += product;
        else
            total -= product;
    }
    if (subset_steps) *subset_steps = steps;
    return (n % 2 == 0) ? total : -total;
}

Amplitude naive_permanent(const ComplexMatrix& matrix) {
    const int n = matrix.size();
    if (n > kNaivePermanentMaxSize) {
        throw PreconditionError("naive_permanent supports matrices up to " + std::to_string(kNaivePermanentMaxSize) +
                                " rows, got " + std::to_string(n));
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    // Extended precision keeps the n! term sum accurate enough to serve as
    // a reference for the faster methods.
    using Wide = std::complex<long double>;
    Wide total{};
    do {
        Wide product = 1.0L;
        for (int i = 0; i < n; ++i) product *= Wide(matrix(i, perm[static_cast<std::size_t>(i)]));
        total += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Amplitude(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

ComplexMatrix expand_matrix(const UnitaryMatrix& u, const FockState& input, const FockState& output) {
    if (input.modes() != u.size() || output.modes() != u.size()) {
        throw PreconditionError("Fock state length does not match the unitary dimension");
    }
    if (input.total_photons() != output.total_photons()) {
        throw PreconditionError("photon number differs between input and output");
    }
    std::vector<int> rows;
    std::vector<int> cols;
    for (int m = 0; m < u.size(); ++m) {
        rows.insert(rows.end(), static_cast<std::size_t>(output[m]), m);
        cols.insert(cols.end(), static_cast<std::size_t>(input[m]), m);
    }
    const int n = static_cast<int>(rows.size());
    ComplexMatrix expanded(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) expanded(r, c) = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    return expanded;
}

Amplitude amplitude_via_permanent(const UnitaryMatrix& u, const FockState& input, const FockState& output,
                                  std::uint64_t* subset_steps, bool prefer_naive) {
    const ComplexMatrix expanded = expand_matrix(u, input, output);
    double log_norm = 0.0;
    for (int m = 0; m < u.size(); ++m) log_norm += log_factorial(input[m]) + log_factorial(output[m]);
    Amplitude per;
    if (prefer_naive && expanded.size() <= 6) {
        per = naive_permanent(expanded);
        if (subset_steps) *subset_steps = 0;
    } else {
        per = ryser_gray(expanded, subset_steps);
    }
    return per * std::exp(-0.5 * log_norm);
}

}  // namespace lofp
