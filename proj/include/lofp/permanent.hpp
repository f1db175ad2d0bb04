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
#include "lofp/matrix.hpp"

#include <cstdint>

namespace lofp {

inline constexpr int kRyserMaxSize = 30;
inline constexpr int kNaivePermanentMaxSize = 9;

/// Permanent by Ryser's inclusion-exclusion formula,
///   Per(A) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} a_ij,
/// visiting subsets in binary-reflected Gray-code order so each step flips
/// one column in or out of the running row sums: 2^n - 1 steps of O(n).
///
/// The empty matrix has permanent 1. Throws PreconditionError above
/// kRyserMaxSize. `subset_steps`, when given, receives the step count.
[[nodiscard]] Amplitude ryser_gray(const ComplexMatrix& matrix, std::uint64_t* subset_steps = nullptr);

/// Sum over all n! permutations; only for n <= kNaivePermanentMaxSize.
[[nodiscard]] Amplitude naive_permanent(const ComplexMatrix& matrix);

/// N x N matrix whose row block i repeats row i of `u` output[i] times and
/// whose column block j repeats column j input[j] times, ascending mode order.
[[nodiscard]] ComplexMatrix expand_matrix(const UnitaryMatrix& u, const FockState& input, const FockState& output);

/// <output| U_P |input> = Per(expand_matrix) / sqrt(prod x_i! prod y_i!).
/// Uses ryser_gray, or naive_permanent for N <= 6 when `prefer_naive`.
[[nodiscard]] Amplitude amplitude_via_permanent(const UnitaryMatrix& u, const FockState& input,
                                                const FockState& output, std::uint64_t* subset_steps = nullptr,
                                                bool prefer_naive = false);

}  // namespace lofp
