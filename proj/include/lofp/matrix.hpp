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
#include <cstddef>
#include <vector>

namespace lofp {

/// Dense square complex matrix, row-major. Small by construction (mode
/// counts and photon numbers), so no expression templates.
class ComplexMatrix {
public:
    using value_type = std::complex<double>;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    [[nodiscard]] int size() const noexcept { return n_; }

    value_type& operator()(int row, int col) { return data_[index(row, col)]; }
    const value_type& operator()(int row, int col) const { return data_[index(row, col)]; }

    [[nodiscard]] const std::vector<value_type>& data() const noexcept { return data_; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix out(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const value_type aik = a(i, k);
                if (aik == value_type{}) continue;
                for (int j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(col);
    }

    int n_ = 0;
    std::vector<value_type> data_;
};

/// An M x M interferometer unitary; entry (out, in) maps input creation
/// operators onto output ones.
using UnitaryMatrix = ComplexMatrix;

/// max_ij |(U^dagger U - I)_ij|
[[nodiscard]] double unitarity_defect(const ComplexMatrix& u);

/// max_ij |a_ij - b_ij|; matrices must share a size.
[[nodiscard]] double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace lofp
