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

#include "lofp/matrix.hpp"

#include "lofp/errors.hpp"

#include <algorithm>

namespace lofp {

double unitarity_defect(const ComplexMatrix& u) {
    const ComplexMatrix product = u.adjoint() * u;
    return max_abs_difference(product, ComplexMatrix::identity(u.size()));
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.size() != b.size()) throw PreconditionError("matrix sizes differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

}  // namespace lofp
