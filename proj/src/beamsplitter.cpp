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

#include "lofp/beamsplitter.hpp"

#include "lofp/errors.hpp"
#include "lofp/permanent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace lofp {

namespace {

void require_conserving(int x1, int x2, int y1, int y2) {
    if (x1 < 0 || x2 < 0 || y1 < 0 || y2 < 0) throw PreconditionError("negative occupation at a beam splitter");
    if (x1 + x2 != y1 + y2) {
        throw PreconditionError("photon number not conserved at beam splitter: " + std::to_string(x1) + "+" +
                                std::to_string(x2) + " -> " + std::to_string(y1) + "+" + std::to_string(y2));
    }
}

constexpr int kExactFactorials = 20;
constexpr double kConditionLimit = 64.0;

// n! for n <= 20, exact in a double.
double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// powers[k] = z^k for k in [0, n]; powers[0] is exactly 1 even for z == 0.
void fill_powers(Amplitude z, int n, std::vector<Amplitude>& powers) {
    powers.resize(static_cast<std::size_t>(n) + 1);
    powers[0] = 1.0;
    for (int k = 1; k <= n; ++k) powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k) - 1] * z;
}

}  // namespace

BSParams::BSParams(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= 0.0 && theta <= kThetaMax)) {
        throw ValidationError("beam splitter theta must lie in [0, pi/2], got " + std::to_string(theta));
    }
    if (!(phi >= 0.0 && phi <= kPhiMax)) {
        throw ValidationError("beam splitter phi must lie in [0, pi], got " + std::to_string(phi));
    }
}

BSUnitary bs_unitary(const BSParams& params) {
    const double c = std::cos(params.theta());
    const double s = std::sin(params.theta());
    const Amplitude phase = std::polar(1.0, params.phi());
    return BSUnitary{c, -std::conj(phase) * s, phase * s, c};
}

int bs_amplitude_term_count(int x1, int x2, int y1, int y2) {
    const int lo = std::max({0, y1 - x2, x1 - y2});
    const int hi = std::min(x1, y1);
    return hi >= lo ? hi - lo + 1 : 0;
}

Amplitude bs_amplitude(const BSUnitary& u, int x1, int x2, int y1, int y2, int* terms) {
    require_conserving(x1, x2, y1, y2);
    const int lo = std::max({0, y1 - x2, x1 - y2});
    const int hi = std::min(x1, y1);
    if (terms) *terms = hi >= lo ? hi - lo + 1 : 0;
    if (hi < lo) return {};

    // Per-term weight sqrt(x1! x2! y1! y2!) / (t! (y1-t)! (x1-t)! (x2-y1+t)!).
    double weight;
    if (x1 + x2 <= kExactFactorials) {
        weight = std::sqrt(factorial(x1) * factorial(x2)) * std::sqrt(factorial(y1) * factorial(y2)) /
                 (factorial(lo) * factorial(y1 - lo) * factorial(x1 - lo) * factorial(x2 - y1 + lo));
    } else {
        const double log_norm = 0.5 * (log_factorial(x1) + log_factorial(x2) + log_factorial(y1) + log_factorial(y2));
        weight = std::exp(log_norm - log_factorial(lo) - log_factorial(y1 - lo) - log_factorial(x1 - lo) -
                          log_factorial(x2 - y1 + lo));
    }

    thread_local std::vector<Amplitude> p11, p12, p21, p22;
    fill_powers(u.u11, hi, p11);
    fill_powers(u.u12, y1 - lo, p12);
    fill_powers(u.u21, x1 - lo, p21);
    fill_powers(u.u22, x2 - y1 + hi, p22);

    Amplitude sum{};
    double magnitude = 0.0;
    for (int t = lo; t <= hi; ++t) {
        const Amplitude term = weight * p11[static_cast<std::size_t>(t)] * p12[static_cast<std::size_t>(y1 - t)] *
                               p21[static_cast<std::size_t>(x1 - t)] * p22[static_cast<std::size_t>(x2 - y1 + t)];
        sum += term;
        magnitude += std::abs(term);
        weight *= static_cast<double>(y1 - t) * static_cast<double>(x1 - t) /
                  (static_cast<double>(t + 1) * static_cast<double>(x2 - y1 + t + 1));
    }
    if (magnitude > kConditionLimit) return bs_amplitude_stable(u, x1, x2, y1, y2);
    return sum;
}

Amplitude bs_amplitude_stable(const BSUnitary& u, int x1, int x2, int y1, int y2) {
    require_conserving(x1, x2, y1, y2);
    // u = diag(1, e^{ip}) R diag(1, e^{-ip}) with R the real rotation
    // [[c, -s], [s, c]]; the diagonal factors contribute e^{ip (y2 - x2)}.
    const double c = u.u11.real();
    double s = std::abs(u.u21);
    const Amplitude phase = s > 0.0 ? std::pow(u.u21 / s, y2 - x2) : Amplitude{1.0};

    // Relabel so x1 is the smallest occupation. Swapping modes or swapping
    // input with output both amount to s -> -s.
    const int smallest = std::min({x1, x2, y1, y2});
    if (smallest == x1) {
    } else if (smallest == x2) {
        std::swap(x1, x2);
        std::swap(y1, y2);
        s = -s;
    } else if (smallest == y1) {
        std::swap(x1, y1);
        std::swap(x2, y2);
        s = -s;
    } else {
        std::swap(x1, y2);
        std::swap(x2, y1);
    }
    const int n = x1;
    const int a = y1 - x1;
    const int b = y2 - x1;
    if ((a > 0 && s == 0.0) || (b > 0 && c == 0.0)) return {};

    // P_n^{(a,b)}(z), rescaled by powers of two to stay in range.
    const double z = c * c - s * s;
    const double ad = a;
    const double bd = b;
    double p_prev = 1.0;
    double p = n == 0 ? 1.0 : (ad + 1.0) + (ad + bd + 2.0) * (z - 1.0) / 2.0;
    int scale = 0;
    for (int k = 2; k <= n; ++k) {
        const double kd = k;
        const double t = 2.0 * kd + ad + bd;
        const double next = ((t - 1.0) * (t * (t - 2.0) * z + ad * ad - bd * bd) * p -
                             2.0 * (kd + ad - 1.0) * (kd + bd - 1.0) * t * p_prev) /
                            (2.0 * kd * (kd + ad + bd) * (t - 2.0));
        p_prev = p;
        p = next;
        if (std::abs(p) > 0x1.0p+500) {
            p = std::ldexp(p, -500);
            p_prev = std::ldexp(p_prev, -500);
            scale += 500;
        }
    }
    if (p == 0.0) return {};

    const double log_prefactor = 0.5 * (log_factorial(x1) + log_factorial(x2) - log_factorial(y1) - log_factorial(y2)) +
                                 (a > 0 ? ad * std::log(std::abs(s)) : 0.0) +
                                 (b > 0 ? bd * std::log(std::abs(c)) : 0.0);
    int sign = a % 2 == 0 ? 1 : -1;
    if (s < 0.0 && a % 2 != 0) sign = -sign;
    if (c < 0.0 && b % 2 != 0) sign = -sign;
    const double magnitude = std::exp(log_prefactor + std::log(std::abs(p)) + scale * std::numbers::ln2);
    return phase * (static_cast<double>(p < 0.0 ? -sign : sign) * magnitude);
}

Amplitude bs_permanent_expanded(const BSUnitary& u, int x1, int x2, int y1, int y2) {
    require_conserving(x1, x2, y1, y2);
    const int n = x1 + x2;
    if (n > 10) throw PreconditionError("bs_permanent_expanded is limited to 10 photons");
    ComplexMatrix expanded(n);
    for (int r = 0; r < n; ++r) {
        const bool top_row = r < y1;
        for (int c = 0; c < n; ++c) {
            const bool top_col = c < x1;
            expanded(r, c) = top_row ? (top_col ? u.u11 : u.u12) : (top_col ? u.u21 : u.u22);
        }
    }
    const double norm = std::exp(0.5 * (log_factorial(x1) + log_factorial(x2) + log_factorial(y1) + log_factorial(y2)));
    return naive_permanent(expanded) / norm;
}

}  // namespace lofp
