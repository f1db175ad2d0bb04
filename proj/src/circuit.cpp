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

#include "lofp/circuit.hpp"

#include "lofp/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace lofp {

namespace {

using json = nlohmann::json;

template <typename Visit>
void for_each_clements_slot(int modes, int depth, Visit&& visit) {
    for (int layer = 1; layer <= depth; ++layer) {
        const int first = (layer % 2 == 1) ? 1 : 2;
        for (int top = first; top + 1 <= modes; top += 2) visit(layer, top);
    }
}

void require_even_modes(int modes, int depth) {
    if (modes < 2 || modes % 2 != 0) {
        throw ValidationError("Clements mesh needs an even mode count >= 2, got " + std::to_string(modes));
    }
    if (depth < 0) throw ValidationError("depth must be non-negative, got " + std::to_string(depth));
}

const json& require_field(const json& object, const char* name, const std::string& where) {
    auto it = object.find(name);
    if (it == object.end()) throw ParseError(where + ": missing field '" + name + "'");
    return *it;
}

int integer_field(const json& object, const char* name, const std::string& where) {
    const json& v = require_field(object, name, where);
    if (!v.is_number_integer()) throw ParseError(where + ": field '" + name + "' must be an integer");
    const auto value = v.get<long long>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
        throw ParseError(where + ": field '" + name + "' out of range");
    }
    return static_cast<int>(value);
}

double number_field(const json& object, const char* name, const std::string& where) {
    const json& v = require_field(object, name, where);
    if (!v.is_number()) throw ParseError(where + ": field '" + name + "' must be a number");
    return v.get<double>();
}

}  // namespace

Interferometer::Interferometer(int modes, int depth, std::vector<BSPlacement> placements)
    : modes_(modes), depth_(depth), placements_(std::move(placements)) {
    if (modes < 1) throw ValidationError("interferometer needs at least one mode");
    if (depth < 0) throw ValidationError("depth must be non-negative");
    std::sort(placements_.begin(), placements_.end(), [](const BSPlacement& a, const BSPlacement& b) {
        return a.layer != b.layer ? a.layer < b.layer : a.top_mode < b.top_mode;
    });
    slot_.assign(static_cast<std::size_t>(modes) * static_cast<std::size_t>(depth), -1);
    for (std::size_t i = 0; i < placements_.size(); ++i) {
        const BSPlacement& p = placements_[i];
        if (p.layer < 1 || p.layer > depth) {
            throw ValidationError("beam splitter layer " + std::to_string(p.layer) + " outside [1, " +
                                  std::to_string(depth) + "]");
        }
        if (p.top_mode < 1 || p.top_mode > modes - 1) {
            throw ValidationError("beam splitter top_mode " + std::to_string(p.top_mode) + " outside [1, " +
                                  std::to_string(modes - 1) + "]");
        }
        for (int mode : {p.top_mode, p.top_mode + 1}) {
            int& slot = slot_[static_cast<std::size_t>(p.layer - 1) * static_cast<std::size_t>(modes) +
                              static_cast<std::size_t>(mode - 1)];
            if (slot != -1) {
                throw ValidationError("two beam splitters share mode " + std::to_string(mode) + " in layer " +
                                      std::to_string(p.layer));
            }
            slot = static_cast<int>(i);
        }
    }
}

int Interferometer::placement_at(int layer, int mode) const {
    if (layer < 1 || layer > depth_ || mode < 1 || mode > modes_) return -1;
    return slot_[static_cast<std::size_t>(layer - 1) * static_cast<std::size_t>(modes_) +
                 static_cast<std::size_t>(mode - 1)];
}

int clements_beam_splitter_count(int modes, int depth) {
    int count = 0;
    for_each_clements_slot(modes, depth, [&](int, int) { ++count; });
    return count;
}

Interferometer build_clements_mesh(int modes, int depth, std::uint64_t seed) {
    require_even_modes(modes, depth);
    CircuitRng rng(seed);
    std::vector<BSPlacement> placements;
    for_each_clements_slot(modes, depth, [&](int layer, int top) {
        const double theta = rng.uniform(0.0, BSParams::kThetaMax);
        const double phi = rng.uniform(0.0, BSParams::kPhiMax);
        placements.push_back({layer, top, BSParams(theta, phi)});
    });
    return Interferometer(modes, depth, std::move(placements));
}

Interferometer build_clements_mesh(int modes, int depth, std::span<const BSParams> params) {
    require_even_modes(modes, depth);
    const int needed = clements_beam_splitter_count(modes, depth);
    if (static_cast<int>(params.size()) != needed) {
        throw ValidationError("mesh needs " + std::to_string(needed) + " parameter pairs, got " +
                              std::to_string(params.size()));
    }
    std::vector<BSPlacement> placements;
    std::size_t next = 0;
    for_each_clements_slot(modes, depth, [&](int layer, int top) { placements.push_back({layer, top, params[next++]}); });
    return Interferometer(modes, depth, std::move(placements));
}

UnitaryMatrix circuit_unitary(const Interferometer& circuit) {
    const int m = circuit.modes();
    UnitaryMatrix u = UnitaryMatrix::identity(m);
    // Left-multiplying by a layer only mixes the two rows each element touches.
    for (const BSPlacement& p : circuit.placements()) {
        const BSUnitary b = bs_unitary(p.params);
        const int top = p.top_mode - 1;
        const int bottom = p.top_mode;
        for (int col = 0; col < m; ++col) {
            const Amplitude a = u(top, col);
            const Amplitude c = u(bottom, col);
            u(top, col) = b.u11 * a + b.u12 * c;
            u(bottom, col) = b.u21 * a + b.u22 * c;
        }
    }
    return u;
}

Interferometer concatenate(const Interferometer& first, const Interferometer& second) {
    if (first.modes() != second.modes()) throw ValidationError("cannot concatenate circuits of different widths");
    std::vector<BSPlacement> placements(first.placements().begin(), first.placements().end());
    for (BSPlacement p : second.placements()) {
        p.layer += first.depth();
        placements.push_back(p);
    }
    return Interferometer(first.modes(), first.depth() + second.depth(), std::move(placements));
}

Interferometer mirror_layers(const Interferometer& circuit) {
    std::vector<BSPlacement> placements;
    for (BSPlacement p : circuit.placements()) {
        p.layer = circuit.depth() + 1 - p.layer;
        placements.push_back(p);
    }
    return Interferometer(circuit.modes(), circuit.depth(), std::move(placements));
}

std::string serialize_circuit(const Interferometer& circuit) {
    // Hand-written so angles always carry 17 significant digits and the
    // key order stays fixed; identical circuits give identical bytes.
    std::string out = "{\n  \"modes\": " + std::to_string(circuit.modes()) +
                      ",\n  \"depth\": " + std::to_string(circuit.depth()) + ",\n  \"placements\": [";
    char buffer[64];
    bool first = true;
    for (const BSPlacement& p : circuit.placements()) {
        out += first ? "\n" : ",\n";
        first = false;
        out += "    {\"layer\": " + std::to_string(p.layer) + ", \"top_mode\": " + std::to_string(p.top_mode);
        std::snprintf(buffer, sizeof buffer, ", \"theta\": %.17g", p.params.theta());
        out += buffer;
        std::snprintf(buffer, sizeof buffer, ", \"phi\": %.17g}", p.params.phi());
        out += buffer;
    }
    out += first ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

Interferometer parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("circuit document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("circuit document must be a JSON object");
    const int modes = integer_field(doc, "modes", "circuit");
    const int depth = integer_field(doc, "depth", "circuit");
    const json& list = require_field(doc, "placements", "circuit");
    if (!list.is_array()) throw ParseError("circuit: field 'placements' must be an array");
    std::vector<BSPlacement> placements;
    placements.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "placements[" + std::to_string(i) + "]";
        const json& item = list[i];
        if (!item.is_object()) throw ParseError(where + ": must be an object");
        BSPlacement p;
        p.layer = integer_field(item, "layer", where);
        p.top_mode = integer_field(item, "top_mode", where);
        const double theta = number_field(item, "theta", where);
        const double phi = number_field(item, "phi", where);
        try {
            p.params = BSParams(theta, phi);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        placements.push_back(p);
    }
    return Interferometer(modes, depth, std::move(placements));
}

}  // namespace lofp
