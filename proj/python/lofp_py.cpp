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

#include "lofp/analysis.hpp"
#include "lofp/beamsplitter.hpp"
#include "lofp/circuit.hpp"
#include "lofp/errors.hpp"
#include "lofp/permanent.hpp"

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace lofp;

namespace {

py::dict stats_dict(const EvalStats& s) {
    py::dict d;
    d["work_counter"] = s.work_counter();
    d["bs_evaluations"] = s.bs_evaluations;
    d["subset_steps"] = s.subset_steps;
    d["feasible_assignments"] = s.feasible_assignments;
    d["peak_table_entries"] = s.peak_table_entries;
    d["peak_table_bytes"] = s.peak_table_bytes;
    return d;
}

std::vector<int> occupations(const FockState& s) { return {s.occupations().begin(), s.occupations().end()}; }

std::vector<std::vector<Amplitude>> to_rows(const ComplexMatrix& m) {
    std::vector<std::vector<Amplitude>> rows(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
    return rows;
}

ComplexMatrix from_rows(const std::vector<std::vector<Amplitude>>& rows) {
    ComplexMatrix m(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw PreconditionError("matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_lofp, m) {
    m.doc() = "Light-cone path-sum simulation of shallow linear-optical circuits";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    py::class_<Interferometer>(m, "Interferometer")
        .def(py::init([](int modes, int depth, const std::vector<std::tuple<int, int, double, double>>& placements) {
                 std::vector<BSPlacement> list;
                 for (const auto& [layer, top, theta, phi] : placements) list.push_back({layer, top, BSParams(theta, phi)});
                 return Interferometer(modes, depth, std::move(list));
             }),
             py::arg("modes"), py::arg("depth"), py::arg("placements"))
        .def_property_readonly("modes", &Interferometer::modes)
        .def_property_readonly("depth", &Interferometer::depth)
        .def_property_readonly("beam_splitter_count", &Interferometer::beam_splitter_count)
        .def_property_readonly("placements",
                               [](const Interferometer& c) {
                                   std::vector<std::tuple<int, int, double, double>> out;
                                   for (const BSPlacement& p : c.placements())
                                       out.emplace_back(p.layer, p.top_mode, p.params.theta(), p.params.phi());
                                   return out;
                               })
        .def("unitary", [](const Interferometer& c) { return to_rows(circuit_unitary(c)); })
        .def("to_json", &serialize_circuit)
        .def_static("from_json", [](const std::string& text) { return parse_circuit(text); })
        .def(py::self == py::self)
        .def("__repr__", [](const Interferometer& c) {
            return "Interferometer(modes=" + std::to_string(c.modes()) + ", depth=" + std::to_string(c.depth()) +
                   ", beam_splitters=" + std::to_string(c.beam_splitter_count()) + ")";
        });

    m.def("clements_mesh", py::overload_cast<int, int, std::uint64_t>(&build_clements_mesh), py::arg("modes"),
          py::arg("depth"), py::arg("seed"));

    m.def(
        "bs_amplitude",
        [](double theta, double phi, int x1, int x2, int y1, int y2) {
            return bs_amplitude(bs_unitary(BSParams(theta, phi)), x1, x2, y1, y2);
        },
        py::arg("theta"), py::arg("phi"), py::arg("x1"), py::arg("x2"), py::arg("y1"), py::arg("y2"));

    m.def("permanent", [](const std::vector<std::vector<Amplitude>>& rows) { return ryser_gray(from_rows(rows)); },
          py::arg("matrix"));

    m.def(
        "amplitude",
        [](const Interferometer& c, const std::vector<int>& input, const std::vector<int>& output,
           const std::string& method) {
            EvalStats stats;
            Amplitude value;
            {
                py::gil_scoped_release release;
                value = compute_amplitude(c, FockState(input), FockState(output), parse_method(method), &stats);
            }
            return std::make_pair(value, stats_dict(stats));
        },
        py::arg("circuit"), py::arg("input"), py::arg("output"), py::arg("method") = "auto",
        "Returns (amplitude, stats) where stats holds the work and memory counters.");

    m.def(
        "distribution",
        [](const Interferometer& c, const std::vector<int>& input, const std::string& method, unsigned threads) {
            OutputDistribution dist;
            {
                py::gil_scoped_release release;
                dist = distribution(c, FockState(input), parse_method(method), threads);
            }
            std::vector<std::pair<std::vector<int>, double>> out;
            out.reserve(dist.size());
            for (std::size_t i = 0; i < dist.size(); ++i) out.emplace_back(occupations(dist.states[i]), dist.probabilities[i]);
            return out;
        },
        py::arg("circuit"), py::arg("input"), py::arg("method") = "auto", py::arg("threads") = 1,
        "List of (output occupations, probability) in lexicographic order.");

    m.def("resolve_method",
          [](const Interferometer& c, const std::string& method) {
              return std::string(to_string(resolve_method(parse_method(method), c)));
          },
          py::arg("circuit"), py::arg("method") = "auto");

    m.def("output_states",
          [](int modes, int photons) {
              std::vector<std::vector<int>> out;
              for (const FockState& s : enumerate_output_states(modes, photons)) out.push_back(occupations(s));
              return out;
          },
          py::arg("modes"), py::arg("photons"));
}
