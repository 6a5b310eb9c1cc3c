// Copyright 2026 The scatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatlab/analysis.hpp"
#include "scatlab/error.hpp"
#include "scatlab/kernel.hpp"
#include "scatlab/potential.hpp"
#include "scatlab/radial.hpp"
#include "scatlab/specfun.hpp"

namespace py = pybind11;
using namespace scatlab;

namespace {

AngularIndex to_index(const py::object& ell) {
  if (py::isinstance<py::int_>(ell)) return AngularIndex::integer(ell.cast<int>());
  return AngularIndex::complex(ell.cast<std::complex<double>>());
}

}  // namespace

PYBIND11_MODULE(_scatlab, m) {
  m.doc() = "Fixed-energy radial scattering, transformation kernels and orthogonality functionals";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero, py::arg("a"))
      .def_static(
          "piecewise",
          [](double a, const std::vector<std::tuple<double, double, double>>& pieces) {
            std::vector<Piece> ps;
            for (const auto& [lo, hi, v] : pieces) ps.push_back({lo, hi, v});
            return Potential::piecewise(a, ps);
          },
          py::arg("a"), py::arg("pieces"), "pieces: list of (lo, hi, value)")
      .def_static(
          "table",
          [](double a, const std::vector<std::pair<double, double>>& samples) {
            std::vector<Sample> ss;
            for (const auto& [r, q] : samples) ss.push_back({r, q});
            return Potential::table(a, ss);
          },
          py::arg("a"), py::arg("samples"), "samples: list of (r, q)")
      .def_static("loads", &load_potential, py::arg("text"))
      .def_static("load", &load_potential_file, py::arg("path"))
      .def("dumps", &serialize_potential)
      .def_property_readonly("support", &Potential::support)
      .def_property("id", &Potential::id, &Potential::set_id)
      .def("__call__", &Potential::evaluate, py::arg("r"))
      .def("__eq__", [](const Potential& x, const Potential& y) { return x == y; });

  m.def("riccati_bessel", &specfun::riccati_bessel, py::arg("ell"), py::arg("r"));
  m.def("riccati_neumann", &specfun::riccati_neumann, py::arg("ell"), py::arg("r"));

  py::class_<PhaseShift>(m, "PhaseShift")
      .def_readonly("delta", &PhaseShift::delta)
      .def_readonly("jost_magnitude", &PhaseShift::jost_magnitude);
  m.def(
      "phase_shift",
      [](const Potential& q, int ell, double rtol) {
        RadialOptions o;
        o.rtol = rtol;
        return phase_shift(q, ell, o);
      },
      py::arg("q"), py::arg("ell"), py::arg("rtol") = 1e-10);
  m.def(
      "regular_solution",
      [](const Potential& q, int ell, const std::vector<double>& radii) {
        RadialOptions o;
        o.extra_radii = radii;
        const RadialSolution s = regular_solution(q, ell, o);
        std::vector<double> out;
        for (double r : radii)
          for (std::size_t i = 0; i < s.grid.size(); ++i)
            if (s.grid[i] == r) {
              out.push_back(s.scaled_phi(i).value());
              break;
            }
        return out;
      },
      py::arg("q"), py::arg("ell"), py::arg("radii"), "phi_l at the given radii");
  m.def("amplitude_coefficient", &amplitude_coefficient, py::arg("delta"));

  py::class_<KernelGrid>(m, "KernelGrid")
      .def_property_readonly("xi_min", &KernelGrid::xi_min)
      .def_property_readonly("xi_max", &KernelGrid::xi_max)
      .def_property_readonly("eta_max", &KernelGrid::eta_max)
      .def_property_readonly("step", &KernelGrid::step)
      .def_readonly("gamma", &KernelGrid::gamma)
      .def("sup_abs", &KernelGrid::sup_abs)
      .def("K", [](const KernelGrid& kg, double r, double rho) { return kernel_K(kg, r, rho); })
      .def("apply_transform", [](const KernelGrid& kg, int ell, double r) { return apply_transform(kg, ell, r); })
      .def("recover_potential", [](const KernelGrid& kg, double r) { return recover_potential(kg, r); });
  m.def(
      "solve_kernel",
      [](const Potential& q, int n_eta, double eta_max, bool refine) {
        KernelOptions o;
        o.n_eta = n_eta;
        o.eta_max = eta_max;
        o.refine = refine;
        return solve_kernel(q, o);
      },
      py::arg("q"), py::arg("n_eta") = 800, py::arg("eta_max") = 12.0, py::arg("refine") = true);

  m.def(
      "h",
      [](const Potential& q1, const Potential& q2, int ell) {
        const OrthogonalityValue v = h_ell(DifferencePotential(q1, q2), ell);
        return py::make_tuple(v.value, v.boundary, v.error);
      },
      py::arg("q1"), py::arg("q2"), py::arg("ell"), "(h, boundary term, error estimate)");
  m.def(
      "h0",
      [](const Potential& q1, const Potential& q2, const py::object& ell) {
        return h0_ell(DifferencePotential(q1, q2), to_index(ell)).value;
      },
      py::arg("q1"), py::arg("q2"), py::arg("ell"));
  m.def(
      "H",
      [](const Potential& q1, const Potential& q2, const py::object& ell) {
        return H_ell(DifferencePotential(q1, q2), to_index(ell)).value;
      },
      py::arg("q1"), py::arg("q2"), py::arg("ell"));
  m.def("muntz_classify", [](const std::string& index_set) { return to_string(muntz_classify(IndexSet::parse(index_set))); },
        py::arg("index_set"));
  m.def(
      "index_set_members",
      [](const std::string& index_set, int l_max) { return IndexSet::parse(index_set).members(l_max); },
      py::arg("index_set"), py::arg("l_max"));
  m.def(
      "moment_ratio",
      [](const Potential& q1, const Potential& q2, int ell) {
        return moment_heuristic(DifferencePotential(q1, q2), ell).ratio;
      },
      py::arg("q1"), py::arg("q2"), py::arg("ell"));
  m.def(
      "discriminate",
      [](const Potential& q1, const Potential& q2, const std::string& index_set, int l_max) {
        const DiscriminationReport r = discrimination_experiment(q1, q2, IndexSet::parse(index_set), l_max);
        py::dict d;
        d["sup_delta"] = r.sup_delta;
        d["sup_h"] = r.sup_h;
        d["correlation"] = r.correlation;
        py::list rows;
        for (const auto& row : r.rows) rows.append(py::make_tuple(row.ell, row.delta1, row.delta2, row.h));
        d["rows"] = rows;
        return d;
      },
      py::arg("q1"), py::arg("q2"), py::arg("index_set"), py::arg("l_max"));
}
