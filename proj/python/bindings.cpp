#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "djcm/dynamics.hpp"
#include "djcm/errors.hpp"
#include "djcm/observables.hpp"
#include "djcm/presets.hpp"
#include "djcm/runner.hpp"
#include "djcm/spectrum.hpp"
#include "djcm/validate.hpp"
#include "djcm/version.hpp"

namespace py = pybind11;
using namespace djcm;

namespace {

Trajectory run(const ModelParams& p, double tau_max, int samples, bool force_oracle) {
    SolveOptions opt;
    opt.force_oracle = force_oracle;
    return solve_sector(p, {}, time_grid_for_tau(tau_max, samples, p.omega_cavity), opt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deformed Jaynes-Cummings simulator for a driven V-type three-level atom.";
    m.attr("__version__") = kVersion;

    py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UndefinedObservable>(m, "UndefinedObservable", PyExc_ArithmeticError);

    py::class_<Deformation>(m, "Deformation")
        .def_static("identity", &Deformation::identity)
        .def_static("kerr", &Deformation::kerr, py::arg("chi"))
        .def_property_readonly("chi", &Deformation::chi)
        .def("f", &Deformation::f, py::arg("n"))
        .def("k", &Deformation::k, py::arg("n"))
        .def("__repr__", &Deformation::describe);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_static("figure_row", [](int row) {
            if (row < 1 || row > 3) throw py::index_error("row must be 1, 2 or 3");
            return presets::figure_rows()[static_cast<std::size_t>(row - 1)];
        }, py::arg("row"))
        .def_readwrite("omega_cavity", &ModelParams::omega_cavity)
        .def_readwrite("omega_levels", &ModelParams::omega_levels)
        .def_readwrite("g1", &ModelParams::g1)
        .def_readwrite("g2", &ModelParams::g2)
        .def_readwrite("omega_e", &ModelParams::omega_e)
        .def_readwrite("deformation", &ModelParams::deformation)
        .def_readwrite("sector_n", &ModelParams::sector_n)
        .def("validate", &ModelParams::validate);

    m.def("sector_coefficients", [](const ModelParams& p) {
        const auto c = sector_coefficients(p);
        return py::dict(py::arg("h") = c.h, py::arg("s") = c.s, py::arg("nu") = c.nu, py::arg("v1") = c.v1,
                        py::arg("v2") = c.v2, py::arg("n") = c.n);
    });

    m.def("characteristic_roots", [](const ModelParams& p) {
        const auto r = find_roots(theta_poly(sector_coefficients(p), p.omega_e));
        return std::vector<cplx>(r.roots.begin(), r.roots.end());
    }, "Roots of the sector's characteristic cubic, ascending imaginary part.");

    m.def("solve", [](const ModelParams& p, double tau_max, int samples, bool force_oracle) {
        const auto tr = run(p, tau_max, samples, force_oracle);
        const auto n = static_cast<py::ssize_t>(tr.samples.size());
        std::vector<double> tau_values;
        std::vector<cplx> amp_values;
        for (const auto& s : tr.samples) {
            tau_values.push_back(p.omega_cavity * s.t);
            amp_values.insert(amp_values.end(), {s.c1, s.c2, s.c3});
        }
        py::array_t<double> tau(n, tau_values.data());
        py::array_t<cplx> amps({n, py::ssize_t{3}}, amp_values.data());
        return py::make_tuple(tau, amps, std::string(to_string(tr.method)), tr.max_norm_drift());
    }, py::arg("params"), py::arg("tau_max") = 50.0, py::arg("samples") = 2000, py::arg("force_oracle") = false,
       "Returns (tau, amplitudes[samples, 3], method, max_norm_drift).");

    m.def("compute_series", [](const ModelParams& p, const std::string& name, double tau_max, int samples) {
        const auto res = compute_series(run(p, tau_max, samples, false), name);
        py::dict out;
        out["tau"] = res.series.front().times;
        for (const auto& s : res.series) out[py::str(s.name)] = s.values;
        out["undefined_samples"] = res.undefined_samples;
        return out;
    }, py::arg("params"), py::arg("observable"), py::arg("tau_max") = 50.0, py::arg("samples") = 2000);

    m.def("husimi", [](const ModelParams& p, double tau, double range, int resolution, int all_sectors) {
        const HusimiGridSpec spec{-range, range, -range, range, resolution};
        const auto g = all_sectors > 0 ? husimi_q(p, tau / p.omega_cavity, spec, HusimiMode::AllSectors, all_sectors)
                                       : husimi_q(p, tau / p.omega_cavity, spec, HusimiMode::SingleSector);
        py::array_t<double> q({static_cast<py::ssize_t>(g.y_axis.size()), static_cast<py::ssize_t>(g.x_axis.size())});
        std::copy(g.values.begin(), g.values.end(), q.mutable_data());
        return py::make_tuple(g.x_axis, g.y_axis, q, trapezoid_integral(g));
    }, py::arg("params"), py::arg("tau"), py::arg("range") = 3.0, py::arg("resolution") = 121,
       py::arg("all_sectors") = 0, "Returns (x, y, Q[y, x], trapezoid integral).");

    m.def("make_figure", [](const std::string& id, const std::string& out_dir, std::optional<double> tau) {
        FigureOptions opt;
        opt.tau = tau;
        std::vector<std::string> files;
        for (const auto& f : make_figure(id, out_dir, opt).files) files.push_back(f.string());
        return files;
    }, py::arg("figure"), py::arg("out_dir"), py::arg("tau") = py::none());

    m.def("validate", [](std::uint64_t seed, int tuples, bool force_oracle) {
        ValidationOptions opt{seed, tuples, force_oracle};
        const auto report = run_validation(opt);
        return py::make_tuple(report.render(), report.all_passed());
    }, py::arg("seed") = 20240611, py::arg("tuples") = 1000, py::arg("force_oracle") = false,
       "Returns (report text, all passed).");
}
