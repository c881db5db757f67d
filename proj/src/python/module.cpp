#include "eit_qnlse/cli.hpp"
#include "eit_qnlse/dispersion.hpp"
#include "eit_qnlse/errors.hpp"
#include "eit_qnlse/params.hpp"
#include "eit_qnlse/propagator.hpp"
#include "eit_qnlse/reduction.hpp"
#include "eit_qnlse/soliton.hpp"
#include "eit_qnlse/twophoton.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace eitq;

namespace {

py::tuple cli(const std::vector<std::string>& args)
{
    std::vector<std::string> full{"eit-qnlse"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = run_cli(int(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

FieldGrid grid_from_values(std::vector<cd> values, double xi_span, double Vg)
{
    const std::size_t n = values.size();
    auto g = make_grid(n, xi_span, [](double) { return cd(0.0); }, Vg);
    g.values = std::move(values);
    return g;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "EIT quantum NLSE toolkit";
    m.attr("__version__") = version();

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", error.ptr());

    py::class_<MediumParams>(m, "MediumParams")
        .def(py::init<>())
        .def_readwrite("gamma13", &MediumParams::gamma13)
        .def_readwrite("gamma23", &MediumParams::gamma23)
        .def_readwrite("gamma21_deph", &MediumParams::gamma21_deph)
        .def_readwrite("delta2", &MediumParams::delta2)
        .def_readwrite("delta3", &MediumParams::delta3)
        .def_readwrite("omega_c", &MediumParams::omega_c)
        .def_readwrite("atom_density", &MediumParams::atom_density)
        .def_readwrite("kappa13", &MediumParams::kappa13)
        .def_readwrite("gp_abs2", &MediumParams::gp_abs2)
        .def_readwrite("k_p", &MediumParams::k_p)
        .def_readwrite("cell_length", &MediumParams::cell_length)
        .def_readwrite("c_light", &MediumParams::c_light)
        .def("calibrated", &MediumParams::calibrated)
        .def("__repr__", [](const MediumParams& p) { return format_config(p); });

    m.def("rb87_preset", &rb87_preset);
    m.def("validate", &validate, py::arg("params"));
    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("format_config", &format_config, py::arg("params"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("save_config", &save_config, py::arg("params"), py::arg("path"));

    py::class_<TaylorCoefficients>(m, "TaylorCoefficients")
        .def_readonly("K0", &TaylorCoefficients::K0)
        .def_readonly("K1", &TaylorCoefficients::K1)
        .def_readonly("K2", &TaylorCoefficients::K2)
        .def_readonly("Vg", &TaylorCoefficients::Vg);

    m.def("linear_dispersion", [](double omega, const MediumParams& p) { return linear_dispersion(omega, p); },
          py::arg("omega"), py::arg("params"));
    m.def("taylor_coefficients", [](const MediumParams& p) { return taylor_coefficients(p); }, py::arg("params"));

    py::class_<KerrFit>(m, "KerrFit")
        .def_readonly("c1", &KerrFit::c1)
        .def_readonly("c3", &KerrFit::c3)
        .def_readonly("coefficients", &KerrFit::coefficients)
        .def_readonly("residual", &KerrFit::residual);
    m.def("kerr_fit", [](const MediumParams& p) { return kerr_fit(p); }, py::arg("params"));

    py::class_<NlseCoefficients>(m, "NlseCoefficients")
        .def_readonly("K0", &NlseCoefficients::K0)
        .def_readonly("K1", &NlseCoefficients::K1)
        .def_readonly("Vg", &NlseCoefficients::Vg)
        .def_readonly("K2", &NlseCoefficients::K2)
        .def_readonly("W", &NlseCoefficients::W)
        .def_readonly("diffraction", &NlseCoefficients::diffraction);
    m.def("nlse_coefficients", [](const MediumParams& p) { return nlse_coefficients(p); }, py::arg("params"));

    py::class_<CalibrationReport>(m, "CalibrationReport")
        .def_readonly("kappa13", &CalibrationReport::kappa13)
        .def_readonly("gp_abs2", &CalibrationReport::gp_abs2)
        .def_readonly("k2_residual", &CalibrationReport::k2_residual)
        .def_readonly("w_residual", &CalibrationReport::w_residual)
        .def("to_json", [](const CalibrationReport& r) { return to_json(r).dump(); });
    m.def(
        "calibrate",
        [](const MediumParams& p, std::optional<double> k2, std::optional<double> w) {
            const auto c = calibrate(p, k2.value_or(kReferenceK2), w.value_or(kReferenceW));
            return py::make_tuple(c.params, c.report);
        },
        py::arg("params"), py::arg("k2_target") = py::none(), py::arg("w_target") = py::none());

    py::class_<EffectiveMasses>(m, "EffectiveMasses")
        .def_readonly("m0", &EffectiveMasses::m0)
        .def_readonly("a0", &EffectiveMasses::a0)
        .def_readonly("zeta0", &EffectiveMasses::zeta0)
        .def_readonly("zeta0_phys", &EffectiveMasses::zeta0_phys);
    m.def("effective_masses", &effective_masses, py::arg("coefficients"), py::arg("L"));

    py::class_<SolitonParams>(m, "SolitonParams")
        .def_readonly("eta0", &SolitonParams::eta0)
        .def_readonly("xi0", &SolitonParams::xi0)
        .def_readonly("z0", &SolitonParams::z0)
        .def_readonly("t0", &SolitonParams::t0)
        .def_readonly("l0", &SolitonParams::l0)
        .def_readonly("B0", &SolitonParams::B0)
        .def_readonly("Vg", &SolitonParams::Vg)
        .def_readonly("Vs", &SolitonParams::Vs);
    m.def("soliton_params", &soliton_params, py::arg("coefficients"), py::arg("eta0"), py::arg("xi0"),
          py::arg("t0"), py::arg("z0") = 0.0, py::arg("phi0") = 0.0);
    m.def("soliton_envelope", &soliton_envelope, py::arg("soliton"), py::arg("z"), py::arg("t"));

    py::class_<NlseModel>(m, "NlseModel")
        .def(py::init<>())
        .def_static("from_coefficients", &NlseModel::from)
        .def_readwrite("Vg", &NlseModel::Vg)
        .def_readwrite("K2", &NlseModel::K2)
        .def_readwrite("W", &NlseModel::W);

    py::class_<FieldGrid>(m, "FieldGrid")
        .def(py::init(&grid_from_values), py::arg("values"), py::arg("xi_span"), py::arg("Vg") = 0.0)
        .def_readonly("n", &FieldGrid::n)
        .def_readonly("xi_span", &FieldGrid::xi_span)
        .def_readonly("dx", &FieldGrid::dx)
        .def_readonly("values", &FieldGrid::values)
        .def_readonly("t_elapsed", &FieldGrid::t_elapsed)
        .def("xi", &FieldGrid::xi);
    m.def("make_grid", &make_grid, py::arg("n"), py::arg("xi_span"), py::arg("init"), py::arg("Vg") = 0.0,
          py::arg("strict") = false);
    m.def(
        "soliton_grid",
        [](const SolitonParams& sp, std::size_t n, double span_l0) {
            return make_grid(n, span_l0 * sp.l0, [&](double xi) { return soliton_envelope_comoving(sp, xi, 0.0); },
                             sp.Vg, true);
        },
        py::arg("soliton"), py::arg("n"), py::arg("span_l0") = 64.0);

    py::class_<Observables>(m, "Observables")
        .def_readonly("t", &Observables::t)
        .def_readonly("norm", &Observables::norm)
        .def_readonly("momentum", &Observables::momentum)
        .def_readonly("peak_xi", &Observables::peak_xi)
        .def_readonly("peak_abs", &Observables::peak_abs)
        .def_readonly("rms_width", &Observables::rms_width);
    m.def("observe", &observe, py::arg("grid"));

    py::class_<PropagationResult>(m, "PropagationResult")
        .def_readonly("trajectory", &PropagationResult::trajectory)
        .def_readonly("final_grid", &PropagationResult::final_grid)
        .def_readonly("steps", &PropagationResult::steps);
    m.def(
        "propagate",
        [](const FieldGrid& g, const NlseModel& model, double T, double dt, std::size_t sample_every) {
            py::gil_scoped_release release;
            return propagate(g, model, T, dt, sample_every);
        },
        py::arg("grid"), py::arg("model"), py::arg("T"), py::arg("dt"), py::arg("sample_every") = 1);

    py::class_<LatticeGroundState>(m, "LatticeGroundState")
        .def_readonly("bound", &LatticeGroundState::bound)
        .def_readonly("E_rel", &LatticeGroundState::E_rel)
        .def_readonly("E_rel_analytic", &LatticeGroundState::E_rel_analytic)
        .def_readonly("zeta0_fit", &LatticeGroundState::zeta0_fit)
        .def_readonly("zeta0_analytic", &LatticeGroundState::zeta0_analytic)
        .def_readonly("dx", &LatticeGroundState::dx)
        .def_readonly("n", &LatticeGroundState::n)
        .def_readonly("r", &LatticeGroundState::r)
        .def_readonly("phi", &LatticeGroundState::phi);
    m.def("lattice_ground_state", &lattice_ground_state, py::arg("m0"), py::arg("a0"), py::arg("n"), py::arg("dx"));

    py::class_<EnergyParts>(m, "EnergyParts")
        .def_readonly("com", &EnergyParts::com)
        .def_readonly("binding", &EnergyParts::binding)
        .def_readonly("total", &EnergyParts::total);
    m.def("total_energy", &total_energy, py::arg("m0"), py::arg("a0"), py::arg("p0"));

    m.def("run_cli", &cli, py::arg("args"),
          "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
