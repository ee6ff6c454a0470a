#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levymoduli/errors.hpp"
#include "levymoduli/gaussian.hpp"
#include "levymoduli/harness.hpp"
#include "levymoduli/levy.hpp"
#include "levymoduli/oracles.hpp"
#include "levymoduli/spectral.hpp"
#include "levymoduli/structure_function.hpp"

namespace py = pybind11;
using namespace levymoduli;

PYBIND11_MODULE(_levymoduli, m) {
    m.doc() = "Spectral increment variances, Gaussian path simulation, Levy "
              "local times, and the verification harness";

    py::class_<CharacteristicExponent>(m, "CharacteristicExponent")
        .def_static("canonical_stable", &CharacteristicExponent::canonical_stable,
                    py::arg("beta"))
        .def_static("brownian_half", &CharacteristicExponent::brownian_half)
        .def_static("scaled_stable", &CharacteristicExponent::scaled_stable,
                    py::arg("c"), py::arg("beta"))
        .def_static("tabulated", &CharacteristicExponent::tabulated, py::arg("knots"),
                    py::arg("tail_exponent"))
        .def_static("from_csv", &CharacteristicExponent::from_csv, py::arg("path"))
        .def("psi", &CharacteristicExponent::psi, py::arg("lam"))
        .def("describe", &CharacteristicExponent::describe)
        .def("is_stable_power", &CharacteristicExponent::is_stable_power);

    py::class_<StructureFunction>(m, "StructureFunction")
        .def_static("spectral", &StructureFunction::spectral, py::arg("exponent"),
                    py::arg("alpha") = 0.0, py::arg("tol") = kDefaultQuadTol)
        .def_static("power_law", &StructureFunction::power_law, py::arg("r"))
        .def_static("closed_form_stable", &StructureFunction::closed_form_stable,
                    py::arg("beta"))
        .def("value", &StructureFunction::value, py::arg("h"))
        .def("sigma", &StructureFunction::sigma, py::arg("h"))
        .def("concave_declared", &StructureFunction::concave_declared)
        .def("describe", &StructureFunction::describe);

    m.def("sigma0_sq", &sigma0_sq, py::arg("exponent"), py::arg("h"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("sigma0_sq_stable_closed", &sigma0_sq_stable_closed, py::arg("beta"),
          py::arg("h"));
    m.def("sigma_alpha_sq", &sigma_alpha_sq, py::arg("exponent"), py::arg("alpha"),
          py::arg("h"), py::arg("tol") = kDefaultQuadTol);
    m.def("sigma_tilde_sq", &sigma_tilde_sq, py::arg("exponent"), py::arg("alpha"),
          py::arg("h"), py::arg("tol") = kDefaultQuadTol);
    m.def("u_alpha", &u_alpha, py::arg("exponent"), py::arg("alpha"), py::arg("x"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("transition_density", &transition_density, py::arg("exponent"), py::arg("t"),
          py::arg("x"), py::arg("tol") = kDefaultQuadTol);
    m.def("v_of_t", &v_of_t, py::arg("exponent"), py::arg("t"),
          py::arg("tol") = kDefaultQuadTol);
    m.def("abs_moment_normal", &abs_moment_normal, py::arg("p"));
    m.def("c_beta_p", &c_beta_p, py::arg("beta"), py::arg("p"));
    m.def("brownian_theorem_constant", &brownian_theorem_constant, py::arg("p"));

    py::class_<GaussianPath>(m, "GaussianPath")
        .def_readonly("a", &GaussianPath::a)
        .def_readonly("b", &GaussianPath::b)
        .def_readonly("dx", &GaussianPath::dx)
        .def_readonly("values", &GaussianPath::values)
        .def("at", &GaussianPath::at, py::arg("x"))
        .def("to_csv", &GaussianPath::to_csv, py::arg("path"));

    m.def("simulate_stationary_increment_path", &simulate_stationary_increment_path,
          py::arg("sigma_sq"), py::arg("a"), py::arg("b"), py::arg("dx"),
          py::arg("h_max"), py::arg("seed"));
    m.def("lp_modulus_gaussian", &lp_modulus_gaussian, py::arg("path"), py::arg("h"),
          py::arg("p"), py::arg("a"), py::arg("b"), py::arg("sigma_sq"));
    m.def("lp_modulus_squared_gaussian", &lp_modulus_squared_gaussian, py::arg("path"),
          py::arg("h"), py::arg("p"), py::arg("a"), py::arg("b"), py::arg("sigma_sq"));

    py::class_<SamplePath>(m, "SamplePath")
        .def_readonly("t_end", &SamplePath::t_end)
        .def_readonly("n", &SamplePath::n)
        .def_readonly("values", &SamplePath::values)
        .def("to_csv", &SamplePath::to_csv, py::arg("path"));

    py::class_<LocalTimeField>(m, "LocalTimeField")
        .def_readonly("eps", &LocalTimeField::eps)
        .def_readonly("origin", &LocalTimeField::origin)
        .def_readonly("values", &LocalTimeField::values)
        .def_readonly("t", &LocalTimeField::t)
        .def_readonly("resolution_warning", &LocalTimeField::resolution_warning)
        .def("at", &LocalTimeField::at, py::arg("x"))
        .def("to_csv", &LocalTimeField::to_csv, py::arg("path"));

    m.def("simulate_stable_path", &simulate_stable_path, py::arg("beta"), py::arg("t"),
          py::arg("n"), py::arg("seed"));
    m.def("simulate_brownian_half_path", &simulate_brownian_half_path, py::arg("t"),
          py::arg("n"), py::arg("seed"));
    m.def("estimate_local_time", &estimate_local_time, py::arg("path"), py::arg("eps"),
          py::arg("a"), py::arg("b"));
    m.def("lp_modulus_local_time", &lp_modulus_local_time, py::arg("field"),
          py::arg("h"), py::arg("p"), py::arg("a"), py::arg("b"), py::arg("sigma0_sq"));
    m.def("rhs_local_time", &rhs_local_time, py::arg("field"), py::arg("p"),
          py::arg("a"), py::arg("b"));
    m.def("quadratic_variation_sum", &quadratic_variation_sum, py::arg("field"),
          py::arg("m"));

    py::class_<MomentQuery>(m, "MomentQuery")
        .def(py::init<>())
        .def_readwrite("exp", &MomentQuery::exp)
        .def_readwrite("m", &MomentQuery::m)
        .def_readwrite("t", &MomentQuery::t)
        .def_readwrite("x", &MomentQuery::x)
        .def_readwrite("z", &MomentQuery::z)
        .def_readwrite("tol", &MomentQuery::tol)
        .def_readwrite("force_quadrature", &MomentQuery::force_quadrature);
    m.def("local_time_moment", &local_time_moment, py::arg("query"));
    m.def("local_time_diff_second_moment", &local_time_diff_second_moment,
          py::arg("exponent"), py::arg("t"), py::arg("x"), py::arg("y"),
          py::arg("tol") = 1e-9);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("kind", &ExperimentConfig::kind)
        .def_readwrite("r", &ExperimentConfig::r)
        .def_readwrite("beta", &ExperimentConfig::beta)
        .def_readwrite("brownian_half", &ExperimentConfig::brownian_half)
        .def_readwrite("p", &ExperimentConfig::p)
        .def_readwrite("a", &ExperimentConfig::a)
        .def_readwrite("b", &ExperimentConfig::b)
        .def_readwrite("t", &ExperimentConfig::t)
        .def_readwrite("t_grid", &ExperimentConfig::t_grid)
        .def_readwrite("m_moment", &ExperimentConfig::m_moment)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("eps", &ExperimentConfig::eps)
        .def_readwrite("qv_m", &ExperimentConfig::qv_m)
        .def_readwrite("h_multiples", &ExperimentConfig::h_multiples)
        .def_readwrite("replicas", &ExperimentConfig::replicas)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("tolerance", &ExperimentConfig::tolerance)
        .def_readwrite("full_support", &ExperimentConfig::full_support);

    py::class_<ReportRow>(m, "ReportRow")
        .def_readonly("h", &ReportRow::h)
        .def_readonly("t", &ReportRow::t)
        .def_readonly("mean", &ReportRow::mean)
        .def_readonly("std_dev", &ReportRow::std_dev)
        .def_readonly("std_err", &ReportRow::std_err)
        .def_readonly("target", &ReportRow::target)
        .def_readonly("z_score", &ReportRow::z_score)
        .def_readonly("passed", &ReportRow::pass)
        .def_readonly("target_name", &ReportRow::target_name);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("rows", &ExperimentReport::rows)
        .def_readonly("passed", &ExperimentReport::pass)
        .def_readonly("runtime_sec", &ExperimentReport::runtime_sec)
        .def_readonly("version", &ExperimentReport::version)
        .def_readonly("notes", &ExperimentReport::notes)
        .def("payload", &ExperimentReport::payload)
        .def("json", [](const ExperimentReport& r) { return r.to_json().dump(2); })
        .def("write_json", &ExperimentReport::write_json, py::arg("path"))
        .def("write_csv", &ExperimentReport::write_csv, py::arg("path"));

    m.def("run_experiment", &run_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<QuadratureFailure>(m, "QuadratureFailureError",
                                              PyExc_ArithmeticError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
}
