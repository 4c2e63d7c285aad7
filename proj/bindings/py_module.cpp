// Python bindings for the solver core. The surface mirrors the CLI: build or
// load an instance, solve it, evaluate and measure the solution, and query
// the stability bounds and closed-form growth quantities.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helm1d/bounds.hpp"
#include "helm1d/config_io.hpp"
#include "helm1d/configgen.hpp"
#include "helm1d/medium.hpp"
#include "helm1d/qrec.hpp"
#include "helm1d/solver.hpp"
#include "helm1d/tolerances.hpp"

namespace py = pybind11;
using namespace helm1d;

namespace {

py::dict bound_dict(const BoundValue& b) {
    py::dict d;
    d["value"] = b.value;
    d["finite"] = b.finite;
    d["paper_ref"] = b.label;
    d["assumptions"] = b.assumptions;
    return d;
}

py::dict report_dict(const StabilityReport& rep) {
    py::dict d;
    d["effectively_resonant"] = rep.effectively_resonant;
    d["max_inv_sqrt"] = rep.max_inv_sqrt;
    d["c_stab"] = bound_dict(rep.c_stab_main);
    py::list uppers;
    for (const BoundValue& b : rep.upper) uppers.append(bound_dict(b));
    d["upper"] = uppers;
    d["q_profile"] = rep.q_profile;
    if (rep.has_majorant) {
        d["regime"] = rep.regime;
        d["q_cap"] = rep.q_cap;
        d["majorant"] = bound_dict(rep.majorant);
        d["C_q"] = rep.C_q;
        d["alpha_q"] = rep.alpha_q;
        d["jump_count_cap"] = rep.jump_count_cap;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Layered 1D Helmholtz solver: exact layer recursions and stability bounds";

    py::class_<LayeredMedium>(m, "LayeredMedium")
        .def(py::init<>())
        .def_readwrite("mesh", &LayeredMedium::mesh)
        .def_readwrite("c", &LayeredMedium::c)
        .def_readwrite("a", &LayeredMedium::a)
        .def("intervals", &LayeredMedium::intervals)
        .def("jumps", &LayeredMedium::jumps)
        .def("has_diffusion", &LayeredMedium::has_diffusion);

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def(py::init<>())
        .def_readwrite("medium", &ProblemInstance::medium)
        .def_readwrite("omega", &ProblemInstance::omega)
        .def_readwrite("g1", &ProblemInstance::g1)
        .def_readwrite("g2", &ProblemInstance::g2);

    py::class_<WaveSolution>(m, "WaveSolution")
        .def_readonly("instance", &WaveSolution::instance)
        .def_readonly("A", &WaveSolution::A)
        .def_readonly("B", &WaveSolution::B)
        .def_readonly("effectively_resonant", &WaveSolution::effectively_resonant);

    m.def("validate_messages", [](const ProblemInstance& inst) {
        std::vector<std::string> out;
        for (const Violation& v : validate(inst).violations) out.push_back(v.message);
        return out;
    }, py::arg("instance"), "Validation violation messages; empty means valid.");

    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"),
          py::arg("provenance") = "");

    m.def("solve_direct", [](const ProblemInstance& i) { return solve_direct(i); },
          py::arg("instance"));
    m.def("solve_green", [](const ProblemInstance& i) { return solve_green(i); },
          py::arg("instance"));
    m.def("solve_oracle", [](const ProblemInstance& i) { return solve_oracle(i); },
          py::arg("instance"));

    m.def("evaluate", [](const WaveSolution& s, const std::vector<double>& pts, int k) {
        return evaluate(s, pts, k);
    }, py::arg("solution"), py::arg("points"), py::arg("k") = 0);
    m.def("energy_norm", &energy_norm, py::arg("solution"), py::arg("k"));
    m.def("energy_space_norm", &energy_space_norm, py::arg("solution"));

    m.def("residual_report", [](const WaveSolution& s) {
        const ResidualReport r = residuals(s);
        py::dict d;
        d["transmission_u"] = r.transmission_u;
        d["transmission_du"] = r.transmission_du;
        d["bc_left"] = r.bc_left;
        d["bc_right"] = r.bc_right;
        d["solution_scale"] = r.solution_scale;
        d["data_scale"] = r.data_scale;
        return d;
    }, py::arg("solution"));

    m.def("q_profile", [](const ProblemInstance& inst) {
        const DerivedParams p = derive_params(inst);
        const QSequence qs = q_sequence(p.sigma_tail(), p.q);
        std::vector<double> out;
        for (std::size_t j = 1; j < qs.Q.size(); ++j) out.push_back(std::abs(qs.Q[j]));
        return out;
    }, py::arg("instance"), "Moduli |Q_1|..|Q_n| of the reflection recursion.");

    m.def("green_column_abs", [](const ProblemInstance& inst, bool first) {
        const DerivedParams p = derive_params(inst);
        const GreenColumn col = green_column(p.sqrt_sigma_tail(), p.q,
                                             first ? ColumnSide::first : ColumnSide::last);
        std::vector<double> out;
        out.reserve(col.entries.size());
        for (const cplx& e : col.entries) out.push_back(std::abs(e));
        return out;
    }, py::arg("instance"), py::arg("first") = false,
          "Entry moduli of one extremal column of the inverse coefficient matrix.");

    m.def("stability_report", [](const ProblemInstance& inst) {
        return report_dict(stability_upper(inst));
    }, py::arg("instance"));
    m.def("combined_report", [](const ProblemInstance& inst) {
        return report_dict(combined_bound(inst));
    }, py::arg("instance"), "Regime-partitioned majorant; needs alternating wave speed.");
    m.def("stability_lower", [](const WaveSolution& s) {
        const std::array<double, 3> lo = stability_lower(s);
        return std::vector<double>(lo.begin(), lo.end());
    }, py::arg("solution"));
    m.def("growth_lower_bound", &growth_lower_bound, py::arg("omega"), py::arg("q"));

    m.def("gen_well_behaved", &gen_well_behaved, py::arg("omega"), py::arg("n"), py::arg("q"));
    m.def("gen_critical", [](double omega, int k, double q, const std::vector<int>& mult) {
        return mult.empty() ? gen_critical(omega, k, q) : gen_critical(omega, k, q, mult);
    }, py::arg("omega"), py::arg("k"), py::arg("q"),
          py::arg("multiplicities") = std::vector<int>{});
    m.def("gen_random", [](std::uint64_t seed, int n_min, int n_max, double omega_min,
                           double omega_max, double c_min, double c_max) {
        RandomSpec spec;
        spec.seed = seed;
        spec.n_min = n_min;
        spec.n_max = n_max;
        spec.omega_min = omega_min;
        spec.omega_max = omega_max;
        spec.c_min = c_min;
        spec.c_max = c_max;
        return gen_random(spec);
    }, py::arg("seed") = 1, py::arg("n_min") = 0, py::arg("n_max") = 40,
          py::arg("omega_min") = 1.0, py::arg("omega_max") = 128.0, py::arg("c_min") = 0.5,
          py::arg("c_max") = 2.0);

    m.def("max_modulus_closed_form", &max_modulus_closed_form, py::arg("q"), py::arg("j"));
    m.def("max_modulus_complement", &max_modulus_complement, py::arg("q"), py::arg("j"));
    m.def("growth_majorant", &growth_majorant, py::arg("q_tilde"), py::arg("q"), py::arg("m"));

    m.def("reduce_to_unit_a", [](const ProblemInstance& inst) {
        return reduce_variable_a(inst).reduced;
    }, py::arg("instance"), "Equivalent unit-diffusion instance via the change of variable.");
}
