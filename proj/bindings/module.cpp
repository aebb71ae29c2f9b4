#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thresholdlab/band_solver.hpp"
#include "thresholdlab/chebyshev.hpp"
#include "thresholdlab/highprec.hpp"
#include "thresholdlab/mourre.hpp"
#include "thresholdlab/refdata.hpp"

namespace py = pybind11;
using namespace tlab;

namespace {

py::dict chain_to_dict(const chain_solution& sol) {
    py::dict d;
    d["kappa"] = sol.kappa;
    d["band"] = sol.band;
    d["energy"] = sol.energy;
    d["points"] = sol.points;
    return d;
}

py::dict record_to_dict(const threshold_record& r) {
    py::dict d;
    d["source"] = r.source;
    d["kappa"] = r.kappa;
    d["label"] = r.label;
    if (r.no_solutions)
        d["value"] = py::none();
    else
        d["value"] = r.value;
    d["closed_form"] = r.closed_form;
    py::dict aux;
    for (const auto& a : r.aux) aux[py::str(a.name)] = a.value;
    d["aux"] = aux;
    d["no_solutions"] = r.no_solutions;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "threshold energies, interpolation coefficients and positivity checks for the "
              "two-dimensional discrete Laplacian";

    py::register_exception<out_of_branch>(m, "OutOfBranchError");
    py::register_exception<no_root>(m, "NoRootError");
    py::register_exception<ambiguous_nullspace>(m, "AmbiguousNullspaceError");
    py::register_exception<no_relation>(m, "NoRelationError");
    py::register_exception<unknown_source>(m, "UnknownSourceError");

    m.def("cheb_t", [](int n, double x) { return cheb_t(n, x); }, py::arg("n"), py::arg("x"),
          "first-kind Chebyshev polynomial T_n(x)");
    m.def("cheb_u", [](int n, double x) { return cheb_u(n, x); }, py::arg("n"), py::arg("x"),
          "second-kind Chebyshev polynomial U_n(x)");
    m.def("cheb_u_deriv", [](int n, double x) { return cheb_u_deriv(n, x); }, py::arg("n"),
          py::arg("x"));
    m.def("branch_step", [](int kappa, double energy, double x) {
              return branch_step(kappa, energy, x);
          },
          py::arg("kappa"), py::arg("energy"), py::arg("x"),
          "the level-set branch y with T_kappa(x) = T_kappa(E - y)");

    m.def("band_window", [](int kappa) {
              const auto w = make_band_window(kappa);
              return py::make_tuple(w.lower, w.upper);
          },
          py::arg("kappa"));
    m.def("chain_points", &chain_points, py::arg("kappa"), py::arg("band"), py::arg("energy"));
    m.def("closure_residual", &closure_residual, py::arg("kappa"), py::arg("band"),
          py::arg("energy"));
    m.def("solve_band_endpoint",
          [](int kappa, int band, double tol) {
              return chain_to_dict(solve_band_endpoint(kappa, band, tol));
          },
          py::arg("kappa"), py::arg("band"), py::arg("tol") = 1e-12);
    m.def("band_sequence",
          [](int kappa, int band_max, double tol) {
              py::list out;
              for (const auto& sol : band_sequence(kappa, band_max, tol))
                  out.append(chain_to_dict(sol));
              return out;
          },
          py::arg("kappa"), py::arg("band_max"), py::arg("tol") = 1e-12);
    m.def("rate_fit",
          [](int kappa, const std::vector<long>& indices) {
              const auto fit = rate_fit(kappa, indices);
              py::dict d;
              d["slope"] = fit.slope;
              d["intercept"] = fit.intercept;
              d["residual_norm"] = fit.residual_norm;
              d["log_n"] = fit.log_n;
              d["log_gap"] = fit.log_gap;
              return d;
          },
          py::arg("kappa"), py::arg("indices"));

    m.def("refine_endpoint",
          [](int kappa, int band, int bits) {
              const bigfloat value = refine_endpoint(kappa, band, bits);
              return value.str(digits_for_bits(bits) - 10);
          },
          py::arg("kappa"), py::arg("band"), py::arg("bits") = 256,
          "band endpoint refined to the requested bits, as a decimal string");
    m.def("minimal_polynomial",
          [](int kappa, int band, int max_degree, int bits) {
              const auto mp = find_min_poly(refine_endpoint(kappa, band, bits), max_degree, bits);
              const py::object py_int = py::module_::import("builtins").attr("int");
              py::list coeffs;
              for (const auto& c : mp.coefficients) coeffs.append(py_int(c.str()));
              py::dict d;
              d["degree"] = mp.degree;
              d["coefficients"] = coeffs;
              d["residual"] = mp.residual;
              return d;
          },
          py::arg("kappa"), py::arg("band"), py::arg("max_degree") = 8, py::arg("bits") = 512,
          "integer coefficients (ascending) annihilating the refined endpoint");

    m.def("g_symbol", &g_symbol, py::arg("kappa"), py::arg("j"), py::arg("energy"), py::arg("x"));
    m.def("g_symbol_deriv", &g_symbol_deriv, py::arg("kappa"), py::arg("j"), py::arg("energy"),
          py::arg("x"));
    m.def("solve_coefficients",
          [](int kappa, int band, const std::vector<int>& sigma) {
              const auto sol = solve_coefficients({kappa, band, sigma});
              py::dict d;
              d["indices"] = sol.indices;
              d["rho"] = sol.rho;
              d["singular_values"] = sol.singular_values;
              d["nullity"] = sol.nullity;
              return d;
          },
          py::arg("kappa"), py::arg("band"), py::arg("sigma"));
    m.def("evaluate_g_sum", &evaluate_g_sum, py::arg("kappa"), py::arg("indices"), py::arg("rho"),
          py::arg("energy"), py::arg("x"));
    m.def("validate_sigma",
          [](int kappa, int band, const std::vector<int>& sigma, int e_grid, int x_grid,
             double margin) {
              const auto v = validate_sigma({kappa, band, sigma}, e_grid, x_grid, margin);
              py::dict d;
              d["valid"] = v.valid;
              d["min_value"] = v.min_value;
              d["witness_energy"] = v.witness_energy;
              d["witness_x"] = v.witness_x;
              return d;
          },
          py::arg("kappa"), py::arg("band"), py::arg("sigma"), py::arg("e_grid") = 101,
          py::arg("x_grid") = 2001, py::arg("margin") = 0.0);

    m.def("load_dataset",
          [](const std::string& source) {
              py::list out;
              for (const auto& r : load_dataset(source)) out.append(record_to_dict(r));
              return out;
          },
          py::arg("source"));
    m.def("sigma_verdicts", [] {
        py::list out;
        for (const auto& v : sigma_verdicts()) {
            py::dict d;
            d["kappa"] = v.kappa;
            d["band"] = v.band;
            d["indices"] = v.indices;
            d["expected_valid"] = v.expected_valid;
            out.append(d);
        }
        return out;
    });
    m.def("check_integrity", [] {
        const auto report = check_integrity();
        py::dict d;
        d["checks"] = report.checks;
        d["mismatches"] = report.mismatches;
        return d;
    });
}
