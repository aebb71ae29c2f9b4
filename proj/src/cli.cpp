#include "thresholdlab/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thresholdlab/band_solver.hpp"
#include "thresholdlab/highprec.hpp"
#include "thresholdlab/mourre.hpp"
#include "thresholdlab/refdata.hpp"
#include "thresholdlab/svgplot.hpp"

namespace tlab {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out << payload;
    if (!out) throw error("write failed: " + path);
}

// "a:b:step" range or a comma list.
std::vector<long> parse_indices(const std::string& text) {
    std::vector<long> out;
    if (text.find(':') != std::string::npos) {
        long a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw CLI::ValidationError("--indices", "expected a:b:step with positive step");
        for (long n = a; n <= b; n += step) out.push_back(n);
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            size_t used = 0;
            const long value = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(value);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--indices", "not an integer: " + item);
        }
    }
    if (out.empty()) throw CLI::ValidationError("--indices", "empty index list");
    return out;
}

json chain_to_json(const chain_solution& sol) {
    return json{{"kappa", sol.kappa},
                {"band", sol.band},
                {"energy", sol.energy},
                {"points", sol.points}};
}

std::string points_json(const std::vector<double>& xs) {
    std::string out = "[";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += shortest(xs[i]);
    }
    out += "]";
    return out;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

struct common_opts {
    std::string format = "text";
    std::string output;
};

void add_common(CLI::App* cmd, common_opts& opts, bool allow_svg) {
    std::vector<std::string> formats = {"text", "csv", "json"};
    if (allow_svg) formats.push_back("svg");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--output,-o", opts.output, "output path (default: stdout)");
}

int cmd_bands(int kappa, int n_max, double tol, const common_opts& opts) {
    const auto seq = band_sequence(kappa, n_max, tol);
    if (opts.format == "json") {
        json results = json::array();
        for (const auto& sol : seq) results.push_back(chain_to_json(sol));
        const json doc = {{"command", "bands"},
                          {"config", {{"kappa", kappa}, {"n_max", n_max}, {"tol", tol}}},
                          {"results", results}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string out = "kappa,n,energy,points\n";
        for (const auto& sol : seq)
            out += std::to_string(sol.kappa) + "," + std::to_string(sol.band) + "," +
                   shortest(sol.energy) + "," + csv_quote(points_json(sol.points)) + "\n";
        emit(opts.output, out);
    } else {
        std::string out;
        for (const auto& sol : seq) {
            out += "kappa " + std::to_string(sol.kappa) + " band " + std::to_string(sol.band) +
                   ": E = " + fixed12(sol.energy) + ", X = [";
            for (size_t i = 0; i < sol.points.size(); ++i) {
                if (i) out += ", ";
                out += fixed12(sol.points[i]);
            }
            out += "]\n";
        }
        emit(opts.output, out);
    }
    return kExitOk;
}

int cmd_minpoly(int kappa, int band, int bits, int max_degree, const common_opts& opts) {
    const bigfloat value = refine_endpoint(kappa, band, bits);
    const min_poly_result mp = find_min_poly(value, max_degree, bits);
    std::vector<std::string> coeffs;
    for (const auto& c : mp.coefficients) coeffs.push_back(c.str());
    const std::string value_str = value.str(digits_for_bits(bits) - 10);
    if (opts.format == "json") {
        const json doc = {
            {"command", "minpoly"},
            {"config",
             {{"kappa", kappa}, {"band", band}, {"bits", bits}, {"max_degree", max_degree}}},
            {"results",
             {{"degree", mp.degree},
              {"coefficients", coeffs},
              {"residual", mp.residual},
              {"value", value_str}}}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string out = "kappa,band,degree,coefficients,residual\n";
        std::string joined = "[";
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) joined += ",";
            joined += coeffs[i];
        }
        joined += "]";
        out += std::to_string(kappa) + "," + std::to_string(band) + "," +
               std::to_string(mp.degree) + "," + csv_quote(joined) + "," +
               shortest(mp.residual) + "\n";
        emit(opts.output, out);
    } else {
        std::string out = "kappa " + std::to_string(kappa) + " band " + std::to_string(band) +
                          ": degree " + std::to_string(mp.degree) +
                          ", coefficients (ascending) [";
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) out += ", ";
            out += coeffs[i];
        }
        out += "]\nresidual " + fixed12(mp.residual) + "\nvalue " + value_str + "\n";
        emit(opts.output, out);
    }
    return kExitOk;
}

int cmd_interp(int kappa, int band, const std::vector<int>& sigma, const common_opts& opts) {
    const coefficient_solution sol = solve_coefficients({kappa, band, sigma});
    if (opts.format == "json") {
        const json doc = {{"command", "interp"},
                          {"config", {{"kappa", kappa}, {"band", band}, {"sigma", sigma}}},
                          {"results",
                           {{"indices", sol.indices},
                            {"rho", sol.rho},
                            {"singular_values", sol.singular_values},
                            {"nullity", sol.nullity}}}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string out = "index,rho\n";
        for (size_t i = 0; i < sol.indices.size(); ++i)
            out += std::to_string(sol.indices[i]) + "," + shortest(sol.rho[i]) + "\n";
        emit(opts.output, out);
    } else {
        std::string out;
        for (size_t i = 0; i < sol.indices.size(); ++i)
            out += "rho_" + std::to_string(sol.indices[i]) + " = " + fixed12(sol.rho[i]) + "\n";
        emit(opts.output, out);
    }
    return kExitOk;
}

int cmd_validate(int kappa, int band, const std::vector<int>& sigma, int e_grid, int x_grid,
                 double margin, int expect, const common_opts& opts) {
    const validity_verdict verdict = validate_sigma({kappa, band, sigma}, e_grid, x_grid, margin);
    if (opts.format == "json") {
        const json doc = {{"command", "validate"},
                          {"config",
                           {{"kappa", kappa},
                            {"band", band},
                            {"sigma", sigma},
                            {"e_grid", e_grid},
                            {"x_grid", x_grid},
                            {"margin", margin}}},
                          {"results",
                           {{"valid", verdict.valid},
                            {"min_value", verdict.min_value},
                            {"witness_energy", verdict.witness_energy},
                            {"witness_x", verdict.witness_x}}}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string out = "valid,min_value,witness_energy,witness_x\n";
        out += std::string(verdict.valid ? "true" : "false") + "," + shortest(verdict.min_value) +
               "," + shortest(verdict.witness_energy) + "," + shortest(verdict.witness_x) + "\n";
        emit(opts.output, out);
    } else {
        std::string out = std::string("verdict: ") + (verdict.valid ? "valid" : "invalid") +
                          "\nmin G = " + fixed12(verdict.min_value) + " at E = " +
                          fixed12(verdict.witness_energy) + ", x = " +
                          fixed12(verdict.witness_x) + "\n";
        emit(opts.output, out);
    }
    if (expect != 0) {
        const bool want_valid = expect > 0;
        if (verdict.valid != want_valid) return kExitValidation;
    }
    return kExitOk;
}

int cmd_rate(int kappa, const std::vector<long>& indices, const common_opts& opts) {
    const rate_fit_result fit = rate_fit(kappa, indices);
    if (opts.format == "svg") {
        if (opts.output.empty()) throw error("svg output needs --output");
        write_rate_loglog_svg(opts.output, {fit.log_n, fit.log_gap}, fit.slope, fit.intercept,
                              kappa);
        return kExitOk;
    }
    if (opts.format == "json") {
        const json doc = {{"command", "rate"},
                          {"config", {{"kappa", kappa}, {"indices", indices}}},
                          {"results",
                           {{"slope", fit.slope},
                            {"intercept", fit.intercept},
                            {"residual_norm", fit.residual_norm},
                            {"log_n", fit.log_n},
                            {"log_gap", fit.log_gap}}}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string out = "log_n,log_gap\n";
        for (size_t i = 0; i < fit.log_n.size(); ++i)
            out += shortest(fit.log_n[i]) + "," + shortest(fit.log_gap[i]) + "\n";
        emit(opts.output, out);
    } else {
        const std::string out = "slope = " + fixed12(fit.slope) +
                                "\nintercept = " + fixed12(fit.intercept) +
                                "\nresidual_norm = " + fixed12(fit.residual_norm) + "\n";
        emit(opts.output, out);
    }
    return kExitOk;
}

int cmd_refdata(const std::string& source, bool check, const common_opts& opts) {
    if (check) {
        const integrity_report report = check_integrity();
        if (opts.format == "json") {
            const json doc = {{"command", "refdata"},
                              {"config", {{"check", true}}},
                              {"results",
                               {{"checks", report.checks}, {"mismatches", report.mismatches}}}};
            emit(opts.output, doc.dump(2) + "\n");
        } else {
            std::string out = "checks: " + std::to_string(report.checks) + "\nmismatches: " +
                              std::to_string(report.mismatches.size()) + "\n";
            for (const auto& m : report.mismatches) out += "  " + m + "\n";
            emit(opts.output, out);
        }
        return report.ok() ? kExitOk : kExitValidation;
    }

    if (source == "sigma-verdicts") {
        const auto& verdicts = sigma_verdicts();
        if (opts.format == "json") {
            json results = json::array();
            for (const auto& v : verdicts)
                results.push_back({{"kappa", v.kappa},
                                   {"band", v.band},
                                   {"indices", v.indices},
                                   {"expected_valid", v.expected_valid}});
            const json doc = {{"command", "refdata"},
                              {"config", {{"source", source}}},
                              {"results", results}};
            emit(opts.output, doc.dump(2) + "\n");
        } else if (opts.format == "csv") {
            std::string out = "kappa,band,indices,expected_valid\n";
            for (const auto& v : verdicts) {
                std::string joined;
                for (size_t i = 0; i < v.indices.size(); ++i) {
                    if (i) joined += ";";
                    joined += std::to_string(v.indices[i]);
                }
                out += std::to_string(v.kappa) + "," + std::to_string(v.band) + "," + joined +
                       "," + (v.expected_valid ? "true" : "false") + "\n";
            }
            emit(opts.output, out);
        } else {
            std::string out;
            for (const auto& v : verdicts) {
                out += "kappa " + std::to_string(v.kappa) + " band " + std::to_string(v.band) +
                       " sigma [";
                for (size_t i = 0; i < v.indices.size(); ++i) {
                    if (i) out += ", ";
                    out += std::to_string(v.indices[i]);
                }
                out += std::string("]: ") + (v.expected_valid ? "valid" : "invalid") + "\n";
            }
            emit(opts.output, out);
        }
        return kExitOk;
    }

    const auto& records = load_dataset(source);
    if (opts.format == "json") {
        json results = json::array();
        for (const auto& r : records) {
            json aux = json::object();
            for (const auto& a : r.aux) aux[a.name] = a.value;
            json item = {{"source", r.source},
                         {"kappa", r.kappa},
                         {"label", r.label},
                         {"closed_form", r.closed_form},
                         {"aux", aux}};
            if (r.no_solutions)
                item["value"] = nullptr;
            else
                item["value"] = r.value;
            item["no_solutions"] = r.no_solutions;
            results.push_back(item);
        }
        const json doc = {{"command", "refdata"},
                          {"config", {{"source", source}}},
                          {"results", results}};
        emit(opts.output, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        emit(opts.output, dataset_to_csv(records));
    } else {
        std::string out;
        for (const auto& r : records) {
            out += r.source + " " + r.label + " (kappa " + std::to_string(r.kappa) + "): ";
            if (r.no_solutions) {
                out += "no solutions listed";
            } else {
                out += fixed12(r.value);
                if (!r.closed_form.empty()) out += " = " + r.closed_form;
                for (const auto& a : r.aux)
                    out += ", " + a.name + " = " + fixed12(a.value);
            }
            out += "\n";
        }
        emit(opts.output, out);
    }
    return kExitOk;
}

int cmd_plot_g_curve(int kappa, int band, std::vector<int> sigma, double energy, int x_grid,
                     const std::string& output) {
    if (sigma.empty())
        for (int j = 1; j <= 2 * band; ++j) sigma.push_back(j * kappa);
    const coefficient_solution sol = solve_coefficients({kappa, band, sigma});
    double e = energy;
    if (!(e > 0)) {
        const auto lo = solve_band_endpoint(kappa, band);
        const auto hi = solve_band_endpoint(kappa, band - 1);
        e = 0.5 * (lo.energy + hi.energy);
    }
    plot_series curve;
    curve.x.reserve(x_grid);
    curve.y.reserve(x_grid);
    for (int i = 0; i < x_grid; ++i) {
        const double x = (e - 1) + (2 - e) * i / (x_grid - 1);
        curve.x.push_back(x);
        curve.y.push_back(evaluate_g_sum(kappa, sol.indices, sol.rho, e, x));
    }
    write_g_curve_svg(output, curve, kappa, e);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"threshold energies, interpolation coefficients and positivity checks for "
                 "the two-dimensional discrete Laplacian"};
    app.require_subcommand(1);

    int kappa = 2, band = 1, n_max = 5, bits = 512, max_degree = 8;
    int e_grid = 101, x_grid = 2001;
    double tol = 1e-12, margin = 0.0, energy = 0.0;
    std::string indices_text, source = "table1", plot_kind = "g-curve";
    std::vector<int> sigma;
    bool check = false, expect_valid = false, expect_invalid = false;
    common_opts bands_opts, minpoly_opts, interp_opts, validate_opts, rate_opts, refdata_opts;

    auto* bands = app.add_subcommand("bands", "band endpoints E_0..E_n with their chains");
    bands->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    bands->add_option("--n-max", n_max, "last band index")->required()->check(CLI::NonNegativeNumber);
    bands->add_option("--tol", tol, "closure residual tolerance")->capture_default_str();
    add_common(bands, bands_opts, false);

    auto* minpoly = app.add_subcommand("minpoly", "integer polynomial annihilating a band endpoint");
    minpoly->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    minpoly->add_option("--band", band, "band index")->required()->check(CLI::NonNegativeNumber);
    minpoly->add_option("--bits", bits, "working precision in bits")->capture_default_str();
    minpoly->add_option("--max-degree", max_degree, "degree cap")->capture_default_str();
    add_common(minpoly, minpoly_opts, false);

    auto* interp = app.add_subcommand("interp", "solve the coefficient interpolation system");
    interp->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    interp->add_option("--band", band, "band index")->required()->check(CLI::PositiveNumber);
    interp->add_option("--sigma", sigma, "index set (multiples of kappa)")
        ->required()
        ->delimiter(',');
    add_common(interp, interp_opts, false);

    auto* validate = app.add_subcommand("validate", "positivity verdict for an index set");
    validate->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    validate->add_option("--band", band, "band index")->required()->check(CLI::PositiveNumber);
    validate->add_option("--sigma", sigma, "index set (multiples of kappa)")
        ->required()
        ->delimiter(',');
    validate->add_option("--e-grid", e_grid, "interior energy samples")->capture_default_str();
    validate->add_option("--x-grid", x_grid, "x samples per energy")->capture_default_str();
    validate->add_option("--margin", margin, "strict positivity margin")->capture_default_str();
    validate->add_flag("--expect-valid", expect_valid, "exit 2 unless the verdict is valid");
    validate->add_flag("--expect-invalid", expect_invalid, "exit 2 unless the verdict is invalid");
    add_common(validate, validate_opts, false);

    auto* rate = app.add_subcommand("rate", "log-log convergence fit of the deep band sequence");
    rate->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    rate->add_option("--indices", indices_text, "a:b:step range or comma list of n")->required();
    add_common(rate, rate_opts, true);

    auto* refdata = app.add_subcommand("refdata", "embedded reference datasets");
    refdata->add_option("--source", source,
                        "table1 | table2 | table4 | section8 | sigma-verdicts")
        ->capture_default_str();
    refdata->add_flag("--check", check, "run the integrity checks");
    add_common(refdata, refdata_opts, false);

    auto* plot = app.add_subcommand("plot", "standalone SVG figures");
    plot->add_option("--kind", plot_kind, "g-curve | rate-loglog")
        ->check(CLI::IsMember({"g-curve", "rate-loglog"}))
        ->capture_default_str();
    plot->add_option("--kappa", kappa, "level-set order")->required()->check(CLI::Range(2, 64));
    plot->add_option("--band", band, "band index (g-curve)");
    plot->add_option("--sigma", sigma, "index set (g-curve; default multiples of kappa)")
        ->delimiter(',');
    plot->add_option("--energy", energy, "energy to sample (g-curve; default band midpoint)");
    plot->add_option("--indices", indices_text, "n range (rate-loglog)");
    plot->add_option("--x-grid", x_grid, "curve samples")->capture_default_str();
    std::string plot_output;
    plot->add_option("--output,-o", plot_output, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (bands->parsed()) return cmd_bands(kappa, n_max, tol, bands_opts);
        if (minpoly->parsed()) return cmd_minpoly(kappa, band, bits, max_degree, minpoly_opts);
        if (interp->parsed()) return cmd_interp(kappa, band, sigma, interp_opts);
        if (validate->parsed()) {
            if (expect_valid && expect_invalid) {
                std::cerr << "--expect-valid and --expect-invalid are mutually exclusive\n";
                return kExitUsage;
            }
            const int expect = expect_valid ? 1 : (expect_invalid ? -1 : 0);
            return cmd_validate(kappa, band, sigma, e_grid, x_grid, margin, expect,
                                validate_opts);
        }
        if (rate->parsed()) return cmd_rate(kappa, parse_indices(indices_text), rate_opts);
        if (refdata->parsed()) return cmd_refdata(source, check, refdata_opts);
        if (plot->parsed()) {
            if (plot_kind == "rate-loglog") {
                const rate_fit_result fit = rate_fit(kappa, parse_indices(indices_text));
                write_rate_loglog_svg(plot_output, {fit.log_n, fit.log_gap}, fit.slope,
                                      fit.intercept, kappa);
                return kExitOk;
            }
            const int curve_grid = (x_grid == 2001) ? 801 : x_grid;
            return cmd_plot_g_curve(kappa, band, sigma, energy, curve_grid, plot_output);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace tlab
