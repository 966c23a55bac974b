#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esopt/analytic_pricer.hpp"
#include "esopt/errors.hpp"
#include "esopt/io.hpp"
#include "esopt/mc_oracle.hpp"
#include "esopt/pde_solver.hpp"
#include "esopt/scenario.hpp"

namespace {

using esopt::InputError;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<int> parse_coords(const std::string& spec) {
    std::vector<int> coords;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            const int c = std::stoi(tok);
            if (c < 1) throw InputError("");
            coords.push_back(c - 1);  // CLI is 1-based
        } catch (...) {
            throw InputError("--coords: expected comma-separated indices >= 1, got '" +
                             tok + "'");
        }
    }
    if (coords.empty()) throw InputError("--coords: empty coordinate set");
    return coords;
}

std::uint64_t env_seed() {
    if (const char* v = std::getenv("ESOPT_SEED")) {
        try {
            return std::stoull(v);
        } catch (...) {
            throw InputError("ESOPT_SEED: not a valid unsigned integer");
        }
    }
    return 0;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot open output file '" + out_path + "'");
    f << text;
}

std::string quote_csv(const esopt::PriceQuote& q) {
    std::ostringstream os;
    os << "method,call,put,error_estimate\n"
       << esopt::method_name(q.method) << ',' << esopt::fmt12(q.call) << ','
       << esopt::fmt12(q.put) << ',' << esopt::fmt12(q.error_estimate) << '\n';
    return os.str();
}

std::string render_quote(const esopt::PriceQuote& q, const std::string& format) {
    if (format == "csv") return quote_csv(q);
    return esopt::quote_json(q).dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-linked asset and option pricing toolkit"};
    app.require_subcommand(1);

    double spot = 100.0, strike = 100.0, rate = 0.05, sigma = 0.2, tau = 1.0;
    std::string format = "json";
    const auto add_market = [&](CLI::App* cmd) {
        cmd->add_option("--spot", spot, "spot price")->capture_default_str();
        cmd->add_option("--strike", strike, "strike price")->capture_default_str();
        cmd->add_option("--rate", rate, "risk-free rate per year")
            ->capture_default_str();
        cmd->add_option("--sigma", sigma, "volatility per sqrt(year)")
            ->capture_default_str();
        cmd->add_option("--tau", tau, "time to expiry in years")
            ->capture_default_str();
        cmd->add_option("--format", format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };

    CLI::App* price = app.add_subcommand("price", "closed-form quote");
    add_market(price);

    CLI::App* pde = app.add_subcommand(
        "pde", "finite-difference quote with a convergence table");
    add_market(pde);
    double x_min = -6.0, x_max = 6.0;
    int nx = 801, ntau = 0, levels = 3;
    std::string scheme = "crank-nicolson", surface_path, slice_path;
    pde->add_option("--xmin", x_min, "left log-moneyness bound")
        ->capture_default_str();
    pde->add_option("--xmax", x_max, "right log-moneyness bound")
        ->capture_default_str();
    pde->add_option("--nx", nx, "spatial nodes")->capture_default_str();
    pde->add_option("--ntau", ntau, "time steps (0: dtau ~ dx)")
        ->capture_default_str();
    pde->add_option("--scheme", scheme, "crank-nicolson or explicit")
        ->check(CLI::IsMember({"crank-nicolson", "explicit"}))
        ->capture_default_str();
    pde->add_option("--levels", levels, "convergence-table refinement levels")
        ->capture_default_str();
    pde->add_option("--surface", surface_path, "write (x,tau,u) CSV here");
    pde->add_option("--slice", slice_path, "write final (S,C) CSV here");

    CLI::App* quad = app.add_subcommand("quad", "Gaussian-kernel quadrature quote");
    add_market(quad);
    double qtol = 1e-9, qwidth = 10.0;
    quad->add_option("--tol", qtol, "absolute price tolerance")
        ->capture_default_str();
    quad->add_option("--width", qwidth, "truncation width in sigma*sqrt(tau)")
        ->capture_default_str();

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo quote");
    add_market(mc);
    std::uint64_t paths = 1'000'000, seed = 0;
    bool antithetic = false;
    int threads = 0;
    bool seed_given = false;
    mc->add_option("--paths", paths, "number of simulated paths")
        ->capture_default_str();
    mc->add_option("--seed", seed, "RNG seed (default: ESOPT_SEED or 0)")
        ->each([&](const std::string&) { seed_given = true; });
    mc->add_flag("--antithetic", antithetic, "antithetic path pairs");
    mc->add_option("--threads", threads, "worker threads (0: all cores)")
        ->capture_default_str();

    CLI::App* scen = app.add_subcommand("scenario", "price a trajectory document");
    std::string scen_file, scen_format = "csv", delta_mode = "reference", out_path;
    scen->add_option("--file", scen_file, "scenario JSON path, or - for stdin")
        ->required();
    scen->add_option("--format", scen_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    scen->add_option("--delta-mode", delta_mode,
                     "delta_H baseline: reference or step")
        ->check(CLI::IsMember({"reference", "step"}))
        ->capture_default_str();
    scen->add_option("--out", out_path, "write output here instead of stdout");

    CLI::App* hess = app.add_subcommand(
        "hessian", "classify the price extremum over selected coordinates");
    std::string hess_file, coords_spec;
    double h_alpha = 1.0, h_s0 = 100.0;
    hess->add_option("--file", hess_file,
                     "pb or scenario JSON path, or - for stdin")
        ->required();
    hess->add_option("--coords", coords_spec, "1-based coordinates, e.g. 1,2")
        ->required();
    hess->add_option("--alpha", h_alpha, "mapping alpha (when not in the file)")
        ->capture_default_str();
    hess->add_option("--s0", h_s0, "mapping s0 (when not in the file)")
        ->capture_default_str();

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }

        if (*price) {
            const esopt::MarketParams m(sigma, rate, strike, tau);
            emit(render_quote(esopt::closed_form_quote(spot, m), format), "");
            return 0;
        }

        if (*pde) {
            const esopt::MarketParams m(sigma, rate, strike, tau);
            const double dx = (x_max - x_min) / (nx - 1);
            if (ntau <= 0)
                ntau = std::max(1, static_cast<int>(std::llround(m.tau() / dx)));
            const esopt::FdScheme sch = scheme == "explicit"
                                            ? esopt::FdScheme::explicit_euler
                                            : esopt::FdScheme::crank_nicolson;
            const esopt::Grid grid(x_min, x_max, nx, ntau);
            const esopt::PriceQuote q = esopt::fd_quote(spot, m, grid, sch);

            const double cf = esopt::call_price(spot, m);
            nlohmann::json table = nlohmann::json::array();
            double prev_err = 0.0;
            for (int lv = levels - 1; lv >= 0; --lv) {
                const int nx_l = ((nx - 1) >> lv) + 1;
                const int ntau_l = std::max(1, ntau >> lv);
                if (nx_l < 3) continue;
                const esopt::Grid g_l(x_min, x_max, nx_l, ntau_l);
                const double c =
                    esopt::fd_solve(m, g_l, sch, esopt::OptionType::call).price(spot);
                const double err = std::abs(c - cf);
                nlohmann::json row{{"nx", nx_l},
                                   {"ntau", ntau_l},
                                   {"call", esopt::round12(c)},
                                   {"abs_error", esopt::round12(err)}};
                if (lv != levels - 1 && err > 0.0)
                    row["order"] = esopt::round12(std::log2(prev_err / err));
                prev_err = err;
                table.push_back(std::move(row));
            }

            if (!surface_path.empty() || !slice_path.empty()) {
                esopt::FdOptions opts;
                opts.store_surface = !surface_path.empty();
                const esopt::FdSolution sol =
                    esopt::fd_solve(m, grid, sch, esopt::OptionType::call, opts);
                if (!surface_path.empty()) {
                    std::ofstream f(surface_path);
                    if (!f) throw InputError("cannot open '" + surface_path + "'");
                    esopt::surface_csv(sol, f);
                }
                if (!slice_path.empty()) {
                    std::ofstream f(slice_path);
                    if (!f) throw InputError("cannot open '" + slice_path + "'");
                    esopt::slice_csv(sol, f);
                }
            }

            if (format == "csv") {
                std::cout << quote_csv(q) << "nx,ntau,call,abs_error,order\n";
                for (const auto& row : table) {
                    std::cout << row["nx"].get<int>() << ','
                              << row["ntau"].get<int>() << ','
                              << esopt::fmt12(row["call"].get<double>()) << ','
                              << esopt::fmt12(row["abs_error"].get<double>())
                              << ','
                              << (row.contains("order")
                                      ? esopt::fmt12(row["order"].get<double>())
                                      : "")
                              << "\n";
                }
            } else {
                nlohmann::json out{{"quote", esopt::quote_json(q)},
                                   {"convergence", std::move(table)}};
                std::cout << out.dump() << "\n";
            }
            return 0;
        }

        if (*quad) {
            const esopt::MarketParams m(sigma, rate, strike, tau);
            esopt::QuadratureConfig cfg;
            cfg.tol = qtol;
            cfg.width = qwidth;
            emit(render_quote(esopt::greens_function_price(spot, m, cfg), format),
                 "");
            return 0;
        }

        if (*mc) {
            const esopt::MarketParams m(sigma, rate, strike, tau);
            esopt::McConfig cfg;
            cfg.paths = paths;
            cfg.seed = seed_given ? seed : env_seed();
            cfg.antithetic = antithetic;
            cfg.workers = threads;
            const esopt::McResult r = esopt::mc_price(spot, m, cfg);
            if (format == "csv")
                emit(quote_csv(r.quote()), "");
            else
                emit(esopt::mc_json(r).dump() + "\n", "");
            return 0;
        }

        if (*scen) {
            const nlohmann::json j =
                esopt::parse_json_text(read_input(scen_file), "scenario");
            const esopt::ScenarioDocument doc = esopt::parse_scenario(j);
            const esopt::DeltaMode mode = delta_mode == "step"
                                              ? esopt::DeltaMode::step_over_step
                                              : esopt::DeltaMode::from_reference;
            const auto pts = esopt::run_scenario(doc.scenario, mode);
            if (scen_format == "json")
                emit(esopt::trajectory_json(pts).dump() + "\n", out_path);
            else
                emit(esopt::trajectory_csv(pts), out_path);
            return 0;
        }

        if (*hess) {
            const nlohmann::json j =
                esopt::parse_json_text(read_input(hess_file), "hessian input");
            const std::vector<int> coords = parse_coords(coords_spec);
            if (j.contains("mapping")) {
                const esopt::ScenarioDocument doc = esopt::parse_scenario(j);
                const auto rep = esopt::classify_extremum(doc.scenario.mapping,
                                                          doc.scenario.g, coords);
                std::cout << esopt::extremum_json(rep).dump() << "\n";
            } else {
                const esopt::PbDocument doc = esopt::parse_pb_document(j);
                const esopt::MappingParams map(h_s0, h_alpha);
                const auto rep = esopt::classify_extremum(map, doc.g, coords);
                std::cout << esopt::extremum_json(rep).dump() << "\n";
            }
            return 0;
        }
    } catch (const esopt::UnpriceableError& e) {
        std::cerr << "esopt: " << e.what() << "\n";
        return 3;
    } catch (const esopt::Error& e) {
        std::cerr << "esopt: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
