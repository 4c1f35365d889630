// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "blowup/plasma.hpp"
#include "blowup/relfluid.hpp"
#include "blowup/solver.hpp"

namespace blowup {

using nlohmann::ordered_json;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
}

std::string report_path(const ExperimentConfig& cfg, const std::string& out_dir) {
    return (std::filesystem::path(out_dir) / cfg.output.report).string();
}

std::string series_path(const ExperimentConfig& cfg, const std::string& out_dir) {
    return (std::filesystem::path(out_dir) / cfg.output.series).string();
}

ordered_json condition_json(const ConditionReport& rep,
                            const std::optional<double>& t_star) {
    ordered_json j;
    j["E"] = rep.energy;
    j["Q0"] = rep.q0;
    j["etabar"] = rep.etabar;
    j["d1"] = rep.d1;
    j["d2"] = rep.d2;
    j["d3"] = rep.d3;
    j["d4"] = rep.d4;
    j["d4_threshold"] = rep.d4_threshold;
    j["qe_threshold"] = rep.qe_threshold;
    if (t_star) {
        j["T_star"] = *t_star;
    } else {
        j["T_star"] = nullptr;
    }
    return j;
}

ordered_json certificate_json(const BlowupCertificate& cert) {
    ordered_json j;
    j["Q0"] = cert.q0;
    j["energy"] = cert.energy;
    j["moment4"] = cert.moment4;
    j["alpha"] = cert.alpha;
    j["beta"] = cert.beta;
    j["omega"] = cert.omega;
    j["T0"] = cert.t0;
    j["rhs"] = cert.rhs;
    j["verdict"] = cert.certified ? "certified" : "not-certified";
    j["lambda"] = cert.lambda;
    return j;
}

QuietBackground fluid_background(const ExperimentConfig& cfg) {
    PolytropicEos eos(cfg.eos.gamma, cfg.eos.a0);
    return QuietBackground::make(eos, cfg.background.nbar, cfg.background.sbar);
}

PlasmaBackground plasma_background(const ExperimentConfig& cfg) {
    PolytropicEos eos(cfg.eos.gamma, cfg.eos.a0);
    return PlasmaBackground::make(eos, cfg.plasma.nbar, cfg.plasma.sbar, cfg.plasma.e,
                                  cfg.plasma.m);
}

RadialPlasmaData plasma_data_on(const ExperimentConfig& cfg,
                                const PlasmaBackground& bg, std::vector<double> grid) {
    return make_plasma_data(default_nu0(cfg.shapes.delta),
                            default_sigma0(cfg.shapes.sigma), default_u0_shape(),
                            std::move(grid), bg);
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
    SolverConfig sc;
    sc.cfl = cfg.grid.cfl;
    sc.t_end = cfg.grid.t_end;
    sc.sample_every = cfg.grid.sample_every;
    return sc;
}

int run_eos_check(const ExperimentConfig& cfg, const std::string& out_dir,
                  bool quiet) {
    PolytropicEos eos(cfg.eos.gamma, cfg.eos.a0);
    std::vector<double> n_grid, s_grid;
    for (int k = 0; k <= 24; ++k) {
        n_grid.push_back(0.01 * std::pow(10.0 / 0.01, k / 24.0));
    }
    for (int k = 0; k <= 8; ++k) {
        s_grid.push_back(2.0 * k / 8.0);
    }
    auto rep = verify_assumptions(eos, n_grid, s_grid);
    ordered_json j;
    j["gamma"] = eos.gamma;
    j["a0"] = eos.a0;
    j["drho_dn_positive"] = rep.drho_dn_positive;
    j["dp_dn_positive"] = rep.dp_dn_positive;
    j["drho_ds_nonneg"] = rep.drho_ds_nonneg;
    j["rho_nonincreasing_in_s"] = rep.rho_nonincreasing_in_s;
    j["eta_nondecreasing_in_p"] = rep.eta_nondecreasing_in_p;
    j["p_le_rho"] = rep.p_le_rho;
    j["eta_below_bound"] = rep.eta_below_bound;
    j["eta_increasing_in_n"] = rep.eta_increasing_in_n;
    j["pass"] = rep.pass;
    write_text(report_path(cfg, out_dir), j.dump(2) + "\n");
    if (!quiet) {
        std::cout << "eos-check: " << (rep.pass ? "pass" : "fail") << "\n";
    }
    return rep.pass ? 0 : 2;
}

int run_fluid_certify(const ExperimentConfig& cfg, const std::string& out_dir,
                      bool quiet) {
    auto bg = fluid_background(cfg);
    DataFamilyParams params{default_phi(cfg.shapes.kappa), default_psi(cfg.shapes.mu),
                            bg.nbar, bg.sbar};
    auto data = make_initial_data(params, uniform_nodes(cfg.grid.n, cfg.grid.r_max),
                                  bg);
    auto rep = check_conditions(data, bg);
    auto t_star = breakdown_time_bound(rep, bg);
    write_text(report_path(cfg, out_dir), condition_json(rep, t_star).dump(2) + "\n");
    if (!quiet) {
        std::cout << "fluid-certify: " << (rep.all() ? "certified" : "not-certified")
                  << "\n";
    }
    return rep.all() && t_star ? 0 : 2;
}

int run_scan_nbar(const ExperimentConfig& cfg, const std::string& out_dir,
                  bool quiet) {
    PolytropicEos eos(cfg.eos.gamma, cfg.eos.a0);
    auto scan = find_blowup_nbar(default_phi(cfg.shapes.kappa),
                                 default_psi(cfg.shapes.mu), cfg.background.sbar, eos,
                                 cfg.grid.n, cfg.grid.r_max);
    ordered_json j;
    if (scan) {
        j["nbar"] = scan->nbar;
        j["conditions"] = condition_json(scan->report, scan->t_star);
    } else {
        j["nbar"] = nullptr;
    }
    write_text(report_path(cfg, out_dir), j.dump(2) + "\n");
    if (!quiet) {
        if (scan) {
            std::cout << "scan-nbar: nbar = " << scan->nbar << "\n";
        } else {
            std::cout << "scan-nbar: exhausted without a certificate\n";
        }
    }
    return scan ? 0 : 2;
}

void append_series(DiagnosticsSeries& all, const DiagnosticsSeries& part) {
    // drop the duplicated sample at the segment boundary
    std::size_t k0 = all.t.empty() ? 0 : 1;
    auto append = [&](std::vector<double>& dst, const std::vector<double>& src) {
        dst.insert(dst.end(), src.begin() + static_cast<long>(std::min(k0, src.size())),
                   src.end());
    };
    append(all.t, part.t);
    append(all.q, part.q);
    append(all.energy, part.energy);
    append(all.mass, part.mass);
    append(all.poisson_res, part.poisson_res);
    append(all.max_grad_u, part.max_grad_u);
    append(all.max_grad_p, part.max_grad_p);
    append(all.dod_dev, part.dod_dev);
    append(all.qprime, part.qprime);
    append(all.kinetic, part.kinetic);
    append(all.g_series, part.g_series);
    append(all.moment_re, part.moment_re);
    append(all.limiter_frac, part.limiter_frac);
    append(all.cons_mass, part.cons_mass);
    append(all.cons_energy, part.cons_energy);
    all.status = part.status;
    all.breakdown = part.breakdown;
    all.breakdown_time = part.breakdown_time;
    all.breakdown_reason = part.breakdown_reason;
    all.moment4 = part.moment4;
}

std::string snapshot_path(const std::string& out_dir, double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "profile_t%.6g.csv", t);
    return (std::filesystem::path(out_dir) / buf).string();
}

template <class Solver>
DiagnosticsSeries run_with_snapshots(Solver& solver, SolverConfig sc,
                                     std::vector<double> snap_times,
                                     const std::string& out_dir) {
    std::sort(snap_times.begin(), snap_times.end());
    auto t_final = sc.t_end;
    DiagnosticsSeries all;
    for (auto ts : snap_times) {
        if (!(ts > solver.time()) || ts >= t_final) continue;
        sc.t_end = ts;
        append_series(all, solver.run(sc));
        write_profile_csv(solver.snapshot(), snapshot_path(out_dir, solver.time()));
        if (all.breakdown || all.status == RunStatus::domain_exhausted) {
            return all;
        }
    }
    sc.t_end = t_final;
    append_series(all, solver.run(sc));
    return all;
}

int run_fluid_simulate(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool quiet) {
    auto bg = fluid_background(cfg);
    RadialGrid grid(cfg.grid.n, cfg.grid.r_max);
    FluidSolver solver(grid, bg);
    solver.set_initial_data(DataFamilyParams{default_phi(cfg.shapes.kappa),
                                             default_psi(cfg.shapes.mu), bg.nbar,
                                             bg.sbar});
    auto series = run_with_snapshots(solver, solver_config(cfg),
                                     cfg.output.snapshot_times, out_dir);
    write_series_csv(series, series_path(cfg, out_dir));
    ordered_json j;
    j["breakdown"] = series.breakdown;
    j["breakdown_time"] = series.breakdown ? ordered_json(series.breakdown_time)
                                           : ordered_json(nullptr);
    j["breakdown_reason"] = series.breakdown_reason;
    j["samples"] = series.t.size();
    write_text(report_path(cfg, out_dir), j.dump(2) + "\n");
    if (!quiet) {
        std::cout << "fluid-simulate: " << series.t.size() << " samples"
                  << (series.breakdown ? ", breakdown" : "") << "\n";
    }
    return 0;
}

int run_plasma_certify(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool quiet) {
    auto bg = plasma_background(cfg);
    auto data = plasma_data_on(cfg, bg, uniform_nodes(cfg.grid.n, cfg.grid.r_max));
    auto cert = certify_blowup(data, bg, cfg.shapes.lambda);
    write_text(report_path(cfg, out_dir), certificate_json(cert).dump(2) + "\n");
    if (!quiet) {
        std::cout << "plasma-certify: "
                  << (cert.certified ? "certified" : "not-certified") << "\n";
    }
    return cert.certified ? 0 : 2;
}

int run_scan_lambda(const ExperimentConfig& cfg, const std::string& out_dir,
                    bool quiet) {
    auto bg = plasma_background(cfg);
    auto data = plasma_data_on(cfg, bg, uniform_nodes(cfg.grid.n, cfg.grid.r_max));
    auto cert = scan_lambda(data, bg);
    ordered_json j;
    if (cert) {
        j["lambda_star"] = cert->lambda;
        j["certificate"] = certificate_json(*cert);
    } else {
        j["lambda_star"] = nullptr;
    }
    write_text(report_path(cfg, out_dir), j.dump(2) + "\n");
    if (!quiet) {
        if (cert) {
            std::cout << "scan-lambda: lambda* = " << cert->lambda << "\n";
        } else {
            std::cout << "scan-lambda: exhausted without a certificate\n";
        }
    }
    return cert ? 0 : 2;
}

int run_plasma_simulate(const ExperimentConfig& cfg, const std::string& out_dir,
                        bool quiet) {
    auto bg = plasma_background(cfg);
    RadialGrid grid(cfg.grid.n, cfg.grid.r_max);
    PlasmaSolver solver(grid, bg);
    auto data = plasma_data_on(cfg, bg, grid.centers());
    solver.set_initial_data(data, cfg.shapes.lambda);
    auto series = run_with_snapshots(solver, solver_config(cfg),
                                     cfg.output.snapshot_times, out_dir);
    write_series_csv(series, series_path(cfg, out_dir));
    ordered_json j;
    j["breakdown"] = series.breakdown;
    j["breakdown_time"] = series.breakdown ? ordered_json(series.breakdown_time)
                                           : ordered_json(nullptr);
    j["breakdown_reason"] = series.breakdown_reason;
    j["samples"] = series.t.size();
    write_text(report_path(cfg, out_dir), j.dump(2) + "\n");
    if (!quiet) {
        std::cout << "plasma-simulate: " << series.t.size() << " samples"
                  << (series.breakdown ? ", breakdown" : "") << "\n";
    }
    return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                   bool quiet) {
    std::filesystem::create_directories(out_dir);
    switch (config.mode) {
        case Mode::eos_check: return run_eos_check(config, out_dir, quiet);
        case Mode::fluid_certify: return run_fluid_certify(config, out_dir, quiet);
        case Mode::fluid_simulate: return run_fluid_simulate(config, out_dir, quiet);
        case Mode::plasma_certify: return run_plasma_certify(config, out_dir, quiet);
        case Mode::plasma_simulate: return run_plasma_simulate(config, out_dir, quiet);
        case Mode::scan_nbar: return run_scan_nbar(config, out_dir, quiet);
        case Mode::scan_lambda: return run_scan_lambda(config, out_dir, quiet);
    }
    throw std::logic_error("run_experiment: unhandled mode");
}

}  // namespace blowup
