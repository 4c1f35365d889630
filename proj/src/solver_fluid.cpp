// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blowup/numerics.hpp"
#include "blowup/solver.hpp"

namespace blowup {

using std::numbers::pi;

RadialGrid::RadialGrid(std::size_t n, double rmax) : n_cells(n), r_max(rmax) {
    if (n < 8 || !(rmax > 0.0)) {
        throw std::invalid_argument("RadialGrid: need >= 8 cells and r_max > 0");
    }
    dr = rmax / static_cast<double>(n);
}

double RadialGrid::volume(std::size_t j) const {
    auto a = face(j);
    auto b = face(j + 1);
    return (b * b * b - a * a * a) / 3.0;
}

std::vector<double> RadialGrid::centers() const {
    std::vector<double> c(n_cells);
    for (std::size_t j = 0; j < n_cells; ++j) {
        c[j] = center(j);
    }
    return c;
}

namespace {

constexpr std::size_t kGhost = 2;

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// FluidSolver
// ---------------------------------------------------------------------------

struct FluidSolver::Work {
    std::vector<double> sn, su, sp, ss;          // limited slopes (per dr)
    std::vector<double> rd, rs, rtau, rent;      // interior rhs
    std::vector<double> d1, s1, tau1, ent1;      // Heun predictor
};

FluidSolver::FluidSolver(const RadialGrid& grid, const QuietBackground& bg)
    : grid_(grid), bg_(bg) {
    auto total = grid.n_cells + 2 * kGhost;
    d_.assign(total, bg.nbar);
    s_.assign(total, 0.0);
    tau_bar_ = bg.rhobar - bg.nbar;
    tau_.assign(total, tau_bar_);
    ent_.assign(total, bg.sbar);
    n_.assign(total, bg.nbar);
    u_.assign(total, 0.0);
    p_.assign(total, bg.pbar);
    rho_.assign(total, bg.rhobar);
    p_floor_ = 1e-14 * bg.pbar;
    n_floor_ = 1e-14 * bg.nbar;
}

void FluidSolver::set_initial_data(const std::function<double(double)>& n0,
                                   const std::function<double(double)>& s0,
                                   const std::function<double(double)>& u0) {
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        auto r = grid_.center(j);
        auto i = j + kGhost;
        auto n = n0(r);
        auto s = s0(r);
        auto u = u0(r);
        if (!(n > 0.0) || s < 0.0 || !std::isfinite(u)) {
            throw std::invalid_argument("FluidSolver: invalid initial profile value");
        }
        auto p = bg_.eos.pressure(n, s);
        auto rho = bg_.eos.energy_density(n, s);
        auto w = std::sqrt(1.0 + u * u);
        n_[i] = n;
        u_[i] = u;
        p_[i] = p;
        rho_[i] = rho;
        d_[i] = n * w;
        s_[i] = (rho + p) * w * u;
        tau_[i] = (rho + p) * w * w - p - d_[i];
        ent_[i] = s;
    }
    time_ = 0.0;
    recovery_failed_ = false;
}

void FluidSolver::set_initial_data(const DataFamilyParams& params) {
    auto nbar = params.nbar;
    auto sbar = params.sbar;
    set_initial_data(
        [&](double r) { return r < 1.0 ? nbar * params.psi(r) : nbar; },
        [&](double r) { return r < 1.0 ? sbar + params.phi(r) : sbar; },
        [&](double r) { return r < 1.0 ? params.phi(r) : 0.0; });
}

void FluidSolver::apply_boundary(std::vector<double>& dcol, std::vector<double>& scol,
                                 std::vector<double>& taucol,
                                 std::vector<double>& entcol) const {
    auto n = grid_.n_cells;
    // origin: even reflection for scalars, odd for the radial momentum
    dcol[1] = dcol[2];
    dcol[0] = dcol[3];
    taucol[1] = taucol[2];
    taucol[0] = taucol[3];
    entcol[1] = entcol[2];
    entcol[0] = entcol[3];
    scol[1] = -scol[2];
    scol[0] = -scol[3];
    // outer: fixed background
    for (auto i = n + kGhost; i < n + 2 * kGhost; ++i) {
        dcol[i] = bg_.nbar;
        scol[i] = 0.0;
        taucol[i] = tau_bar_;
        entcol[i] = bg_.sbar;
    }
}

std::array<double, 4> FluidSolver::primitives_from_conserved(double d, double s_r,
                                                             double tau,
                                                             const PolytropicEos& eos,
                                                             double p_guess,
                                                             double p_floor) {
    if (!(d > 0.0) || !std::isfinite(s_r) || !std::isfinite(tau)) {
        throw std::runtime_error("primitive recovery: inadmissible conserved state");
    }
    auto gm = eos.gamma;
    auto e_tot = tau + d;
    auto s_abs = std::abs(s_r);
    if (!(e_tot > 0.0)) {
        throw std::runtime_error("primitive recovery: nonpositive total energy");
    }

    auto eval = [&](double p) {
        auto v = s_abs / (e_tot + p);
        auto w2 = 1.0 / (1.0 - v * v);
        auto w = std::sqrt(w2);
        auto n = d / w;
        auto rho = (e_tot + p) / w2 - p;
        return (gm - 1.0) * (rho - n) - p;
    };

    // lower end of the admissible bracket keeps |v| < 1
    auto plo = p_floor;
    if (s_abs >= e_tot + plo) {
        plo = (s_abs - e_tot) * (1.0 + 1e-12) + 1e-300;
    }
    if (!std::isfinite(eval(plo))) {
        throw std::runtime_error("primitive recovery: no admissible bracket");
    }
    double p;
    if (eval(plo) <= 0.0) {
        p = plo;  // pressure at (or below) the floor
    } else {
        auto phi = std::max({p_guess, 2.0 * plo, (gm - 1.0) * e_tot});
        int guard = 0;
        while (eval(phi) > 0.0) {
            phi *= 4.0;
            if (++guard > 60) {
                throw std::runtime_error("primitive recovery: root not bracketed");
            }
        }
        // safeguarded Newton on the gamma-law consistency residual
        p = std::clamp(p_guess, plo, phi);
        auto lo = plo;
        auto hi = phi;
        for (int it = 0; it < 80; ++it) {
            auto v = s_abs / (e_tot + p);
            auto w2 = 1.0 / (1.0 - v * v);
            auto w = std::sqrt(w2);
            auto n = d / w;
            auto rho = (e_tot + p) / w2 - p;
            auto f = (gm - 1.0) * (rho - n) - p;
            if (f > 0.0) {
                lo = p;
            } else {
                hi = p;
            }
            auto dfdp = (gm - 1.0) * v * v * (1.0 - n / (rho + p)) - 1.0;
            auto step = f / dfdp;
            auto pn = p - step;
            if (!(pn > lo) || !(pn < hi)) {
                pn = 0.5 * (lo + hi);
            }
            if (std::abs(pn - p) <= 1e-13 * pn) {
                p = pn;
                break;
            }
            p = pn;
        }
    }

    auto v = s_abs / (e_tot + p);
    auto w2 = 1.0 / (1.0 - v * v);
    auto w = std::sqrt(w2);
    auto n = std::max(d / w, 0.0);
    auto rho = (e_tot + p) / w2 - p;
    auto u = std::copysign(v * w, s_r);
    if (!std::isfinite(u) || !std::isfinite(p) || !std::isfinite(rho)) {
        throw std::runtime_error("primitive recovery: non-finite result");
    }
    return {n, u, p, rho};
}

std::array<double, 4> FluidSolver::flux(double n, double u, double p, double rho) {
    auto w = std::sqrt(1.0 + u * u);
    auto v = u / w;
    auto d = n * w;
    auto s = (rho + p) * w * u;
    auto tau = (rho + p) * w * w - p - d;
    return {d * v, s * v, (tau + p) * v, p};
}

double FluidSolver::max_speed(double u, double eta) {
    auto v = std::abs(u) / std::sqrt(1.0 + u * u);
    return (v + eta) / (1.0 + v * eta);
}

bool FluidSolver::recover_all(Work&) {
    auto total = grid_.n_cells + 2 * kGhost;
    for (std::size_t i = 0; i < total; ++i) {
        try {
            auto prim = primitives_from_conserved(std::max(d_[i], n_floor_), s_[i],
                                                  tau_[i], bg_.eos, p_[i], p_floor_);
            n_[i] = std::max(prim[0], n_floor_);
            u_[i] = prim[1];
            p_[i] = std::max(prim[2], p_floor_);
            rho_[i] = prim[3];
        } catch (const std::runtime_error&) {
            recovery_failed_ = true;
            return false;
        }
    }
    return true;
}

bool FluidSolver::stage_rhs(Work& w, double& limited_frac) {
    auto nc = grid_.n_cells;
    auto total = nc + 2 * kGhost;
    apply_boundary(d_, s_, tau_, ent_);
    if (!recover_all(w)) {
        return false;
    }

    auto& sn = w.sn;
    auto& su = w.su;
    auto& sp = w.sp;
    auto& ss = w.ss;
    sn.assign(total, 0.0);
    su.assign(total, 0.0);
    sp.assign(total, 0.0);
    ss.assign(total, 0.0);

    std::size_t limited = 0;
    std::size_t active = 0;
    for (std::size_t i = 1; i + 1 < total; ++i) {
        sn[i] = minmod(n_[i] - n_[i - 1], n_[i + 1] - n_[i]);
        su[i] = minmod(u_[i] - u_[i - 1], u_[i + 1] - u_[i]);
        sp[i] = minmod(p_[i] - p_[i - 1], p_[i + 1] - p_[i]);
        ss[i] = minmod(ent_[i] - ent_[i - 1], ent_[i + 1] - ent_[i]);
        auto avg = 0.5 * (u_[i + 1] - u_[i - 1]);
        if (std::abs(avg) > 1e-14 * (1.0 + std::abs(u_[i]))) {
            ++active;
            if (std::abs(su[i]) < 0.5 * std::abs(avg)) {
                ++limited;
            }
        }
    }
    limited_frac = active > 0 ? static_cast<double>(limited) / active : 0.0;

    w.rd.assign(nc, 0.0);
    w.rs.assign(nc, 0.0);
    w.rtau.assign(nc, 0.0);
    w.rent.assign(nc, 0.0);

    // one pass over the faces bounding interior cells
    auto gm = bg_.eos.gamma;
    std::vector<double>& rd = w.rd;
    std::vector<double>& rs = w.rs;
    std::vector<double>& rt = w.rtau;
    std::vector<double>& re = w.rent;

    double f_d_prev = 0.0, f_s_prev = 0.0, f_tau_prev = 0.0, b_prev = 0.0;
    double s_face_prev = 0.0;
    for (std::size_t f = 0; f <= nc; ++f) {
        auto il = f + kGhost - 1;  // cell left of the face
        auto ir = f + kGhost;
        auto n_l = n_[il] + 0.5 * sn[il];
        auto u_l = u_[il] + 0.5 * su[il];
        auto p_l = std::max(p_[il] + 0.5 * sp[il], p_floor_);
        auto n_r = n_[ir] - 0.5 * sn[ir];
        auto u_r = u_[ir] - 0.5 * su[ir];
        auto p_r = std::max(p_[ir] - 0.5 * sp[ir], p_floor_);
        n_l = std::max(n_l, n_floor_);
        n_r = std::max(n_r, n_floor_);
        auto rho_l = n_l + p_l / (gm - 1.0);
        auto rho_r = n_r + p_r / (gm - 1.0);

        auto fl = flux(n_l, u_l, p_l, rho_l);
        auto fr = flux(n_r, u_r, p_r, rho_r);
        auto eta_l = std::sqrt(gm * p_l / (rho_l + p_l));
        auto eta_r = std::sqrt(gm * p_r / (rho_r + p_r));
        auto a = std::max(max_speed(u_l, eta_l), max_speed(u_r, eta_r));

        auto w_l = std::sqrt(1.0 + u_l * u_l);
        auto w_r = std::sqrt(1.0 + u_r * u_r);
        auto d_l = n_l * w_l;
        auto d_r = n_r * w_r;
        auto sr_l = (rho_l + p_l) * w_l * u_l;
        auto sr_r = (rho_r + p_r) * w_r * u_r;
        auto tau_l = (rho_l + p_l) * w_l * w_l - p_l - d_l;
        auto tau_r = (rho_r + p_r) * w_r * w_r - p_r - d_r;

        auto f_d = 0.5 * (fl[0] + fr[0]) - 0.5 * a * (d_r - d_l);
        auto f_s = 0.5 * (fl[1] + fr[1]) - 0.5 * a * (sr_r - sr_l);
        auto f_tau = 0.5 * (fl[2] + fr[2]) - 0.5 * a * (tau_r - tau_l);
        auto b = 0.5 * (p_l + p_r);

        // upwinded entropy face value for the tracer advection
        auto v_face = 0.5 * (u_l / w_l + u_r / w_r);
        double s_face;
        if (v_face > 0.0) {
            s_face = ent_[il] + 0.5 * ss[il];
        } else if (v_face < 0.0) {
            s_face = ent_[ir] - 0.5 * ss[ir];
        } else {
            s_face = 0.5 * (ent_[il] + 0.5 * ss[il] + ent_[ir] - 0.5 * ss[ir]);
        }

        if (f > 0) {
            auto j = f - 1;
            auto area_m = grid_.face(j) * grid_.face(j);
            auto area_p = grid_.face(j + 1) * grid_.face(j + 1);
            auto vol = grid_.volume(j);
            rd[j] = -(area_p * f_d - area_m * f_d_prev) / vol;
            rs[j] = -(area_p * f_s - area_m * f_s_prev) / vol -
                    (b - b_prev) / grid_.dr;
            rt[j] = -(area_p * f_tau - area_m * f_tau_prev) / vol;
            auto i = j + kGhost;
            auto v_c = u_[i] / std::sqrt(1.0 + u_[i] * u_[i]);
            re[j] = -v_c * (s_face - s_face_prev) / grid_.dr;
        }
        f_d_prev = f_d;
        f_s_prev = f_s;
        f_tau_prev = f_tau;
        b_prev = b;
        s_face_prev = s_face;
    }
    return true;
}

double FluidSolver::cfl_dt(double cfl) const {
    auto gm = bg_.eos.gamma;
    double speed = 0.0;
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        auto eta = std::sqrt(gm * p_[i] / (rho_[i] + p_[i]));
        speed = std::max(speed, max_speed(u_[i], eta));
    }
    if (!(speed > 0.0) || !std::isfinite(speed)) {
        throw std::runtime_error("cfl_dt: non-finite characteristic speed");
    }
    return cfl * grid_.dr / speed;
}

FluidSnapshot FluidSolver::snapshot() const {
    FluidSnapshot snap;
    snap.t = time_;
    snap.dr = grid_.dr;
    snap.r = grid_.centers();
    auto nc = grid_.n_cells;
    snap.n.resize(nc);
    snap.s.resize(nc);
    snap.u.resize(nc);
    snap.p.resize(nc);
    snap.rho.resize(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        auto i = j + kGhost;
        snap.n[j] = n_[i];
        snap.s[j] = ent_[i];
        snap.u[j] = u_[i];
        snap.p[j] = p_[i];
        snap.rho[j] = rho_[i];
    }
    return snap;
}

double FluidSolver::dod_deviation(double halo_cells) const {
    auto r_t = 1.0 + bg_.etabar * time_ + halo_cells * grid_.dr;
    double dev = 0.0;
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        if (grid_.center(j) < r_t) continue;
        auto i = j + kGhost;
        dev = std::max({dev, std::abs(n_[i] - bg_.nbar), std::abs(ent_[i] - bg_.sbar),
                        std::abs(u_[i])});
    }
    return dev;
}

double FluidSolver::max_gradient_u() const {
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        g = std::max(g, std::abs(u_[i + 1] - u_[i]) / grid_.dr);
    }
    return g;
}

double FluidSolver::max_gradient_p() const {
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        g = std::max(g, std::abs(p_[i + 1] - p_[i]) / grid_.dr);
    }
    return g;
}

DiagnosticsSeries FluidSolver::run(const SolverConfig& config) {
    DiagnosticsSeries series;
    Work w;
    auto nc = grid_.n_cells;

    double limited_frac = 0.0;
    auto sample = [&]() {
        auto snap = snapshot();
        series.t.push_back(time_);
        series.q.push_back(radial_momentum(snap));
        series.energy.push_back(total_energy(snap, bg_));
        std::vector<double> dm(nc);
        for (std::size_t j = 0; j < nc; ++j) {
            dm[j] = (d_[j + kGhost] - bg_.nbar) * snap.r[j] * snap.r[j];
        }
        series.mass.push_back(4.0 * pi * numerics::simpson(dm, grid_.dr));
        series.poisson_res.push_back(0.0);
        series.max_grad_u.push_back(max_gradient_u());
        series.max_grad_p.push_back(max_gradient_p());
        series.dod_dev.push_back(dod_deviation(config.dod_halo_cells));
        series.qprime.push_back(q_prime_integrand(snap, bg_));
        series.kinetic.push_back(kinetic_integral(snap));
        series.limiter_frac.push_back(limited_frac);
        double cm = 0.0, ce = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            cm += (d_[j + kGhost] - bg_.nbar) * grid_.volume(j);
            ce += (tau_[j + kGhost] - tau_bar_) * grid_.volume(j);
        }
        series.cons_mass.push_back(4.0 * pi * cm);
        series.cons_energy.push_back(4.0 * pi * ce);
    };

    sample();
    auto grad0 = series.max_grad_u.front();
    std::size_t step_count = 0;

    while (time_ < config.t_end) {
        if (1.0 + bg_.etabar * time_ + config.dod_halo_cells * grid_.dr >=
            grid_.r_max - config.domain_margin) {
            series.status = RunStatus::domain_exhausted;
            break;
        }
        double dt;
        try {
            dt = std::min(cfl_dt(config.cfl), config.t_end - time_);
        } catch (const std::runtime_error&) {
            recovery_failed_ = true;
            dt = 0.0;
        }
        if (recovery_failed_ || !(dt > 0.0)) {
            series.breakdown = true;
            series.breakdown_time = time_;
            series.breakdown_reason = "recovery";
            series.status = RunStatus::breakdown;
            if (series.t.back() < time_) {
                sample();
            }
            break;
        }

        // Heun predictor-corrector
        auto d0 = d_;
        auto s0 = s_;
        auto tau0 = tau_;
        auto ent0 = ent_;
        double lf1 = 0.0, lf2 = 0.0;
        bool ok = stage_rhs(w, lf1);
        if (ok) {
            for (std::size_t j = 0; j < nc; ++j) {
                auto i = j + kGhost;
                d_[i] += dt * w.rd[j];
                s_[i] += dt * w.rs[j];
                tau_[i] += dt * w.rtau[j];
                ent_[i] += dt * w.rent[j];
            }
            ok = stage_rhs(w, lf2);
        }
        if (ok) {
            for (std::size_t j = 0; j < nc; ++j) {
                auto i = j + kGhost;
                d_[i] = 0.5 * (d0[i] + d_[i] + dt * w.rd[j]);
                s_[i] = 0.5 * (s0[i] + s_[i] + dt * w.rs[j]);
                tau_[i] = 0.5 * (tau0[i] + tau_[i] + dt * w.rtau[j]);
                ent_[i] = 0.5 * (ent0[i] + ent_[i] + dt * w.rent[j]);
            }
            apply_boundary(d_, s_, tau_, ent_);
            ok = recover_all(w);
        }
        limited_frac = 0.5 * (lf1 + lf2);

        if (!ok) {
            // restore the pre-step state for the final sample
            d_ = d0;
            s_ = s0;
            tau_ = tau0;
            ent_ = ent0;
            apply_boundary(d_, s_, tau_, ent_);
            recover_all(w);
            series.breakdown = true;
            series.breakdown_time = time_;
            series.breakdown_reason = "recovery";
            series.status = RunStatus::breakdown;
            if (series.t.back() < time_) {
                sample();
            }
            break;
        }

        time_ += dt;
        ++step_count;
        auto is_sample = (step_count % config.sample_every == 0) ||
                         time_ >= config.t_end;
        if (is_sample) {
            sample();
            auto grad = series.max_grad_u.back();
            if (grad0 > 0.0 && grad > config.grad_factor * grad0) {
                series.breakdown = true;
                series.breakdown_time = time_;
                series.breakdown_reason = "gradient";
                series.status = RunStatus::breakdown;
                break;
            }
            if (limited_frac > config.limiter_saturation) {
                series.breakdown = true;
                series.breakdown_time = time_;
                series.breakdown_reason = "limiter";
                series.status = RunStatus::breakdown;
                break;
            }
        }
    }
    return series;
}

std::optional<std::pair<double, std::string>> detect_breakdown(
    const DiagnosticsSeries& series, const BreakdownThresholds& thresholds) {
    if (series.t.empty()) {
        return std::nullopt;
    }
    auto grad0 = series.max_grad_u.front();
    for (std::size_t k = 0; k < series.t.size(); ++k) {
        if (grad0 > 0.0 && series.max_grad_u[k] > thresholds.grad_factor * grad0) {
            return std::make_pair(series.t[k], std::string("gradient"));
        }
        if (k < series.limiter_frac.size() &&
            series.limiter_frac[k] > thresholds.limiter_saturation) {
            return std::make_pair(series.t[k], std::string("limiter"));
        }
    }
    if (series.breakdown) {
        return std::make_pair(series.breakdown_time, series.breakdown_reason);
    }
    return std::nullopt;
}

}  // namespace blowup
