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

namespace {

constexpr std::size_t kGhost = 2;

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

}  // namespace

struct PlasmaSolver::Work {
    std::vector<double> sn, su, se, ss;
    std::vector<double> rn, rm, re, rs;
    std::vector<double> u;  // velocity per cell (state layout)
};

PlasmaSolver::PlasmaSolver(const RadialGrid& grid, const PlasmaBackground& bg)
    : grid_(grid), bg_(bg) {
    auto total = grid.n_cells + 2 * kGhost;
    n_.assign(total, bg.nbar);
    m_.assign(total, 0.0);
    e_.assign(total, 0.0);
    s_.assign(total, bg.sbar);
    n_floor_ = 1e-14 * bg.nbar;
}

void PlasmaSolver::set_initial_data(const RadialPlasmaData& data, double lambda) {
    if (data.r.size() != grid_.n_cells ||
        std::abs(data.r[0] - grid_.center(0)) > 1e-12 ||
        std::abs(data.dr - grid_.dr) > 1e-12) {
        throw std::invalid_argument(
            "PlasmaSolver: data must be tabulated on the solver cell centers");
    }
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        n_[i] = bg_.nbar + data.nu0[j];
        s_[i] = bg_.sbar + data.sigma0[j];
        m_[i] = n_[i] * lambda * data.u0[j];
    }
    auto field = initial_field(data.nu0, data.r, data.dr, bg_.charge);
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        e_[j + kGhost] = field[j];
    }
    moment4_ = charge_moment4(data);
    time_ = 0.0;
}

void PlasmaSolver::set_initial_data(const std::function<double(double)>& nu0,
                                    const std::function<double(double)>& sigma0,
                                    const std::function<double(double)>& u0) {
    auto data = make_plasma_data(nu0, sigma0, u0, grid_.centers(), bg_);
    set_initial_data(data, 1.0);
}

void PlasmaSolver::apply_boundary(std::vector<double>& ncol, std::vector<double>& mcol,
                                  std::vector<double>& ecol,
                                  std::vector<double>& scol) const {
    auto n = grid_.n_cells;
    ncol[1] = ncol[2];
    ncol[0] = ncol[3];
    scol[1] = scol[2];
    scol[0] = scol[3];
    mcol[1] = -mcol[2];
    mcol[0] = -mcol[3];
    ecol[1] = -ecol[2];
    ecol[0] = -ecol[3];
    for (auto i = n + kGhost; i < n + 2 * kGhost; ++i) {
        ncol[i] = bg_.nbar;
        mcol[i] = 0.0;
        ecol[i] = 0.0;
        scol[i] = bg_.sbar;
    }
}

void PlasmaSolver::stage_rhs(Work& w, double& limited_frac) {
    auto nc = grid_.n_cells;
    auto total = nc + 2 * kGhost;
    apply_boundary(n_, m_, e_, s_);

    auto& u = w.u;
    u.assign(total, 0.0);
    for (std::size_t i = 0; i < total; ++i) {
        u[i] = m_[i] / std::max(n_[i], n_floor_);
    }

    auto& sn = w.sn;
    auto& su = w.su;
    auto& se = w.se;
    auto& ss = w.ss;
    sn.assign(total, 0.0);
    su.assign(total, 0.0);
    se.assign(total, 0.0);
    ss.assign(total, 0.0);
    std::size_t limited = 0, active = 0;
    for (std::size_t i = 1; i + 1 < total; ++i) {
        sn[i] = minmod(n_[i] - n_[i - 1], n_[i + 1] - n_[i]);
        su[i] = minmod(u[i] - u[i - 1], u[i + 1] - u[i]);
        se[i] = minmod(e_[i] - e_[i - 1], e_[i + 1] - e_[i]);
        ss[i] = minmod(s_[i] - s_[i - 1], s_[i + 1] - s_[i]);
        auto avg = 0.5 * (u[i + 1] - u[i - 1]);
        if (std::abs(avg) > 1e-14 * (1.0 + std::abs(u[i]))) {
            ++active;
            if (std::abs(su[i]) < 0.5 * std::abs(avg)) ++limited;
        }
    }
    limited_frac = active > 0 ? static_cast<double>(limited) / active : 0.0;

    w.rn.assign(nc, 0.0);
    w.rm.assign(nc, 0.0);
    w.re.assign(nc, 0.0);
    w.rs.assign(nc, 0.0);

    auto gm = bg_.eos.gamma;
    double fn_prev = 0.0, fm_prev = 0.0, b_prev = 0.0, sface_prev = 0.0;
    for (std::size_t f = 0; f <= nc; ++f) {
        auto il = f + kGhost - 1;
        auto ir = f + kGhost;
        auto n_l = std::max(n_[il] + 0.5 * sn[il], n_floor_);
        auto n_r = std::max(n_[ir] - 0.5 * sn[ir], n_floor_);
        auto u_l = u[il] + 0.5 * su[il];
        auto u_r = u[ir] - 0.5 * su[ir];
        auto e_l = e_[il] + 0.5 * se[il];
        auto e_r = e_[ir] - 0.5 * se[ir];
        auto s_l = std::max(s_[il] + 0.5 * ss[il], 0.0);
        auto s_r = std::max(s_[ir] - 0.5 * ss[ir], 0.0);
        auto p_l = bg_.eos.pressure(n_l, s_l);
        auto p_r = bg_.eos.pressure(n_r, s_r);

        auto eta_l = std::sqrt(gm * p_l / n_l);
        auto eta_r = std::sqrt(gm * p_r / n_r);
        auto a = std::max(std::abs(u_l) + eta_l, std::abs(u_r) + eta_r);

        auto fn = 0.5 * (n_l * u_l + n_r * u_r) - 0.5 * a * (n_r - n_l);
        auto adv_l = n_l * u_l * u_l - e_l * e_l / (4.0 * pi);
        auto adv_r = n_r * u_r * u_r - e_r * e_r / (4.0 * pi);
        auto fm = 0.5 * (adv_l + adv_r) - 0.5 * a * (n_r * u_r - n_l * u_l);
        auto b = 0.5 * (p_l + e_l * e_l / (8.0 * pi) + p_r + e_r * e_r / (8.0 * pi));

        auto v_face = 0.5 * (u_l + u_r);
        double s_face;
        if (v_face > 0.0) {
            s_face = s_[il] + 0.5 * ss[il];
        } else if (v_face < 0.0) {
            s_face = s_[ir] - 0.5 * ss[ir];
        } else {
            s_face = 0.5 * (s_[il] + 0.5 * ss[il] + s_[ir] - 0.5 * ss[ir]);
        }

        if (f > 0) {
            auto j = f - 1;
            auto i = j + kGhost;
            auto area_m = grid_.face(j) * grid_.face(j);
            auto area_p = grid_.face(j + 1) * grid_.face(j + 1);
            auto vol = grid_.volume(j);
            w.rn[j] = -(area_p * fn - area_m * fn_prev) / vol;
            w.rm[j] = -(area_p * fm - area_m * fm_prev) / vol -
                      (b - b_prev) / grid_.dr + bg_.charge * bg_.nbar * e_[i];
            w.re[j] = -4.0 * pi * bg_.charge * m_[i];
            w.rs[j] = -u[i] * (s_face - sface_prev) / grid_.dr;
        }
        fn_prev = fn;
        fm_prev = fm;
        b_prev = b;
        sface_prev = s_face;
    }
}

double PlasmaSolver::cfl_dt(double cfl) const {
    auto gm = bg_.eos.gamma;
    double speed = 0.0;
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        auto n = std::max(n_[i], n_floor_);
        auto p = bg_.eos.pressure(n, std::max(s_[i], 0.0));
        speed = std::max(speed, std::abs(m_[i] / n) + std::sqrt(gm * p / n));
    }
    if (!(speed > 0.0) || !std::isfinite(speed)) {
        throw std::runtime_error("cfl_dt: non-finite characteristic speed");
    }
    return cfl * grid_.dr / speed;
}

PlasmaSnapshot PlasmaSolver::snapshot() const {
    PlasmaSnapshot snap;
    snap.t = time_;
    snap.dr = grid_.dr;
    snap.r = grid_.centers();
    auto nc = grid_.n_cells;
    snap.n.resize(nc);
    snap.s.resize(nc);
    snap.u.resize(nc);
    snap.efield.resize(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        auto i = j + kGhost;
        snap.n[j] = n_[i];
        snap.s[j] = s_[i];
        snap.u[j] = m_[i] / std::max(n_[i], n_floor_);
        snap.efield[j] = e_[i];
    }
    return snap;
}

double PlasmaSolver::poisson_residual() const {
    // centered discrete divergence against the charge excess, relative to
    // the current perturbation scale
    double res = 0.0;
    double scale = 1e-8 * bg_.nbar;
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        scale = std::max(scale, std::abs(n_[i] - bg_.nbar));
    }
    for (std::size_t j = 1; j + 1 < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        auto r = grid_.center(j);
        auto rp = grid_.center(j + 1);
        auto rm = grid_.center(j - 1);
        auto div = (rp * rp * e_[i + 1] - rm * rm * e_[i - 1]) / (2.0 * grid_.dr * r * r);
        auto rhs = 4.0 * pi * bg_.charge * (n_[i] - bg_.nbar);
        res = std::max(res, std::abs(div - rhs));
    }
    return res / (4.0 * pi * bg_.charge * scale);
}

double PlasmaSolver::dod_deviation(double halo_cells) const {
    auto r_t = 1.0 + bg_.etabar * time_ + halo_cells * grid_.dr;
    double dev = 0.0;
    for (std::size_t j = 0; j < grid_.n_cells; ++j) {
        if (grid_.center(j) < r_t) continue;
        auto i = j + kGhost;
        dev = std::max({dev, std::abs(n_[i] - bg_.nbar), std::abs(s_[i] - bg_.sbar),
                        std::abs(m_[i] / std::max(n_[i], n_floor_)),
                        std::abs(e_[i])});
    }
    return dev;
}

double PlasmaSolver::max_gradient_u() const {
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        auto ua = m_[i] / std::max(n_[i], n_floor_);
        auto ub = m_[i + 1] / std::max(n_[i + 1], n_floor_);
        g = std::max(g, std::abs(ub - ua) / grid_.dr);
    }
    return g;
}

double PlasmaSolver::max_gradient_p() const {
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < grid_.n_cells; ++j) {
        auto i = j + kGhost;
        auto pa = bg_.eos.pressure(std::max(n_[i], n_floor_), std::max(s_[i], 0.0));
        auto pb = bg_.eos.pressure(std::max(n_[i + 1], n_floor_),
                                   std::max(s_[i + 1], 0.0));
        g = std::max(g, std::abs(pb - pa) / grid_.dr);
    }
    return g;
}

DiagnosticsSeries PlasmaSolver::run(const SolverConfig& config) {
    DiagnosticsSeries series;
    series.moment4 = moment4_;
    Work w;
    auto nc = grid_.n_cells;

    double limited_frac = 0.0;
    auto sample = [&]() {
        auto snap = snapshot();
        series.t.push_back(time_);
        series.q.push_back(momentum_q(snap));
        series.energy.push_back(energy_script(snap, bg_));
        series.mass.push_back(mass_m(snap, bg_));
        series.poisson_res.push_back(poisson_residual());
        series.max_grad_u.push_back(max_gradient_u());
        series.max_grad_p.push_back(max_gradient_p());
        series.dod_dev.push_back(dod_deviation(config.dod_halo_cells));
        series.g_series.push_back(g_function(snap, moment4_, bg_));
        std::vector<double> re_prof(nc);
        for (std::size_t j = 0; j < nc; ++j) {
            re_prof[j] = snap.r[j] * snap.efield[j] * snap.r[j] * snap.r[j];
        }
        series.moment_re.push_back(numerics::simpson(re_prof, grid_.dr));
        series.limiter_frac.push_back(limited_frac);
        double cm = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            cm += (n_[j + kGhost] - bg_.nbar) * grid_.volume(j);
        }
        series.cons_mass.push_back(cm);
        series.cons_energy.push_back(series.energy.back());
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
        double dt = std::min(cfl_dt(config.cfl), config.t_end - time_);
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            series.breakdown = true;
            series.breakdown_time = time_;
            series.breakdown_reason = "recovery";
            series.status = RunStatus::breakdown;
            break;
        }

        auto n0 = n_;
        auto m0 = m_;
        auto e0 = e_;
        auto s0 = s_;
        double lf1 = 0.0, lf2 = 0.0;
        stage_rhs(w, lf1);
        for (std::size_t j = 0; j < nc; ++j) {
            auto i = j + kGhost;
            n_[i] += dt * w.rn[j];
            m_[i] += dt * w.rm[j];
            e_[i] += dt * w.re[j];
            s_[i] += dt * w.rs[j];
        }
        stage_rhs(w, lf2);
        bool finite = true;
        for (std::size_t j = 0; j < nc; ++j) {
            auto i = j + kGhost;
            n_[i] = 0.5 * (n0[i] + n_[i] + dt * w.rn[j]);
            m_[i] = 0.5 * (m0[i] + m_[i] + dt * w.rm[j]);
            e_[i] = 0.5 * (e0[i] + e_[i] + dt * w.re[j]);
            s_[i] = 0.5 * (s0[i] + s_[i] + dt * w.rs[j]);
            finite &= std::isfinite(n_[i]) && std::isfinite(m_[i]) &&
                      std::isfinite(e_[i]) && std::isfinite(s_[i]);
            finite &= n_[i] > 0.0;
        }
        apply_boundary(n_, m_, e_, s_);
        limited_frac = 0.5 * (lf1 + lf2);

        if (!finite) {
            n_ = n0;
            m_ = m0;
            e_ = e0;
            s_ = s0;
            apply_boundary(n_, m_, e_, s_);
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

}  // namespace blowup
