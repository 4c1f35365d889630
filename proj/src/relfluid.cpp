// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/relfluid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "blowup/numerics.hpp"

namespace blowup {

using std::numbers::pi;

QuietBackground QuietBackground::make(const PolytropicEos& eos, double nbar,
                                      double sbar) {
    if (!(eos.gamma < 2.0)) {
        throw std::invalid_argument("QuietBackground: fluid requires gamma < 2");
    }
    if (!(nbar > 0.0) || sbar < 0.0) {
        throw std::invalid_argument("QuietBackground: need nbar > 0, sbar >= 0");
    }
    QuietBackground bg{eos, nbar, sbar, 0.0, 0.0, 0.0, 0.0};
    bg.pbar = eos.pressure(nbar, sbar);
    bg.rhobar = eos.energy_density(nbar, sbar);
    bg.etabar = eos.sound_speed(nbar, sbar);
    bg.zetabar = (bg.rhobar + bg.pbar) * bg.etabar;
    return bg;
}

namespace {

void check_uniform(const std::vector<double>& r) {
    if (r.size() < 4) {
        throw std::invalid_argument("radial grid: need at least 4 nodes");
    }
    auto dr = r[1] - r[0];
    if (!(dr > 0.0)) {
        throw std::invalid_argument("radial grid: must be strictly increasing");
    }
    for (std::size_t j = 1; j < r.size(); ++j) {
        if (std::abs(r[j] - r[j - 1] - dr) > 1e-12 * (1.0 + std::abs(r[j]))) {
            throw std::invalid_argument("radial grid: must be uniform");
        }
    }
}

}  // namespace

RadialFluidData RadialFluidData::make(std::vector<double> r, std::vector<double> n0,
                                      std::vector<double> s0, std::vector<double> u0,
                                      const QuietBackground& bg,
                                      double support_radius) {
    check_uniform(r);
    auto m = r.size();
    if (n0.size() != m || s0.size() != m || u0.size() != m) {
        throw std::invalid_argument("RadialFluidData: profile size mismatch");
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!(n0[j] > 0.0) || s0[j] < 0.0) {
            throw std::invalid_argument("RadialFluidData: need n0 > 0 and s0 >= 0");
        }
        if (r[j] >= support_radius &&
            (n0[j] != bg.nbar || s0[j] != bg.sbar || u0[j] != 0.0)) {
            throw std::invalid_argument(
                "RadialFluidData: profiles must be background beyond the support");
        }
    }
    if (r[0] == 0.0 && u0[0] != 0.0) {
        throw std::invalid_argument("RadialFluidData: u0(0) must vanish");
    }
    RadialFluidData data;
    data.dr = r[1] - r[0];
    data.r = std::move(r);
    data.n0 = std::move(n0);
    data.s0 = std::move(s0);
    data.u0 = std::move(u0);
    return data;
}

std::function<double(double)> default_phi(double kappa) {
    return [kappa](double r) {
        if (r >= 1.0 || r <= 0.0) return 0.0;
        auto w = 1.0 - r;
        return kappa * r * w * w;
    };
}

std::function<double(double)> default_psi(double mu) {
    return [mu](double r) {
        if (r >= 1.0) return 1.0;
        auto w = 1.0 - r;
        return 1.0 + mu * (1.0 - 3.5 * r * r) * w * w;
    };
}

std::vector<double> uniform_nodes(std::size_t n_cells, double r_max) {
    if (n_cells < 4 || !(r_max > 0.0)) {
        throw std::invalid_argument("uniform_nodes: bad grid request");
    }
    std::vector<double> r(n_cells + 1);
    auto dr = r_max / static_cast<double>(n_cells);
    for (std::size_t j = 0; j <= n_cells; ++j) {
        r[j] = dr * static_cast<double>(j);
    }
    return r;
}

RadialFluidData make_initial_data(const DataFamilyParams& params,
                                  std::vector<double> grid,
                                  const QuietBackground& bg) {
    check_uniform(grid);
    auto dr = grid[1] - grid[0];

    // the r^2-moment of psi - 1 on [0, 1] must vanish
    std::vector<double> probe;
    const std::size_t m_probe = 4096;
    probe.reserve(m_probe + 1);
    for (std::size_t j = 0; j <= m_probe; ++j) {
        auto r = static_cast<double>(j) / static_cast<double>(m_probe);
        probe.push_back((params.psi(r) - 1.0) * r * r);
    }
    auto moment = numerics::simpson(probe, 1.0 / static_cast<double>(m_probe));
    if (std::abs(moment) > 1e-8) {
        throw std::invalid_argument(
            "make_initial_data: psi violates the zero-moment constraint");
    }

    auto m = grid.size();
    std::vector<double> n0(m), s0(m), u0(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto r = grid[j];
        if (r >= 1.0) {
            n0[j] = bg.nbar;
            s0[j] = bg.sbar;
            u0[j] = 0.0;
        } else {
            auto phi = params.phi(r);
            n0[j] = bg.nbar * params.psi(r);
            s0[j] = bg.sbar + phi;
            u0[j] = phi;
        }
    }
    (void)dr;
    return RadialFluidData::make(std::move(grid), std::move(n0), std::move(s0),
                                 std::move(u0), bg);
}

FluidSnapshot snapshot_from_data(const RadialFluidData& data,
                                 const QuietBackground& bg) {
    FluidSnapshot snap;
    snap.t = 0.0;
    snap.r = data.r;
    snap.n = data.n0;
    snap.s = data.s0;
    snap.u = data.u0;
    snap.dr = data.dr;
    auto m = data.r.size();
    snap.p.resize(m);
    snap.rho.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        snap.p[j] = bg.eos.pressure(data.n0[j], data.s0[j]);
        snap.rho[j] = bg.eos.energy_density(data.n0[j], data.s0[j]);
    }
    return snap;
}

namespace {

double weighted_r2(const FluidSnapshot& snap,
                   const std::function<double(std::size_t)>& f) {
    std::vector<double> g(snap.r.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        auto v = f(j);
        if (!std::isfinite(v)) {
            throw std::runtime_error("fluid functional: non-finite profile value");
        }
        g[j] = v * snap.r[j] * snap.r[j];
    }
    return numerics::simpson(g, snap.dr);
}

}  // namespace

double total_energy(const FluidSnapshot& snap, const QuietBackground& bg) {
    return 4.0 * pi * weighted_r2(snap, [&](std::size_t j) {
               auto u2 = snap.u[j] * snap.u[j];
               return (snap.rho[j] + snap.p[j]) * u2 + snap.rho[j] - bg.rhobar;
           });
}

double radial_momentum(const FluidSnapshot& snap) {
    return 4.0 * pi * weighted_r2(snap, [&](std::size_t j) {
               auto u = snap.u[j];
               return snap.r[j] * u * std::sqrt(1.0 + u * u) *
                      (snap.rho[j] + snap.p[j]);
           });
}

double q_prime_integrand(const FluidSnapshot& snap, const QuietBackground& bg) {
    return 4.0 * pi * weighted_r2(snap, [&](std::size_t j) {
               auto u2 = snap.u[j] * snap.u[j];
               return (snap.rho[j] + snap.p[j]) * u2 + 3.0 * (snap.p[j] - bg.pbar);
           });
}

double kinetic_integral(const FluidSnapshot& snap) {
    return 4.0 * pi * weighted_r2(snap, [&](std::size_t j) {
               auto u2 = snap.u[j] * snap.u[j];
               return (snap.rho[j] + snap.p[j]) * u2;
           });
}

double bound_integral(double energy, double rhobar, double r_upper) {
    if (energy < 0.0 || rhobar < 0.0 || (energy == 0.0 && rhobar == 0.0)) {
        throw std::domain_error("bound_integral: divergent integrand");
    }
    auto b = 4.0 * pi / 3.0 * rhobar;
    if (std::isinf(r_upper)) {
        return numerics::quad_improper(energy, b);
    }
    if (!(r_upper > 1.0)) {
        return 0.0;
    }
    return numerics::quad_improper_between(energy, b, 1.0, r_upper);
}

double f_bound(double y) {
    if (y < 0.0) {
        throw std::domain_error("f_bound: y must be nonnegative");
    }
    return 1.0 / numerics::improper_kernel(y);
}

ConditionReport check_conditions(const RadialFluidData& data,
                                 const QuietBackground& bg,
                                 double support_radius) {
    auto snap = snapshot_from_data(data, bg);
    ConditionReport rep;
    rep.energy = total_energy(snap, bg);
    rep.q0 = radial_momentum(snap);
    rep.etabar = bg.etabar;
    rep.d1 = bg.etabar < 1.0 / 3.0;
    rep.d2 = rep.energy > 0.0;

    rep.d3 = true;
    for (std::size_t j = 0; j < data.r.size(); ++j) {
        if (data.r[j] <= support_radius && data.s0[j] < bg.sbar - 1e-12) {
            rep.d3 = false;
        }
    }

    auto one_minus = 1.0 - 3.0 * bg.etabar * bg.etabar;
    if (one_minus <= 0.0 || rep.energy < 0.0) {
        rep.d4 = false;
        rep.d4_threshold = std::numeric_limits<double>::infinity();
        rep.qe_threshold = std::numeric_limits<double>::infinity();
        return rep;
    }
    // general support radius R0: substitute r -> R0 r in the integral
    auto r0 = support_radius;
    auto b = 4.0 * pi / 3.0 * bg.rhobar;
    auto integral = numerics::quad_improper(rep.energy * r0, b * r0 * r0 * r0 * r0);
    rep.d4_threshold = 2.0 * bg.etabar / one_minus / integral;
    rep.qe_threshold = 32.0 * bg.etabar / (7.0 * one_minus) *
                       (rep.energy + 7.0 * pi / 3.0 * bg.rhobar * r0 * r0 * r0) * r0;
    rep.d4 = rep.q0 > rep.d4_threshold;
    return rep;
}

std::optional<double> breakdown_time_bound(const ConditionReport& report,
                                           const QuietBackground& bg) {
    if (!report.all() || !(report.q0 > 0.0)) {
        return std::nullopt;
    }
    auto one_minus = 1.0 - 3.0 * bg.etabar * bg.etabar;
    auto target = 1.0 / report.q0;
    auto lhs = [&](double t_candidate) {
        auto r_of_t = 1.0 + bg.etabar * t_candidate;
        return one_minus / (2.0 * bg.etabar) *
                   bound_integral(report.energy, bg.rhobar, r_of_t) -
               target;
    };
    auto limit = one_minus / (2.0 * bg.etabar) *
                 bound_integral(report.energy, bg.rhobar,
                                std::numeric_limits<double>::infinity());
    if (!(limit > target)) {
        return std::nullopt;  // at or below the threshold: no finite bound
    }
    double hi = 1.0;
    while (lhs(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e15) {
            return std::nullopt;
        }
    }
    return numerics::root_bracketed(lhs, 0.0, hi, 1e-8);
}

std::optional<NbarScanResult> find_blowup_nbar(
    const std::function<double(double)>& phi,
    const std::function<double(double)>& psi, double sbar,
    const PolytropicEos& eos, std::size_t n_cells, double r_max) {
    auto grid = uniform_nodes(n_cells, r_max);
    for (double nbar = 1.0; nbar >= 1e-12; nbar *= 0.5) {
        auto bg = QuietBackground::make(eos, nbar, sbar);
        auto data = make_initial_data({phi, psi, nbar, sbar}, grid, bg);
        auto rep = check_conditions(data, bg);
        if (rep.all()) {
            NbarScanResult res;
            res.nbar = nbar;
            res.report = rep;
            res.t_star = breakdown_time_bound(rep, bg);
            return res;
        }
    }
    return std::nullopt;
}

HyperbolicMatrices background_hyperbolic_matrices(const QuietBackground& bg) {
    HyperbolicMatrices m;
    auto zeta = bg.zetabar;
    auto at = [](std::array<double, 36>& a, int i, int j) -> double& {
        return a[i * 6 + j];
    };
    at(m.a0, 0, 0) = 1.0 / zeta;
    at(m.a0, 1, 1) = zeta;
    at(m.a0, 2, 2) = zeta;
    at(m.a0, 3, 3) = zeta;
    at(m.a0, 4, 4) = zeta;
    at(m.a0, 5, 5) = 1.0;
    // spatial matrices: single coupling eta * e_i between the pressure row
    // and the i-th spatial velocity component
    for (int i = 0; i < 3; ++i) {
        at(m.ai[i], 0, 2 + i) = bg.etabar;
        at(m.ai[i], 2 + i, 0) = bg.etabar;
    }
    return m;
}

std::array<double, 6> characteristic_speeds(const HyperbolicMatrices& m,
                                            const std::array<double, 3>& xi) {
    // A0 is diagonal positive, so the generalized problem reduces to the
    // ordinary symmetric one for D^{-1/2} (A^i xi_i) D^{-1/2}
    std::array<double, 6> dinv_sqrt{};
    for (int k = 0; k < 6; ++k) {
        dinv_sqrt[k] = 1.0 / std::sqrt(m.a0[k * 6 + k]);
    }
    std::vector<double> b(36, 0.0);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            double axi = 0.0;
            for (int d = 0; d < 3; ++d) {
                axi += xi[d] * m.ai[d][i * 6 + j];
            }
            b[i * 6 + j] = dinv_sqrt[i] * axi * dinv_sqrt[j];
        }
    }
    auto eig = numerics::sym_eigenvalues(std::move(b), 6);
    std::array<double, 6> speeds{};
    for (int k = 0; k < 6; ++k) {
        speeds[k] = eig[k];
    }
    return speeds;
}

std::array<double, 16> stress_energy(const std::array<double, 3>& u_spatial,
                                     double rho, double p) {
    if (p > rho || p < 0.0) {
        throw std::domain_error("stress_energy: need 0 <= p <= rho");
    }
    auto uu = u_spatial[0] * u_spatial[0] + u_spatial[1] * u_spatial[1] +
              u_spatial[2] * u_spatial[2];
    std::array<double, 4> u{std::sqrt(1.0 + uu), u_spatial[0], u_spatial[1],
                            u_spatial[2]};
    std::array<double, 4> g{-1.0, 1.0, 1.0, 1.0};
    std::array<double, 16> t{};
    for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 4; ++c) {
            t[a * 4 + c] = (rho + p) * u[a] * u[c];
            if (a == c) {
                t[a * 4 + c] += p * g[a];
            }
        }
    }
    return t;
}

}  // namespace blowup
