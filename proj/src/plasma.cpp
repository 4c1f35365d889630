// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/plasma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blowup/numerics.hpp"

namespace blowup {

using std::numbers::pi;

PlasmaBackground PlasmaBackground::make(const PolytropicEos& eos, double nbar,
                                        double sbar, double e_charge, double mass) {
    if (!(nbar > 0.0) || sbar < 0.0) {
        throw std::invalid_argument("PlasmaBackground: need nbar > 0, sbar >= 0");
    }
    if (!(e_charge > 0.0) || !(mass > 0.0)) {
        throw std::invalid_argument("PlasmaBackground: need e > 0, m > 0");
    }
    // fold the electron mass into the entropy scale and the charge
    PolytropicEos folded(eos.gamma, eos.a0 / mass);
    PlasmaBackground bg{folded, nbar, sbar, e_charge / std::sqrt(mass),
                        0.0, 0.0, 0.0};
    bg.pbar = folded.pressure(nbar, sbar);
    bg.etabar = std::sqrt(folded.gamma * folded.entropy_coeff(sbar) *
                          std::pow(nbar, folded.gamma - 1.0));
    bg.omega = std::sqrt(4.0 * pi * bg.charge * bg.charge * nbar);
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

double integral_r2(std::span<const double> f, std::span<const double> r, double dr,
                   double r_upper) {
    // Simpson over the nodes with r <= r_upper; the grids in use put
    // r_upper on a panel boundary so no partial panels arise.
    std::size_t m = 0;
    while (m < r.size() && r[m] <= r_upper + 1e-12) ++m;
    std::vector<double> g(m);
    for (std::size_t j = 0; j < m; ++j) {
        g[j] = f[j] * r[j] * r[j];
    }
    return numerics::simpson(g, dr);
}

}  // namespace

RadialPlasmaData RadialPlasmaData::make(std::vector<double> r,
                                        std::vector<double> nu0,
                                        std::vector<double> sigma0,
                                        std::vector<double> u0,
                                        const PlasmaBackground& bg) {
    check_uniform(r);
    auto m = r.size();
    if (nu0.size() != m || sigma0.size() != m || u0.size() != m) {
        throw std::invalid_argument("RadialPlasmaData: profile size mismatch");
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (sigma0[j] < 0.0) {
            throw std::invalid_argument("RadialPlasmaData: sigma0 must be >= 0");
        }
        if (!(bg.nbar + nu0[j] > 0.0)) {
            throw std::invalid_argument("RadialPlasmaData: total density must stay positive");
        }
        if (r[j] >= 1.0 && (nu0[j] != 0.0 || sigma0[j] != 0.0 || u0[j] != 0.0)) {
            throw std::invalid_argument(
                "RadialPlasmaData: profiles must vanish beyond the support");
        }
    }
    if (r[0] == 0.0 && u0[0] != 0.0) {
        throw std::invalid_argument("RadialPlasmaData: u0(0) must vanish");
    }
    RadialPlasmaData data;
    data.dr = r[1] - r[0];
    data.r = std::move(r);
    data.nu0 = std::move(nu0);
    data.sigma0 = std::move(sigma0);
    data.u0 = std::move(u0);
    return data;
}

std::function<double(double)> default_nu0(double delta) {
    return [delta](double r) {
        if (r >= 1.0) return 0.0;
        return delta * (0.6 - r) * (1.0 - r);
    };
}

std::function<double(double)> default_sigma0(double sigma) {
    return [sigma](double r) {
        if (r >= 1.0) return 0.0;
        auto w = 1.0 - r;
        return sigma * r * r * w * w;
    };
}

std::function<double(double)> default_u0_shape() {
    return [](double r) {
        if (r >= 1.0) return 0.0;
        auto w = 1.0 - r;
        return r * w * w;
    };
}

RadialPlasmaData make_plasma_data(const std::function<double(double)>& nu0,
                                  const std::function<double(double)>& sigma0,
                                  const std::function<double(double)>& u0,
                                  std::vector<double> grid,
                                  const PlasmaBackground& bg) {
    check_uniform(grid);
    auto m = grid.size();
    std::vector<double> vn(m), vs(m), vu(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto r = grid[j];
        if (r >= 1.0) {
            vn[j] = 0.0;
            vs[j] = 0.0;
            vu[j] = 0.0;
        } else {
            vn[j] = nu0(r);
            vs[j] = sigma0(r);
            vu[j] = u0(r);
        }
    }
    return RadialPlasmaData::make(std::move(grid), std::move(vn), std::move(vs),
                                  std::move(vu), bg);
}

std::vector<double> initial_field(std::span<const double> nu0,
                                  std::span<const double> r, double dr,
                                  double charge) {
    if (nu0.size() != r.size()) {
        throw std::invalid_argument("initial_field: size mismatch");
    }
    std::vector<double> integrand(nu0.size());
    for (std::size_t j = 0; j < nu0.size(); ++j) {
        integrand[j] = nu0[j] * r[j] * r[j];
    }
    auto cum = numerics::cumulative_integral(integrand, dr);
    std::vector<double> field(nu0.size());
    for (std::size_t j = 0; j < nu0.size(); ++j) {
        // the enclosed charge vanishes like r^3, so the field like r
        field[j] = (r[j] > 0.0) ? 4.0 * pi * charge * cum[j] / (r[j] * r[j]) : 0.0;
    }
    return field;
}

NeutralityCheck check_neutrality(std::span<const double> nu0,
                                 std::span<const double> r, double dr, double tol) {
    NeutralityCheck out;
    out.residual = integral_r2(nu0, r, dr, 1.0);
    out.ok = std::abs(out.residual) < tol;
    return out;
}

double plasma_frequency(const PlasmaBackground& bg) {
    return bg.omega;
}

PlasmaSnapshot snapshot_from_data(const RadialPlasmaData& data,
                                  const PlasmaBackground& bg, double lambda) {
    PlasmaSnapshot snap;
    snap.t = 0.0;
    snap.r = data.r;
    snap.dr = data.dr;
    auto m = data.r.size();
    snap.n.resize(m);
    snap.s.resize(m);
    snap.u.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        snap.n[j] = bg.nbar + data.nu0[j];
        snap.s[j] = bg.sbar + data.sigma0[j];
        snap.u[j] = lambda * data.u0[j];
    }
    snap.efield = initial_field(data.nu0, data.r, data.dr, bg.charge);
    return snap;
}

double momentum_q(const PlasmaSnapshot& snap) {
    std::vector<double> g(snap.r.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        g[j] = snap.r[j] * snap.n[j] * snap.u[j] * snap.r[j] * snap.r[j];
    }
    return numerics::simpson(g, snap.dr);
}

double energy_script(const PlasmaSnapshot& snap, const PlasmaBackground& bg) {
    auto g = bg.eos.gamma;
    auto abar = bg.eos.entropy_coeff(bg.sbar);
    auto base = abar * std::pow(bg.nbar, g);
    std::vector<double> f(snap.r.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        // clamp tracer rounding noise at the domain boundary
        auto a = bg.eos.entropy_coeff(std::max(snap.s[j], 0.0));
        auto n = std::max(snap.n[j], 0.0);
        auto pot = (a * std::pow(n, g) - base) / (g - 1.0);
        auto kin = 0.5 * n * snap.u[j] * snap.u[j];
        auto field = snap.efield[j] * snap.efield[j] / (8.0 * pi);
        f[j] = (kin + pot + field) * snap.r[j] * snap.r[j];
    }
    return numerics::simpson(f, snap.dr);
}

double mass_m(const PlasmaSnapshot& snap, const PlasmaBackground& bg) {
    std::vector<double> f(snap.r.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        f[j] = (snap.n[j] - bg.nbar) * snap.r[j] * snap.r[j];
    }
    return numerics::simpson(f, snap.dr);
}

double charge_moment4(const RadialPlasmaData& data) {
    std::vector<double> f(data.r.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        auto r2 = data.r[j] * data.r[j];
        f[j] = data.nu0[j] * r2 * r2;
    }
    return numerics::simpson(f, data.dr);
}

double g_volume_part(const PlasmaSnapshot& snap, const PlasmaBackground& bg) {
    std::vector<double> f(snap.r.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        auto n = std::max(snap.n[j], 0.0);
        auto p = bg.eos.pressure(n, std::max(snap.s[j], 0.0));
        auto v = n * snap.u[j] * snap.u[j] + 3.0 * (p - bg.pbar) +
                 snap.efield[j] * snap.efield[j] / (8.0 * pi);
        f[j] = v * snap.r[j] * snap.r[j];
    }
    return numerics::simpson(f, snap.dr);
}

double g_function(const PlasmaSnapshot& snap, double nu0_moment4,
                  const PlasmaBackground& bg) {
    // the moment enters with weight 1/2: integrating r E(0, r) r^2 by
    // parts against the enclosed charge gives -2 pi e int nu0 r^4 dr
    return g_volume_part(snap, bg) -
           0.5 * bg.omega * bg.omega * nu0_moment4;
}

std::pair<double, double> alpha_beta(double gamma) {
    if (!(gamma > 1.0)) {
        throw std::domain_error("alpha_beta: gamma must exceed 1");
    }
    auto three = 3.0 * (gamma - 1.0);
    return {std::min(1.0, three), std::max(2.0, three)};
}

std::vector<double> ode_response(double qp0, std::span<const double> g_series,
                                 double omega, double dt) {
    auto conv = numerics::convolve_sin(g_series, omega, dt);
    std::vector<double> ypp(g_series.size());
    for (std::size_t i = 0; i < ypp.size(); ++i) {
        auto t = static_cast<double>(i) * dt;
        ypp[i] = -omega * qp0 * std::sin(omega * t) + g_series[i] - omega * conv[i];
    }
    return ypp;
}

BlowupCertificate certify_blowup(const RadialPlasmaData& data,
                                 const PlasmaBackground& bg, double lambda) {
    auto neutral = check_neutrality(data.nu0, data.r, data.dr);
    if (!neutral.ok) {
        throw std::invalid_argument("certify_blowup: data violate neutrality");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("certify_blowup: lambda must be nonnegative");
    }
    auto snap = snapshot_from_data(data, bg, lambda);

    BlowupCertificate cert;
    cert.lambda = lambda;
    cert.q0 = momentum_q(snap);
    cert.energy = energy_script(snap, bg);
    cert.moment4 = charge_moment4(data);
    std::tie(cert.alpha, cert.beta) = alpha_beta(bg.eos.gamma);
    cert.omega = bg.omega;
    cert.t0 = cert.alpha / (16.0 * cert.beta * cert.omega);

    // momentum threshold from integrating Q' >= (3 alpha / (16 nbar R^5)) Q^2
    // over [0, T0] with R(t) = 1 + etabar t
    auto shrink = 1.0 + bg.etabar * cert.t0;
    auto shrink4 = shrink * shrink * shrink * shrink;
    cert.rhs = 3.0 * cert.alpha / (64.0 * bg.nbar * bg.etabar) * (1.0 - 1.0 / shrink4);

    cert.energy_large = cert.energy >= 1.0;
    cert.moment_small =
        cert.omega * cert.omega * std::abs(cert.moment4) <= 0.5 * cert.alpha * cert.energy;
    cert.frequency_small =
        cert.omega * std::sqrt(2.0 * bg.nbar / 3.0) <= cert.alpha / 8.0;
    cert.momentum_positive = cert.q0 > 0.0;
    cert.certified = cert.energy_large && cert.moment_small && cert.frequency_small &&
                     cert.momentum_positive && 1.0 / cert.q0 < cert.rhs;
    return cert;
}

std::optional<BlowupCertificate> scan_lambda(const RadialPlasmaData& data,
                                             const PlasmaBackground& bg,
                                             double lambda_max) {
    for (double lambda = 1.0; lambda <= lambda_max; lambda *= 2.0) {
        auto cert = certify_blowup(data, bg, lambda);
        if (cert.certified) {
            return cert;
        }
    }
    return std::nullopt;
}

}  // namespace blowup
