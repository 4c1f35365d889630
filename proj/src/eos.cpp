// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/eos.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blowup/numerics.hpp"

namespace blowup {

namespace {

void require_domain(double n, double s) {
    if (n < 0.0 || s < 0.0 || !std::isfinite(n) || !std::isfinite(s)) {
        throw std::domain_error("eos: n and s must be finite and nonnegative");
    }
}

double fd_step(double x) {
    return std::max(1e-5, 1e-5 * x);
}

}  // namespace

PolytropicEos::PolytropicEos(double gamma_, double a0_) : gamma(gamma_), a0(a0_) {
    if (!(gamma > 1.0)) {
        throw std::invalid_argument("PolytropicEos: gamma must exceed 1");
    }
    if (!(a0 > 0.0)) {
        throw std::invalid_argument("PolytropicEos: a0 must be positive");
    }
}

double PolytropicEos::entropy_coeff(double s) const {
    return a0 * std::exp(s);
}

double PolytropicEos::pressure(double n, double s) const {
    require_domain(n, s);
    return entropy_coeff(s) * std::pow(n, gamma);
}

double PolytropicEos::energy_density(double n, double s) const {
    require_domain(n, s);
    return n + entropy_coeff(s) * std::pow(n, gamma) / (gamma - 1.0);
}

double PolytropicEos::sound_speed_sq(double n, double s) const {
    require_domain(n, s);
    if (n == 0.0) return 0.0;
    auto q = gamma * entropy_coeff(s) * std::pow(n, gamma - 1.0);
    return (gamma - 1.0) * q / (gamma - 1.0 + q);
}

double PolytropicEos::sound_speed(double n, double s) const {
    return std::sqrt(sound_speed_sq(n, s));
}

double PolytropicEos::density_from_pressure(double p, double s) const {
    require_domain(p, s);
    return std::pow(p / entropy_coeff(s), 1.0 / gamma);
}

double PolytropicEos::energy_from_pressure(double p, double s) const {
    require_domain(p, s);
    return p / (gamma - 1.0) +
           std::pow(entropy_coeff(s), -1.0 / gamma) * std::pow(p, 1.0 / gamma);
}

double PolytropicEos::sound_speed_from_pressure(double p, double s) const {
    require_domain(p, s);
    if (p == 0.0) return 0.0;
    auto q = gamma * std::pow(entropy_coeff(s), 1.0 / gamma) *
             std::pow(p, (gamma - 1.0) / gamma);
    return std::sqrt((gamma - 1.0) * q / (gamma - 1.0 + q));
}

double PolytropicEos::eta_max() const {
    return std::sqrt(gamma - 1.0);
}

AssumptionReport verify_assumptions(const PolytropicEos& eos,
                                    std::span<const double> n_grid,
                                    std::span<const double> s_grid) {
    if (n_grid.size() < 3 || s_grid.size() < 3) {
        throw std::invalid_argument("verify_assumptions: need >= 3 points per axis");
    }
    AssumptionReport rep;
    rep.drho_dn_positive = true;
    rep.dp_dn_positive = true;
    rep.drho_ds_nonneg = true;
    rep.rho_nonincreasing_in_s = true;
    rep.eta_nondecreasing_in_p = true;
    rep.p_le_rho = true;
    rep.eta_below_bound = true;
    rep.eta_increasing_in_n = true;
    rep.p_le_rho_min_margin = std::numeric_limits<double>::infinity();

    const double slack = 1e-12;
    for (auto s : s_grid) {
        double prev_eta_n = -1.0;
        for (auto n : n_grid) {
            auto hn = fd_step(n);
            auto nn = std::max(n, 2.0 * hn);  // keep the stencil in n >= 0
            auto drho_dn = numerics::derivative_c4(
                [&](double x) { return eos.energy_density(x, s); }, nn, hn);
            auto dp_dn = numerics::derivative_c4(
                [&](double x) { return eos.pressure(x, s); }, nn, hn);
            rep.drho_dn_positive &= drho_dn > 0.0;
            rep.dp_dn_positive &= dp_dn > 0.0;

            // d rho / d s at fixed n; A extends smoothly below s = 0 so the
            // centered stencil is usable at the boundary of the domain.
            auto hs = fd_step(s);
            auto a_eff = [&](double x) {
                return n + eos.a0 * std::exp(x) * std::pow(n, eos.gamma) /
                               (eos.gamma - 1.0);
            };
            auto drho_ds = numerics::derivative_c4(a_eff, s, hs);
            if (n > 0.0 && s > 0.0) {
                rep.drho_ds_nonneg &= drho_ds > 0.0;
            } else {
                rep.drho_ds_nonneg &= drho_ds >= -slack;
            }

            auto p = eos.pressure(n, s);
            auto rho = eos.energy_density(n, s);
            rep.p_le_rho &= p <= rho + slack;
            rep.p_le_rho_min_margin = std::min(rep.p_le_rho_min_margin, rho - p);

            auto eta = eos.sound_speed(n, s);
            rep.eta_below_bound &= eta < eos.eta_max();
            if (n > 0.0) {
                rep.eta_increasing_in_n &= eta > prev_eta_n;
            }
            prev_eta_n = eta;
        }
    }

    // monotonicity in the (p, s) chart, compared pairwise along each axis
    for (auto s : s_grid) {
        for (auto n : n_grid) {
            if (n <= 0.0) continue;
            auto p = eos.pressure(n, s);
            auto hs = fd_step(s);
            auto rho_hi = eos.energy_from_pressure(p, s + hs);
            auto rho_lo = eos.energy_from_pressure(p, s);
            rep.rho_nonincreasing_in_s &= rho_hi <= rho_lo * (1.0 + slack);
        }
    }
    for (auto s : s_grid) {
        double prev = -1.0;
        for (auto n : n_grid) {
            if (n <= 0.0) continue;
            auto p = eos.pressure(n, s);
            auto eta = eos.sound_speed_from_pressure(p, s);
            rep.eta_nondecreasing_in_p &= eta >= prev * (1.0 - slack);
            prev = eta;
        }
    }

    rep.pass = rep.drho_dn_positive && rep.dp_dn_positive && rep.drho_ds_nonneg &&
               rep.rho_nonincreasing_in_s && rep.eta_nondecreasing_in_p &&
               rep.p_le_rho && rep.eta_below_bound && rep.eta_increasing_in_n;
    return rep;
}

DensityMapReport verify_density_map(const std::function<double(double, double)>& rho,
                                    std::span<const double> n_grid,
                                    std::span<const double> s_grid) {
    if (n_grid.size() < 3 || s_grid.size() < 3) {
        throw std::invalid_argument("verify_density_map: need >= 3 points per axis");
    }
    DensityMapReport rep;
    rep.drho_dn_positive = true;
    rep.dp_dn_positive = true;
    rep.drho_ds_nonneg = true;
    rep.p_le_rho = true;
    const double slack = 1e-12;
    auto pressure_of = [&](double n, double s) {
        auto h = fd_step(n);
        auto d = numerics::derivative_c4([&](double x) { return rho(x, s); }, n, h);
        return n * d - rho(n, s);
    };
    for (auto s : s_grid) {
        for (auto n : n_grid) {
            auto h = fd_step(n);
            auto nn = std::max(n, 2.0 * h);
            auto drho_dn = numerics::derivative_c4(
                [&](double x) { return rho(x, s); }, nn, h);
            auto dp_dn = numerics::derivative_c4(
                [&](double x) { return pressure_of(x, s); }, nn, h);
            auto drho_ds = numerics::derivative_c4(
                [&](double x) { return rho(nn, x); }, s, fd_step(s));
            rep.drho_dn_positive &= drho_dn > 0.0;
            rep.dp_dn_positive &= dp_dn > 0.0;
            rep.drho_ds_nonneg &= drho_ds >= -slack;
            rep.p_le_rho &= pressure_of(nn, s) <= rho(nn, s) + slack;
        }
    }
    rep.pass = rep.drho_dn_positive && rep.dp_dn_positive && rep.drho_ds_nonneg &&
               rep.p_le_rho;
    return rep;
}

}  // namespace blowup
