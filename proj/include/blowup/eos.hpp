// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace blowup {

/// Polytropic equation of state for a relativistic perfect fluid,
///
///   rho(n, s) = n + A(s) n^gamma / (gamma - 1),   p(n, s) = A(s) n^gamma,
///
/// with entropy function A(s) = a0 * exp(s), positive and increasing on
/// s >= 0.  Number density and entropy are restricted to nonnegative
/// values; all maps are pure closed forms.
struct PolytropicEos {
    double gamma;
    double a0;

    PolytropicEos(double gamma_, double a0_);

    /// A(s) = a0 * exp(s)
    double entropy_coeff(double s) const;

    double pressure(double n, double s) const;
    double energy_density(double n, double s) const;
    double sound_speed_sq(double n, double s) const;
    double sound_speed(double n, double s) const;

    /// Inverse maps through the pressure, n = (p / A(s))^(1/gamma).
    double density_from_pressure(double p, double s) const;
    double energy_from_pressure(double p, double s) const;
    double sound_speed_from_pressure(double p, double s) const;

    /// Upper bound sqrt(gamma - 1) for the sound speed.
    double eta_max() const;
};

/// Outcome of the structural checks on the equation of state.  Each flag
/// reports one monotonicity / positivity property sampled on the supplied
/// (n, s) grids; `pass` is their conjunction.
struct AssumptionReport {
    bool drho_dn_positive = false;
    bool dp_dn_positive = false;
    bool drho_ds_nonneg = false;
    bool rho_nonincreasing_in_s = false;  // at fixed p
    bool eta_nondecreasing_in_p = false;  // at fixed s
    bool p_le_rho = false;
    bool eta_below_bound = false;
    bool eta_increasing_in_n = false;
    bool pass = false;
    double p_le_rho_min_margin = 0.0;  // min over grid of rho - p
};

/// Check the structural assumptions on `eos` by finite differences and
/// direct comparison over the tensor grid n_grid x s_grid (>= 3 points
/// per axis).
AssumptionReport verify_assumptions(const PolytropicEos& eos,
                                    std::span<const double> n_grid,
                                    std::span<const double> s_grid);

/// Same density-map checks for an arbitrary rho(n, s); the pressure is
/// derived from it via p = n drho/dn - rho.  Used to exercise the checks
/// against deliberately broken maps.
struct DensityMapReport {
    bool drho_dn_positive = false;
    bool dp_dn_positive = false;
    bool drho_ds_nonneg = false;
    bool p_le_rho = false;
    bool pass = false;
};
DensityMapReport verify_density_map(const std::function<double(double, double)>& rho,
                                    std::span<const double> n_grid,
                                    std::span<const double> s_grid);

}  // namespace blowup
