// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "blowup/eos.hpp"

namespace blowup {

/// Constant quiet state (nbar, sbar, u = 0) filling space outside the
/// perturbation, with its derived thermodynamic quantities.  Requires
/// gamma < 2 so the background sound speed stays below 1.
struct QuietBackground {
    PolytropicEos eos;
    double nbar;
    double sbar;
    double pbar;
    double rhobar;
    double etabar;   // background sound speed
    double zetabar;  // (rhobar + pbar) * etabar

    static QuietBackground make(const PolytropicEos& eos, double nbar, double sbar);
};

/// Tabulated radial initial data (n0, s0, u0) on a strictly increasing
/// uniform grid; u0 is the radial component of the spatial four-velocity.
/// Background-valued for r >= 1, u0(0) = 0.
struct RadialFluidData {
    std::vector<double> r;
    std::vector<double> n0;
    std::vector<double> s0;
    std::vector<double> u0;
    double dr = 0.0;

    static RadialFluidData make(std::vector<double> r, std::vector<double> n0,
                                std::vector<double> s0, std::vector<double> u0,
                                const QuietBackground& bg,
                                double support_radius = 1.0);
};

/// Radial shape functions for the perturbation family
///   n0 = nbar * psi(r),  u0 = phi(r),  s0 = sbar + phi(r),
/// with phi vanishing at 0 and beyond 1, psi == 1 beyond 1 and with
/// vanishing r^2-moment of psi - 1 on [0, 1].
struct DataFamilyParams {
    std::function<double(double)> phi;
    std::function<double(double)> psi;
    double nbar = 0.0;
    double sbar = 0.0;
};

/// phi(r) = kappa * r (1 - r)^2 on [0, 1), zero beyond.
std::function<double(double)> default_phi(double kappa);

/// psi(r) = 1 + mu (1 - 7/2 r^2)(1 - r)^2 on [0, 1), one beyond; the 7/2
/// makes the r^2-moment of psi - 1 vanish exactly.  Requires mu < ~15.5
/// so psi stays positive.
std::function<double(double)> default_psi(double mu);

/// Uniform node grid 0 = r_0 < ... < r_m = r_max.
std::vector<double> uniform_nodes(std::size_t n_cells, double r_max);

RadialFluidData make_initial_data(const DataFamilyParams& params,
                                  std::vector<double> grid,
                                  const QuietBackground& bg);

/// Radial profile sampled at one instant together with its derived
/// thermodynamic fields; the common argument of all fluid functionals.
struct FluidSnapshot {
    double t = 0.0;
    std::vector<double> r;
    std::vector<double> n;
    std::vector<double> s;
    std::vector<double> u;
    std::vector<double> p;
    std::vector<double> rho;
    double dr = 0.0;
};

FluidSnapshot snapshot_from_data(const RadialFluidData& data,
                                 const QuietBackground& bg);

/// Total perturbation energy 4 pi int [(rho + p) u^2 + rho - rhobar] r^2 dr.
double total_energy(const FluidSnapshot& snap, const QuietBackground& bg);

/// Total radial momentum 4 pi int r u sqrt(1 + u^2) (rho + p) r^2 dr.
double radial_momentum(const FluidSnapshot& snap);

/// 4 pi int [(rho + p) u^2 + 3 (p - pbar)] r^2 dr, the exact time
/// derivative of the radial momentum for smooth solutions.
double q_prime_integrand(const FluidSnapshot& snap, const QuietBackground& bg);

/// 4 pi int (rho + p) u^2 r^2 dr, the kinetic part bounding q' from below.
double kinetic_integral(const FluidSnapshot& snap);

/// I(R) = int_1^R dr / (E r^2 + (4 pi / 3) rhobar r^5); R may be infinity.
double bound_integral(double energy, double rhobar, double r_upper);

/// f(y) = ( int_1^inf dr / (r^2 (r^3 + y)) )^{-1}; f(0) = 4, concave,
/// increasing, below the affine majorant 16 y / 7 + 4.
double f_bound(double y);

/// Evaluated largeness conditions for the fluid data.
struct ConditionReport {
    double energy = 0.0;        // E
    double q0 = 0.0;            // Q(0)
    double etabar = 0.0;
    bool d1 = false;            // etabar < 1/3
    bool d2 = false;            // E > 0
    bool d3 = false;            // s0 >= sbar pointwise
    bool d4 = false;            // Q(0) above the integral threshold
    double d4_threshold = 0.0;
    double qe_threshold = 0.0;  // sufficient (affine) threshold
    bool all() const { return d1 && d2 && d3 && d4; }
};

ConditionReport check_conditions(const RadialFluidData& data,
                                 const QuietBackground& bg,
                                 double support_radius = 1.0);

/// Smallest T with 1/Q(0) <= (1 - 3 etabar^2) / (2 etabar) * I(1 + etabar T):
/// an upper bound for the life span of a C1 solution.  Empty when the
/// threshold is not strictly exceeded (no finite bound).
std::optional<double> breakdown_time_bound(const ConditionReport& report,
                                           const QuietBackground& bg);

/// Largest nbar on the geometric scan grid {1, 1/2, 1/4, ..., >= 1e-12}
/// for which all four conditions hold for the given shapes.
struct NbarScanResult {
    double nbar = 0.0;
    ConditionReport report;
    std::optional<double> t_star;
};
std::optional<NbarScanResult> find_blowup_nbar(
    const std::function<double(double)>& phi,
    const std::function<double(double)>& psi, double sbar,
    const PolytropicEos& eos, std::size_t n_cells = 2048, double r_max = 2.0);

/// Symmetric-hyperbolic coefficients of the linearization at the quiet
/// state, unknowns ordered (p, u^0, u^1, u^2, u^3, s).
struct HyperbolicMatrices {
    std::array<double, 36> a0{};
    std::array<std::array<double, 36>, 3> ai{};
};

HyperbolicMatrices background_hyperbolic_matrices(const QuietBackground& bg);

/// Generalized characteristic speeds of A^i xi_i against A^0 for a unit
/// direction xi, ascending.
std::array<double, 6> characteristic_speeds(const HyperbolicMatrices& m,
                                            const std::array<double, 3>& xi);

/// 4x4 energy tensor (rho + p) u^mu u^nu + p g^{mu nu} from the spatial
/// velocity, with u^0 = sqrt(1 + |u|^2) and g = diag(-1, 1, 1, 1).
/// Row-major storage.
std::array<double, 16> stress_energy(const std::array<double, 3>& u_spatial,
                                     double rho, double p);

}  // namespace blowup
