// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blowup/eos.hpp"

namespace blowup {

/// Electron-fluid background over a static neutralizing ion density nbar.
/// Physical charge e and mass m are folded into equivalent unit-mass
/// parameters (A -> A/m, e -> e/sqrt(m)), under which the equations keep
/// their stated form; the electric field inside the core carries the same
/// rescaling.  etabar and omega are invariant under the fold.
struct PlasmaBackground {
    PolytropicEos eos;   // entropy coefficient already folded by 1/m
    double nbar;
    double sbar;
    double charge;       // folded e
    double pbar;
    double etabar;       // sqrt(gamma A(sbar) nbar^(gamma-1))
    double omega;        // plasma frequency sqrt(4 pi e^2 nbar / m)

    static PlasmaBackground make(const PolytropicEos& eos, double nbar, double sbar,
                                 double e_charge = 1.0, double mass = 1.0);
};

/// Compactly supported perturbation profiles (nu0, sigma0, u0) on a
/// uniform radial grid; all vanish beyond r = 1, u0(0) = 0, sigma0 >= 0,
/// and nu0 carries zero net charge on [0, 1].
struct RadialPlasmaData {
    std::vector<double> r;
    std::vector<double> nu0;
    std::vector<double> sigma0;
    std::vector<double> u0;
    double dr = 0.0;

    static RadialPlasmaData make(std::vector<double> r, std::vector<double> nu0,
                                 std::vector<double> sigma0, std::vector<double> u0,
                                 const PlasmaBackground& bg);
};

/// nu0(r) = delta (3/5 - r)(1 - r) on [0, 1); the 3/5 zeroes the charge
/// moment exactly.
std::function<double(double)> default_nu0(double delta);
/// sigma0(r) = sigma r^2 (1 - r)^2 on [0, 1).
std::function<double(double)> default_sigma0(double sigma);
/// u0(r) = r (1 - r)^2 on [0, 1); amplitudes enter as a separate factor.
std::function<double(double)> default_u0_shape();

RadialPlasmaData make_plasma_data(const std::function<double(double)>& nu0,
                                  const std::function<double(double)>& sigma0,
                                  const std::function<double(double)>& u0,
                                  std::vector<double> grid,
                                  const PlasmaBackground& bg);

/// Radial electric field E(r) = (4 pi e / r^2) int_0^r nu0 r'^2 dr'
/// consistent with the initial charge distribution; zero at the origin
/// and, for neutral data, zero beyond the support.
std::vector<double> initial_field(std::span<const double> nu0,
                                  std::span<const double> r, double dr,
                                  double charge);

struct NeutralityCheck {
    bool ok = false;
    double residual = 0.0;
};
NeutralityCheck check_neutrality(std::span<const double> nu0,
                                 std::span<const double> r, double dr,
                                 double tol = 1e-10);

double plasma_frequency(const PlasmaBackground& bg);

/// One plasma state sample: primitive profiles plus the radial field.
struct PlasmaSnapshot {
    double t = 0.0;
    std::vector<double> r;
    std::vector<double> n;
    std::vector<double> s;
    std::vector<double> u;
    std::vector<double> efield;
    double dr = 0.0;
};

PlasmaSnapshot snapshot_from_data(const RadialPlasmaData& data,
                                  const PlasmaBackground& bg,
                                  double lambda = 1.0);

/// Q = int_0^inf r n u r^2 dr.
double momentum_q(const PlasmaSnapshot& snap);

/// Conserved energy int { n u^2 / 2 + (A(s) n^g - A(sbar) nbar^g)/(g - 1)
/// + E^2 / (8 pi) } r^2 dr.
double energy_script(const PlasmaSnapshot& snap, const PlasmaBackground& bg);

/// Conserved excess mass int (n - nbar) r^2 dr; identically zero for
/// neutral data.
double mass_m(const PlasmaSnapshot& snap, const PlasmaBackground& bg);

/// int nu0 r^4 dr, the charge moment entering the oscillator forcing.
double charge_moment4(const RadialPlasmaData& data);

/// Forcing of the momentum-integral oscillator,
///   G(t) = -(omega^2 / 2) int nu0 r^4 dr
///          + int { n u^2 + 3 (p - pbar) + E^2 / (8 pi) } r^2 dr,
/// so that y'' + omega^2 y = G holds exactly for y = int_0^t Q.
double g_function(const PlasmaSnapshot& snap, double nu0_moment4,
                  const PlasmaBackground& bg);

/// The volumetric part int { n u^2 + 3 (p - pbar) + E^2/(8 pi) } r^2 dr
/// alone; sandwiched between alpha * energy and beta * energy whenever
/// the entropy floor holds and the excess mass vanishes.
double g_volume_part(const PlasmaSnapshot& snap, const PlasmaBackground& bg);

/// alpha = min(1, 3 (gamma - 1)), beta = max(2, 3 (gamma - 1)).
std::pair<double, double> alpha_beta(double gamma);

/// y''(t) = -omega y'(0) sin(omega t) + G(t)
///          - omega int_0^t sin(omega (t - tau)) G(tau) dtau
/// on a uniformly sampled forcing series.
std::vector<double> ode_response(double qp0, std::span<const double> g_series,
                                 double omega, double dt);

/// Certificate that the momentum functional outruns its own a-priori
/// bound within T0, with every constant explicit.
struct BlowupCertificate {
    double q0 = 0.0;
    double energy = 0.0;     // script E at t = 0
    double moment4 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    double t0 = 0.0;         // alpha / (16 beta omega)
    double rhs = 0.0;        // momentum threshold: certified iff 1/Q0 < rhs
    double lambda = 0.0;
    bool energy_large = false;    // script E >= 1
    bool moment_small = false;    // omega^2 |moment4| <= alpha/2 * energy
    bool frequency_small = false; // omega sqrt(2 nbar / 3) <= alpha / 8
    bool momentum_positive = false;
    bool certified = false;
};

/// Evaluate the certificate for the data with velocity u0 scaled by
/// lambda.  Rejects data violating neutrality or the entropy sign.
BlowupCertificate certify_blowup(const RadialPlasmaData& data,
                                 const PlasmaBackground& bg, double lambda);

/// First certified amplitude on the geometric grid {1, 2, 4, ...}.
std::optional<BlowupCertificate> scan_lambda(const RadialPlasmaData& data,
                                             const PlasmaBackground& bg,
                                             double lambda_max = 1e12);

}  // namespace blowup
