// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blowup/plasma.hpp"
#include "blowup/relfluid.hpp"

namespace blowup {

/// Uniform cell grid on [0, r_max] with centers at (j + 1/2) dr.
struct RadialGrid {
    std::size_t n_cells = 0;
    double r_max = 0.0;
    double dr = 0.0;

    RadialGrid(std::size_t n, double rmax);
    double center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dr; }
    double face(std::size_t j) const { return static_cast<double>(j) * dr; }
    double volume(std::size_t j) const;
    std::vector<double> centers() const;
};

enum class RunStatus { completed, breakdown, domain_exhausted };

/// Per-sample record of the integral diagnostics of a run.  The pinned
/// CSV schema covers the first block; the remaining columns feed the
/// inequality checks and are kept in memory only.
struct DiagnosticsSeries {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> energy;
    std::vector<double> mass;
    std::vector<double> poisson_res;
    std::vector<double> max_grad_u;
    std::vector<double> max_grad_p;
    std::vector<double> dod_dev;

    std::vector<double> qprime;       // fluid: exact q' integrand
    std::vector<double> kinetic;      // fluid: 4 pi int (rho+p) u^2 r^2 dr
    std::vector<double> g_series;     // plasma: oscillator forcing
    std::vector<double> moment_re;    // plasma: int r E r^2 dr
    std::vector<double> limiter_frac;
    std::vector<double> cons_mass;    // exactly conserved cell sums
    std::vector<double> cons_energy;

    RunStatus status = RunStatus::completed;
    bool breakdown = false;
    double breakdown_time = 0.0;
    std::string breakdown_reason;
    double moment4 = 0.0;  // plasma: charge moment of the initial data
};

struct SolverConfig {
    double cfl = 0.4;
    double t_end = 1.0;
    std::size_t sample_every = 1;
    double grad_factor = 100.0;   // breakdown: growth factor of max |du/dr|
    double limiter_saturation = 0.4;
    double dod_halo_cells = 3.0;
    double domain_margin = 0.05;  // stop before the influence range hits r_max
};

struct BreakdownThresholds {
    double grad_factor = 100.0;
    double limiter_saturation = 0.4;
};

/// Earliest breakdown time in a recorded series: gradient growth beyond
/// the factor, a recovery failure recorded by the run, or saturated
/// limiter activity.  Returns the time and which criterion fired.
std::optional<std::pair<double, std::string>> detect_breakdown(
    const DiagnosticsSeries& series, const BreakdownThresholds& thresholds = {});

/// Second-order finite-volume integrator for the radial relativistic
/// fluid about a quiet background: minmod-limited reconstruction, local
/// Lax-Friedrichs flux, Heun stepping, isotropic pressure split so the
/// background is an exact fixed point.
class FluidSolver {
  public:
    FluidSolver(const RadialGrid& grid, const QuietBackground& bg);

    /// Sample initial profiles at the cell centers.
    void set_initial_data(const std::function<double(double)>& n0,
                          const std::function<double(double)>& s0,
                          const std::function<double(double)>& u0);
    void set_initial_data(const DataFamilyParams& params);

    DiagnosticsSeries run(const SolverConfig& config);

    FluidSnapshot snapshot() const;
    double time() const { return time_; }
    double cfl_dt(double cfl) const;
    const RadialGrid& grid() const { return grid_; }

    /// Recover (n, u, p, rho) from one conserved tuple (d, s_r, tau) and
    /// the entropy-free gamma-law closure.  Throws on no admissible root.
    static std::array<double, 4> primitives_from_conserved(double d, double s_r,
                                                           double tau,
                                                           const PolytropicEos& eos,
                                                           double p_guess,
                                                           double p_floor);

    /// (F_D, F_S advective part, F_tau, isotropic pressure) of one
    /// primitive state.
    static std::array<double, 4> flux(double n, double u, double p, double rho);

    /// Largest characteristic speed (relativistic velocity addition).
    static double max_speed(double u, double eta);

    double dod_deviation(double halo_cells) const;
    double max_gradient_u() const;
    double max_gradient_p() const;

  private:
    struct Work;
    void apply_boundary(std::vector<double>& dcol, std::vector<double>& scol,
                        std::vector<double>& taucol, std::vector<double>& entcol) const;
    bool recover_all(Work& w);
    bool stage_rhs(Work& w, double& limited_frac);

    RadialGrid grid_;
    QuietBackground bg_;
    double time_ = 0.0;
    // conserved state with two ghost cells per side
    std::vector<double> d_, s_, tau_, ent_;
    // recovered primitives (same layout)
    std::vector<double> n_, u_, p_, rho_;
    double tau_bar_ = 0.0;
    bool recovery_failed_ = false;
    double p_floor_ = 0.0;
    double n_floor_ = 0.0;
};

/// Same machinery for the reduced electron-fluid system with the radial
/// electric field: local field update, momentum exchange with the
/// background charge, entropy as an advected tracer.
class PlasmaSolver {
  public:
    PlasmaSolver(const RadialGrid& grid, const PlasmaBackground& bg);

    void set_initial_data(const RadialPlasmaData& data, double lambda);
    void set_initial_data(const std::function<double(double)>& nu0,
                          const std::function<double(double)>& sigma0,
                          const std::function<double(double)>& u0);

    DiagnosticsSeries run(const SolverConfig& config);

    PlasmaSnapshot snapshot() const;
    double time() const { return time_; }
    double cfl_dt(double cfl) const;

    double poisson_residual() const;
    double dod_deviation(double halo_cells) const;
    double max_gradient_u() const;
    double max_gradient_p() const;

  private:
    struct Work;
    void apply_boundary(std::vector<double>& ncol, std::vector<double>& mcol,
                        std::vector<double>& ecol, std::vector<double>& scol) const;
    void stage_rhs(Work& w, double& limited_frac);

    RadialGrid grid_;
    PlasmaBackground bg_;
    double time_ = 0.0;
    double moment4_ = 0.0;
    std::vector<double> n_, m_, e_, s_;  // density, momentum, field, entropy
    double n_floor_ = 0.0;
};

/// Write the pinned CSV schema
///   t,Q,energy,mass,poisson_res,max_grad_u,max_grad_p,dod_dev,breakdown
void write_series_csv(const DiagnosticsSeries& series, const std::string& path);

/// Dump one profile snapshot as CSV (r,n,s,u for the fluid; r,n,s,u,E
/// with a field column for the plasma).
void write_profile_csv(const FluidSnapshot& snap, const std::string& path);
void write_profile_csv(const PlasmaSnapshot& snap, const std::string& path);

}  // namespace blowup
