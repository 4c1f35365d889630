// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace blowup::numerics {

/// Composite Simpson rule on uniformly spaced samples (>= 3 points).
/// An even number of intervals uses plain Simpson; an odd count closes
/// with a 3/8 panel.  Exact for cubics either way.
double simpson(std::span<const double> f, double dx);

/// Simpson integral of f(r) * r^2 on a uniform radial grid.
double simpson_r2(std::span<const double> f, std::span<const double> r, double dx);

/// Cumulative integral C[j] = int_{x0}^{x_j} f dx on a uniform grid,
/// fourth order (local cubic per interval).
std::vector<double> cumulative_integral(std::span<const double> f, double dx);

/// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol);

/// K(y) = int_1^inf dr / (r^2 (r^3 + y)) for y >= 0.  Adaptive panel on
/// [1, M] plus a convergent series for the tail.
double improper_kernel(double y);

/// int_1^inf dr / (E r^2 + b r^5).  Requires E, b >= 0, not both zero.
double quad_improper(double coef_e, double coef_b);

/// int_lo^hi dr / (E r^2 + b r^5) over a finite range.
double quad_improper_between(double coef_e, double coef_b, double lo, double hi);

/// Root of f on [lo, hi] with f(lo) * f(hi) <= 0; Brent-style
/// bisection-accelerated secant.  `tol` is relative on the abscissa.
double root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                      double tol = 1e-12);

/// Trapezoid evaluation of t -> int_0^t sin(omega (t - tau)) g(tau) dtau
/// on the uniform grid t_i = i * dt.
std::vector<double> convolve_sin(std::span<const double> g, double omega, double dt);

/// Direct integration of y'' + omega^2 y = g(t) by classical RK4 with the
/// sampled forcing (linear interpolation between nodes).  Returns y''.
std::vector<double> oscillator_response_direct(std::span<const double> g, double omega,
                                               double dt, double y0, double yp0);

/// Eigenvalues of a small (n <= 8) dense symmetric matrix, row-major
/// storage, by cyclic Jacobi rotations.  Ascending order.
std::vector<double> sym_eigenvalues(std::vector<double> a, std::size_t n);

/// Fourth-order central difference df/dx.
double derivative_c4(const std::function<double(double)>& f, double x, double h);

}  // namespace blowup::numerics
