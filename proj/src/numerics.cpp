// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowup::numerics {

double simpson(std::span<const double> f, double dx) {
    auto n = f.size();
    if (n < 3) {
        throw std::invalid_argument("simpson: need at least 3 samples");
    }
    auto intervals = n - 1;
    std::size_t m = intervals;
    double tail = 0.0;
    if (intervals % 2 != 0) {
        // close the last three intervals with a 3/8 panel
        m = intervals - 3;
        auto i = n - 4;
        tail = 3.0 * dx / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
    }
    double sum = 0.0;
    if (m > 0) {
        sum = f[0] + f[m];
        for (std::size_t i = 1; i < m; i += 2) {
            sum += 4.0 * f[i];
        }
        for (std::size_t i = 2; i < m; i += 2) {
            sum += 2.0 * f[i];
        }
        sum *= dx / 3.0;
    }
    return sum + tail;
}

double simpson_r2(std::span<const double> f, std::span<const double> r, double dx) {
    if (f.size() != r.size()) {
        throw std::invalid_argument("simpson_r2: size mismatch");
    }
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        g[i] = f[i] * r[i] * r[i];
    }
    return simpson(g, dx);
}

std::vector<double> cumulative_integral(std::span<const double> f, double dx) {
    auto n = f.size();
    if (n < 4) {
        throw std::invalid_argument("cumulative_integral: need at least 4 samples");
    }
    std::vector<double> c(n, 0.0);
    // first interval from the cubic through points 0..3
    c[1] = c[0] + dx / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t j = 1; j + 2 < n; ++j) {
        c[j + 1] = c[j] + dx / 24.0 *
                              (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
    }
    auto last = n - 1;
    c[last] = c[last - 1] + dx / 24.0 *
                                (f[last - 3] - 5.0 * f[last - 2] + 19.0 * f[last - 1] +
                                 9.0 * f[last]);
    return c;
}

namespace {

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
    auto m = 0.5 * (a + b);
    auto lm = 0.5 * (a + m);
    auto rm = 0.5 * (m + b);
    auto flm = f(lm);
    auto frm = f(rm);
    auto left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    auto right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    auto delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol) {
    if (!(b > a)) {
        return 0.0;
    }
    auto fa = f(a);
    auto fb = f(b);
    auto fm = f(0.5 * (a + b));
    auto whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

double improper_kernel(double y) {
    if (y < 0.0) {
        throw std::domain_error("improper_kernel: y must be nonnegative");
    }
    // cut so the tail series in y / M^3 converges geometrically
    auto cut = std::max(10.0, 2.0 * std::cbrt(std::max(y, 1.0)));
    auto integrand = [y](double r) {
        return 1.0 / (r * r * (r * r * r + y));
    };
    auto head = adaptive_quad(integrand, 1.0, cut, 1e-13);
    double tail = 0.0;
    double m3 = cut * cut * cut;
    double ratio = -y / m3;
    double power = 1.0 / (m3 * cut);  // 1 / M^4
    for (int k = 0; k < 200; ++k) {
        auto term = power / (4.0 + 3.0 * k);
        tail += term;
        if (std::abs(term) < 1e-18 * std::abs(tail)) {
            break;
        }
        power *= ratio / m3;
    }
    return head + tail;
}

double quad_improper(double coef_e, double coef_b) {
    if (coef_e < 0.0 || coef_b < 0.0 || (coef_e == 0.0 && coef_b == 0.0)) {
        throw std::domain_error("quad_improper: need E, b >= 0 and not both zero");
    }
    if (coef_b == 0.0) {
        return 1.0 / coef_e;
    }
    return improper_kernel(coef_e / coef_b) / coef_b;
}

double quad_improper_between(double coef_e, double coef_b, double lo, double hi) {
    if (coef_e < 0.0 || coef_b < 0.0 || (coef_e == 0.0 && coef_b == 0.0)) {
        throw std::domain_error("quad_improper_between: need E, b >= 0, not both zero");
    }
    if (!(hi > lo) || lo <= 0.0) {
        throw std::domain_error("quad_improper_between: need 0 < lo < hi");
    }
    // factor out the coefficient scale so the tolerance is effectively
    // relative to the value of the integral
    auto scale = std::max(coef_e, coef_b);
    auto ce = coef_e / scale;
    auto cb = coef_b / scale;
    auto integrand = [ce, cb](double r) {
        auto r2 = r * r;
        return 1.0 / (ce * r2 + cb * r2 * r2 * r);
    };
    return adaptive_quad(integrand, lo, hi, 1e-13) / scale;
}

double root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
    auto a = lo;
    auto b = hi;
    auto fa = f(a);
    auto fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) {
        throw std::invalid_argument("root_bracketed: endpoints do not bracket a root");
    }
    auto c = a;
    auto fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        auto tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                    0.5 * tol * (1.0 + std::abs(b));
        auto xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // secant / inverse quadratic
            auto s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                auto qq = fa / fc;
                auto rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

std::vector<double> convolve_sin(std::span<const double> g, double omega, double dt) {
    if (dt <= 0.0) {
        throw std::invalid_argument("convolve_sin: dt must be positive");
    }
    auto n = g.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    // sin(w(t - tau)) = sin(wt) cos(w tau) - cos(wt) sin(w tau); keep the two
    // cumulative trapezoid sums, equivalent to the direct trapezoid product.
    double sc = 0.0;  // int g cos(w tau)
    double ss = 0.0;  // int g sin(w tau)
    double prev_c = g[0];
    double prev_s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        auto t = i * dt;
        auto ci = g[i] * std::cos(omega * t);
        auto si = g[i] * std::sin(omega * t);
        sc += 0.5 * dt * (prev_c + ci);
        ss += 0.5 * dt * (prev_s + si);
        prev_c = ci;
        prev_s = si;
        out[i] = std::sin(omega * t) * sc - std::cos(omega * t) * ss;
    }
    return out;
}

std::vector<double> oscillator_response_direct(std::span<const double> g, double omega,
                                               double dt, double y0, double yp0) {
    auto n = g.size();
    std::vector<double> ypp(n, 0.0);
    if (n == 0) return ypp;
    auto forcing = [&](double t) {
        auto s = t / dt;
        auto i = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(s))), n - 2);
        auto w = s - static_cast<double>(i);
        return (1.0 - w) * g[i] + w * g[i + 1];
    };
    double y = y0;
    double yp = yp0;
    ypp[0] = g[0] - omega * omega * y;
    auto rhs = [&](double t, double yy, double vv, double& dy, double& dv) {
        dy = vv;
        dv = forcing(t) - omega * omega * yy;
    };
    const int sub = 8;  // substeps per sample for accuracy headroom
    auto h = dt / sub;
    for (std::size_t i = 1; i < n; ++i) {
        auto t = (i - 1) * dt;
        for (int k = 0; k < sub; ++k) {
            double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v;
            rhs(t, y, yp, k1y, k1v);
            rhs(t + 0.5 * h, y + 0.5 * h * k1y, yp + 0.5 * h * k1v, k2y, k2v);
            rhs(t + 0.5 * h, y + 0.5 * h * k2y, yp + 0.5 * h * k2v, k3y, k3v);
            rhs(t + h, y + h * k3y, yp + h * k3v, k4y, k4v);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            yp += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            t += h;
        }
        ypp[i] = g[i] - omega * omega * y;
    }
    return ypp;
}

std::vector<double> sym_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) {
        throw std::invalid_argument("sym_eigenvalues: bad matrix size");
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += at(i, j) * at(i, j);
            }
        }
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                auto apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                auto theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                auto t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                auto c = 1.0 / std::sqrt(t * t + 1.0);
                auto s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    auto akp = at(k, p);
                    auto akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    auto apk = at(p, k);
                    auto aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

double derivative_c4(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
           (12.0 * h);
}

}  // namespace blowup::numerics
