// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "blowup/solver.hpp"

namespace blowup {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

}  // namespace

void write_series_csv(const DiagnosticsSeries& series, const std::string& path) {
    auto out = open_out(path);
    out << "t,Q,energy,mass,poisson_res,max_grad_u,max_grad_p,dod_dev,breakdown\n";
    for (std::size_t k = 0; k < series.t.size(); ++k) {
        auto flag = series.breakdown && series.t[k] >= series.breakdown_time ? 1 : 0;
        out << fmt(series.t[k]) << ',' << fmt(series.q[k]) << ','
            << fmt(series.energy[k]) << ',' << fmt(series.mass[k]) << ','
            << fmt(series.poisson_res[k]) << ',' << fmt(series.max_grad_u[k]) << ','
            << fmt(series.max_grad_p[k]) << ',' << fmt(series.dod_dev[k]) << ','
            << flag << '\n';
    }
}

void write_profile_csv(const FluidSnapshot& snap, const std::string& path) {
    auto out = open_out(path);
    out << "r,n,s,u\n";
    for (std::size_t j = 0; j < snap.r.size(); ++j) {
        out << fmt(snap.r[j]) << ',' << fmt(snap.n[j]) << ',' << fmt(snap.s[j]) << ','
            << fmt(snap.u[j]) << '\n';
    }
}

void write_profile_csv(const PlasmaSnapshot& snap, const std::string& path) {
    auto out = open_out(path);
    out << "r,n,s,u,E\n";
    for (std::size_t j = 0; j < snap.r.size(); ++j) {
        out << fmt(snap.r[j]) << ',' << fmt(snap.n[j]) << ',' << fmt(snap.s[j]) << ','
            << fmt(snap.u[j]) << ',' << fmt(snap.efield[j]) << '\n';
    }
}

}  // namespace blowup
