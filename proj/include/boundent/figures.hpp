// figures.hpp — Canonical sweeps for the published curves and the hydrogen-like example

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundent/model.hpp"
#include "boundent/spectral.hpp"
#include "boundent/sweep.hpp"

namespace boundent {

struct MaxRatioResult {
    double omega_L;     // location of the largest boundary enhancement
    double ratio;       // (A2/A1)^2 there, near the plate
    double enhancement; // ratio minus the free-space value sinc^2
};

struct MaxRatioOptions {
    double lo = 0.5;
    double hi = 4.0;
    double step = 1e-3;
    double z_over_L = 1e-4;
};

// Boundary enhancement of (A2/A1)^2 over free space at fixed z/L.
inline double boundary_enhancement(double omega_L, double z_over_L) {
    return ratio_A_squared(omega_L, z_over_L) - ratio_A_squared(omega_L, kInf);
}

// Coarse grid followed by golden-section refinement inside the best grid cell pair.
inline MaxRatioResult max_ratio_search(const MaxRatioOptions& opt = {}) {
    if (!(opt.lo > 0.0 && opt.hi > opt.lo && opt.step > 0.0))
        throw std::invalid_argument("max_ratio_search: bad grid");
    auto f = [&](double x) { return boundary_enhancement(x, opt.z_over_L); };
    const int n = static_cast<int>(std::floor((opt.hi - opt.lo) / opt.step + 1e-9)) + 1;
    int best = 0;
    double best_val = f(opt.lo);
    for (int i = 1; i < n; ++i) {
        const double v = f(opt.lo + i * opt.step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = std::max(opt.lo, opt.lo + (best - 1) * opt.step);
    double b = std::min(opt.hi, opt.lo + (best + 1) * opt.step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, ratio_A_squared(x, opt.z_over_L), f(x)};
}

// Hydrogen-like example: omega = 1e14 rad/s, L = 6.08e-6 m.
struct HydrogenExample {
    double omega_rad_per_s = 1e14;
    double L_m = 6.08e-6;
    double near_z_over_L = 1e-4;
};

struct HydrogenReport {
    double omega_L;
    double ratio_unbounded;
    double ratio_near;
    CriticalTemperature unbounded;
    CriticalTemperature near_boundary;
    MaxRatioResult max_ratio;
};

inline HydrogenReport hydrogen_report(const HydrogenExample& h = {}) {
    const SiParameters free_si{h.omega_rad_per_s, h.L_m, kInf, 0.0};
    const SiParameters near_si{h.omega_rad_per_s, h.L_m, h.near_z_over_L * h.L_m, 0.0};
    const NaturalParameters free_nat = from_si(free_si);
    const NaturalParameters near_nat = from_si(near_si);
    HydrogenReport r{free_nat.geometry.omega * free_nat.geometry.L,
                     ratio_A_squared(free_nat.geometry),
                     ratio_A_squared(near_nat.geometry),
                     critical_temperature(free_nat.geometry, h.omega_rad_per_s),
                     critical_temperature(near_nat.geometry, h.omega_rad_per_s),
                     max_ratio_search()};
    return r;
}

struct Reproduction {
    std::string csv;
    std::vector<std::string> summary;
    std::size_t failed_rows = 0;
    std::size_t rows = 0;
};

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "hydrogen-example"};
    return names;
}

inline SweepSpec figure_spec(const std::string& figure) {
    SweepSpec s;
    if (figure == "fig2") {
        s.axes.push_back({Param::omegaL, 0.01, 10.0, 1000, Spacing::linear, {}});
        s.outputs = {Output::ratioANearBoundary, Output::ratioAUnbounded};
    } else if (figure == "fig3") {
        s.axes.push_back({Param::zOverL, 0.01, 5.0, 100, Spacing::linear, {}});
        s.axes.push_back({Param::omegaL, 0.01, 10.0, 100, Spacing::linear, {}});
        s.outputs = {Output::ratioA};
    } else if (figure == "fig4") {
        s.axes.push_back({Param::omegaL, 0, 0, 0, Spacing::list, {0.5, 1.0, 1.5, 2.027, 2.8}});
        s.axes.push_back({Param::zOverL, 0.05, 8.0, 400, Spacing::linear, {}});
        s.outputs = {Output::ratioA, Output::ratioAUnbounded};
    } else {
        std::string opts;
        for (const auto& n : figure_names()) opts += (opts.empty() ? "" : ", ") + n;
        throw SpecError("unknown figure '" + figure + "'; options: " + opts);
    }
    return s;
}

inline Reproduction reproduce(const std::string& figure) {
    Reproduction out;
    if (figure == "hydrogen-example") {
        const HydrogenReport h = hydrogen_report();
        std::ostringstream csv;
        csv << "case,omegaL,zOverL,ratioA,betaOmegaCritical,criticalTemperatureK\n";
        csv << "unbounded," << format_value(h.omega_L) << ",inf," << format_value(h.ratio_unbounded) << ","
            << format_value(h.unbounded.beta_omega) << "," << format_value(*h.unbounded.kelvin) << "\n";
        csv << "near-boundary," << format_value(h.omega_L) << "," << format_value(HydrogenExample{}.near_z_over_L)
            << "," << format_value(h.ratio_near) << "," << format_value(h.near_boundary.beta_omega) << ","
            << format_value(*h.near_boundary.kelvin) << "\n";
        out.csv = csv.str();
        out.rows = 2;
        out.summary.push_back("critical temperature (no plate): " + format_value(*h.unbounded.kelvin) + " K");
        out.summary.push_back("critical temperature (z/L=1e-4): " + format_value(*h.near_boundary.kelvin) + " K");
        out.summary.push_back("max boundary enhancement: omegaL*=" + format_value(h.max_ratio.omega_L) +
                              " ratio*=" + format_value(h.max_ratio.ratio) +
                              " (grid omegaL in [0.5,4] step 1e-3 at z/L=1e-4, golden-section refine)");
        return out;
    }
    const SweepResult r = run_sweep(figure_spec(figure));
    out.csv = r.csv;
    out.summary = r.warnings;
    out.rows = r.rows;
    out.failed_rows = r.failed_rows;
    out.summary.push_back(figure + ": " + std::to_string(r.rows) + " rows");
    return out;
}

} // namespace boundent
