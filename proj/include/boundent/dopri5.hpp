// dopri5.hpp — Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace boundent {

struct StepDiagnostics {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double max_error = 0.0; // largest accepted local error estimate
    double last_step = 0.0;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, StepDiagnostics diag)
        : std::runtime_error(format(what, t, diag)), time(t), diagnostics(diag) {}

    double time;
    StepDiagnostics diagnostics;

private:
    static std::string format(const std::string& what, double t, const StepDiagnostics& d) {
        std::ostringstream os;
        os << what << " at t=" << t << " (accepted=" << d.accepted << ", rejected=" << d.rejected
           << ", last h=" << d.last_step << ")";
        return os.str();
    }
};

struct AdaptiveOptions {
    double tol = 1e-10;          // bound on the max-norm local error per step
    double initial_step = 0.0;   // 0 picks one from the derivative scale
    double min_step_rel = 1e-14; // underflow threshold relative to max(|t|, span)
    std::size_t max_steps = 50'000'000;
};

// Integrates y' = f(t, y) from t0 to t1 in place. `observe(t, y)` sees every accepted
// point, including t0. Vec is any Eigen fixed-size column vector.
template <class Vec, class Rhs, class Observer>
StepDiagnostics integrate_dopri5(const Rhs& f, Vec& y, double t0, double t1,
                                 const AdaptiveOptions& opt, Observer&& observe) {
    // Butcher tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    // fifth-order minus embedded fourth-order weights
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    StepDiagnostics diag;
    const double span = t1 - t0;
    if (!(span > 0.0)) throw std::invalid_argument("integrate_dopri5: t1 must exceed t0");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("integrate_dopri5: tol must be > 0");

    observe(t0, y);
    double t = t0;
    Vec k1 = f(t, y);

    double h = opt.initial_step;
    if (h <= 0.0) {
        const double d = k1.cwiseAbs().maxCoeff();
        h = d > 0.0 ? 0.1 * std::pow(opt.tol, 0.2) / d : span;
        h = std::min(h, span);
    }

    while (t < t1) {
        if (diag.accepted + diag.rejected >= opt.max_steps)
            throw IntegrationError("step budget exhausted", t, diag);
        const bool last = t + h >= t1;
        if (last) h = t1 - t;

        const Vec k2 = f(t + c2 * h, (y + h * a21 * k1).eval());
        const Vec k3 = f(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
        const Vec k4 = f(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
        const Vec k5 = f(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
        const Vec k6 =
            f(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
        const Vec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = f(t + h, ynew);
        const Vec errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = errv.cwiseAbs().maxCoeff();
        diag.last_step = h;

        if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate", t, diag);

        const double ratio = err / opt.tol;
        if (ratio <= 1.0) {
            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7;
            ++diag.accepted;
            diag.max_error = std::max(diag.max_error, err);
            observe(t, y);
            const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
            h *= std::max(1.0, grow);
        } else {
            ++diag.rejected;
            h *= std::max(0.1, 0.9 * std::pow(ratio, -0.2));
        }
        if (t < t1 && h < opt.min_step_rel * std::max(std::abs(t), span))
            throw IntegrationError("step size underflow", t, diag);
    }
    return diag;
}

} // namespace boundent
