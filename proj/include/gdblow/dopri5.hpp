#ifndef GDBLOW_DOPRI5_HPP
#define GDBLOW_DOPRI5_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

namespace gdblow::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

enum class StopReason { reached_t_max, escaped, step_underflow, step_limit };

template <std::size_t N>
struct Solution {
    std::vector<double> t;
    std::vector<Vec<N>> y;
    StopReason stop = StopReason::reached_t_max;
    double t_final = 0.0;
};

struct StepControl {
    double t_max = 100.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double escape = 1e8;              // stop once max_i |y_i| reaches this
    std::size_t max_steps = 5'000'000;
    std::vector<double> forced_times; // ascending; steps land on these exactly
};

// Dormand-Prince 5(4) embedded pair with FSAL and standard step-size control.
// Every accepted step is recorded. `valid` rejects steps that leave the
// admissible region (the step is retried with a smaller h).
template <std::size_t N, class RHS, class Valid>
Solution<N> dopri5(RHS&& f, Vec<N> y0, const StepControl& ctl, Valid&& valid) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // difference between the 5th- and 4th-order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Solution<N> sol;
    double t = 0.0;
    Vec<N> y = y0;
    sol.t.push_back(t);
    sol.y.push_back(y);

    auto max_abs = [](const Vec<N>& v) {
        double m = 0.0;
        for (double c : v) m = std::max(m, std::abs(c));
        return m;
    };
    if (max_abs(y) >= ctl.escape) {
        sol.stop = StopReason::escaped;
        sol.t_final = 0.0;
        return sol;
    }

    Vec<N> k1 = f(t, y);

    // initial step from the state/derivative scale
    double h;
    {
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = ctl.abs_tol + ctl.rel_tol * std::abs(y[i]);
            dy = std::max(dy, std::abs(y[i]) / sc);
            df = std::max(df, std::abs(k1[i]) / sc);
        }
        h = (df > 1e-30) ? 0.01 * std::max(dy, 1.0) / df : 1e-6;
        h = std::min(h, ctl.t_max);
        if (h <= 0.0) h = 1e-6;
    }

    std::size_t next_forced = 0;
    auto axpy = [](Vec<N>& out, const Vec<N>& y0v, std::initializer_list<std::pair<double, const Vec<N>*>> terms,
                   double hh) {
        for (std::size_t i = 0; i < N; ++i) {
            double s = 0.0;
            for (const auto& [c, k] : terms) s += c * (*k)[i];
            out[i] = y0v[i] + hh * s;
        }
    };

    for (std::size_t step = 0; step < ctl.max_steps; ++step) {
        if (t >= ctl.t_max) {
            sol.stop = StopReason::reached_t_max;
            sol.t_final = t;
            return sol;
        }
        const double underflow = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < underflow) {
            sol.stop = StopReason::step_underflow;
            sol.t_final = t;
            return sol;
        }
        // a landing within rounding error of a forced time counts as on it
        const double forced_slack = 1e-12 * std::max(1.0, std::abs(t));
        while (next_forced < ctl.forced_times.size() &&
               ctl.forced_times[next_forced] <= t + forced_slack)
            ++next_forced;
        bool hit_forced = false;
        if (next_forced < ctl.forced_times.size() && t + h >= ctl.forced_times[next_forced]) {
            h = ctl.forced_times[next_forced] - t;
            hit_forced = true;
        }
        if (t + h > ctl.t_max) h = ctl.t_max - t;

        Vec<N> k2, k3, k4, k5, k6, k7, ytmp, ynew;
        axpy(ytmp, y, {{a21, &k1}}, h);
        k2 = f(t + h / 5, ytmp);
        axpy(ytmp, y, {{a31, &k1}, {a32, &k2}}, h);
        k3 = f(t + 3 * h / 10, ytmp);
        axpy(ytmp, y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
        k4 = f(t + 4 * h / 5, ytmp);
        axpy(ytmp, y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
        k5 = f(t + 8 * h / 9, ytmp);
        axpy(ytmp, y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
        k6 = f(t + h, ytmp);
        axpy(ynew, y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        k7 = f(t + h, ynew);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double est = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            const double sc =
                ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (est / sc) * (est / sc);
            if (!std::isfinite(ynew[i]) || !std::isfinite(est)) finite = false;
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (!finite || !valid(ynew)) {
            h *= 0.25;
            continue;
        }
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        t += h;
        y = ynew;
        k1 = k7;  // FSAL
        sol.t.push_back(t);
        sol.y.push_back(y);

        if (max_abs(y) >= ctl.escape) {
            sol.stop = StopReason::escaped;
            sol.t_final = t;
            return sol;
        }

        double grow = (err > 1e-30) ? 0.9 * std::pow(err, -0.2) : 5.0;
        if (hit_forced) grow = std::max(grow, 1.0);  // clipped step, not an error signal
        h *= std::min(5.0, std::max(0.2, grow));
    }
    sol.stop = StopReason::step_limit;
    sol.t_final = t;
    return sol;
}

template <std::size_t N, class RHS>
Solution<N> dopri5(RHS&& f, Vec<N> y0, const StepControl& ctl) {
    return dopri5<N>(std::forward<RHS>(f), y0, ctl, [](const Vec<N>&) { return true; });
}

}  // namespace gdblow::ode

#endif  // GDBLOW_DOPRI5_HPP
