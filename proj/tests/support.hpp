#ifndef GDBLOW_TESTS_SUPPORT_HPP
#define GDBLOW_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "gdblow/criterion.hpp"
#include "gdblow/riemann_ode.hpp"

namespace testsup {

// Fixed-step classical RK4 for the reduced slope system. Deliberately
// independent of the adaptive integrator it cross-checks.
struct BruteResult {
    bool escaped = false;
    double t_escape = 0.0;
    double r1 = 0.0, r2 = 0.0;
};

inline BruteResult brute_force_r(double r1, double r2, double b, double gamma, double h,
                                 double t_max, double escape = 1e8) {
    auto f1 = [&](double a, double c) { return -a * a + b * c * c; };
    auto f2 = [&](double a, double c) { return -0.5 * (gamma + 1.0) * a * c; };
    double t = 0.0;
    while (t < t_max) {
        const double k1a = f1(r1, r2), k1b = f2(r1, r2);
        const double k2a = f1(r1 + 0.5 * h * k1a, r2 + 0.5 * h * k1b),
                     k2b = f2(r1 + 0.5 * h * k1a, r2 + 0.5 * h * k1b);
        const double k3a = f1(r1 + 0.5 * h * k2a, r2 + 0.5 * h * k2b),
                     k3b = f2(r1 + 0.5 * h * k2a, r2 + 0.5 * h * k2b);
        const double k4a = f1(r1 + h * k3a, r2 + h * k3b), k4b = f2(r1 + h * k3a, r2 + h * k3b);
        r1 += h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
        r2 += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
        t += h;
        if (!std::isfinite(r1) || !std::isfinite(r2) ||
            std::max(std::abs(r1), std::abs(r2)) >= escape) {
            return {true, t, r1, r2};
        }
    }
    return {false, t, r1, r2};
}

// Randomized Indicators kept away from every decision boundary so that the
// classification is stable and trajectories resolve within a finite horizon.
// Draw ranges also keep bounded orbits well below the 1e8 escape threshold
// (the widest excursion grows like (C/a)^((gamma+1)/(gamma-1))).
inline std::vector<std::pair<gdblow::Indicators, gdblow::GasParams>> robust_random_indicators(
    int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::array<double, 4> gammas{1.2, 1.4, 2.0, 3.0};
    std::vector<std::pair<gdblow::Indicators, gdblow::GasParams>> out;
    while (static_cast<int>(out.size()) < count) {
        const double gamma = gammas[rng() % gammas.size()];
        gdblow::Indicators ind;
        auto signed_range = [&](double lo, double hi) {
            const double v = lo + (hi - lo) * u01(rng);
            return (u01(rng) < 0.5) ? -v : v;
        };
        ind.r1 = signed_range(0.05, 2.0);
        if (u01(rng) < 0.25) {
            ind.r2 = 0.0;
            ind.k_infinite = true;
            ind.k = std::numeric_limits<double>::infinity();
            ind.b = std::numeric_limits<double>::quiet_NaN();
        } else {
            ind.r2 = signed_range(0.3, 2.0);
            ind.b = signed_range(0.2, 2.0);
            ind.k = ind.b + (gamma - 1.0) / 2.0;
            if (ind.b < 0.0) {
                const double coeff = 2.0 * ind.b / (gamma - 1.0);
                const double level = ind.r1 * ind.r1 + coeff * ind.r2 * ind.r2;
                const double scale =
                    std::max(ind.r1 * ind.r1, std::abs(coeff) * ind.r2 * ind.r2);
                if (std::abs(level) < 0.05 * scale) continue;  // too near the separatrix
            }
        }
        out.emplace_back(ind, gdblow::GasParams{gamma});
    }
    return out;
}

}  // namespace testsup

#endif  // GDBLOW_TESTS_SUPPORT_HPP
