#include "gdblow/riemann_ode.hpp"

#include <algorithm>
#include <cmath>

#include "gdblow/dopri5.hpp"

namespace gdblow {

namespace {

constexpr double kZero = 1e-14;

double sq(double v) { return v * v; }

}  // namespace

PVector riemann_slopes(const PrimitiveState& s, const SpatialSlopes& d, const GasParams& gp) {
    check_gas(gp);
    check_state(s);
    if (gp.gamma * s.p <= 0.0) throw DomainError("riemann slopes require gamma*p > 0");
    const double speed = std::sqrt(gp.gamma * s.p * s.rho);  // s = sqrt(gamma u3 / u2)
    const double dtau = -d.drho / sq(s.rho);                 // tau = 1/rho
    return PVector{d.dv - d.dp / speed, speed * dtau + d.dp / speed, d.dv + d.dp / speed};
}

RReduction reduce_to_R(const PVector& p) {
    RReduction out;
    out.r1 = 0.5 * (p.p1 + p.p3);
    out.r2 = 0.5 * (p.p3 - p.p1);
    const double diff = p.p1 - p.p3;
    const double scale = std::max({1.0, std::abs(p.p1), std::abs(p.p3)});
    if (std::abs(diff) <= kZero * scale) {
        if (std::abs(p.p2) <= kZero * std::max(1.0, std::abs(p.p2))) {
            out.k_indeterminate = true;
        } else {
            out.k_infinite = true;
        }
        out.r2 = 0.0;
    } else {
        out.k = p.p2 / diff;
    }
    return out;
}

PVector rhs_P(const PVector& p, const GasParams& gp) {
    const double g = gp.gamma;
    const double q1 = (g + 1.0) / 4.0;
    const double q3 = (3.0 - g) / 4.0;
    const double cross = 0.25 * p.p1 * p.p2 - q3 * p.p1 * p.p3 - 0.25 * p.p2 * p.p3;
    return PVector{
        -q1 * sq(p.p1) + cross,
        -q1 * p.p2 * (p.p1 + p.p3),
        -q1 * sq(p.p3) + cross,
    };
}

std::array<double, 2> rhs_R(const RState& r) {
    return {-sq(r.r1) + r.b * sq(r.r2), -0.5 * (r.gamma + 1.0) * r.r1 * r.r2};
}

RayState rhs_augmented_ray(const RayState& s, const GasParams& gp) {
    const double g = gp.gamma;
    if (!(s.u2 > 0.0) || !(s.u3 > 0.0))
        throw DomainError("ray state requires u2 > 0 and u3 > 0");
    const double c = std::sqrt(g * s.u2 * s.u3);
    const PVector dp = rhs_P(PVector{s.p1, s.p2, s.p3}, gp);
    RayState out;
    out.u1 = -c * s.p3;
    out.u2 = 0.5 * s.u2 * (s.p1 + s.p3);  // tau transport: dtau/dt = tau * dv/dx
    out.u3 = -g * s.u3 * s.p1;
    out.p1 = dp.p1;
    out.p2 = dp.p2;
    out.p3 = dp.p3;
    return out;
}

FirstIntegral first_integral(const RState& r) {
    FirstIntegral out;
    if (r.r2 == 0.0 || std::abs(r.gamma + 1.0) < 1e-9) {
        out.degenerate = true;
        out.c = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double a2 = std::abs(r.r2);
    if (std::abs(r.gamma - 1.0) < 1e-12) {
        out.c = sq(r.r1 / r.r2) + 2.0 * r.b * std::log(a2);
        return out;
    }
    const double coeff = 2.0 * r.b / (r.gamma - 1.0);
    out.c = (sq(r.r1) + coeff * sq(r.r2)) * std::pow(a2, -4.0 / (r.gamma + 1.0));
    return out;
}

namespace {

Outcome outcome_from_stop(ode::StopReason stop, double t_final) {
    Outcome out;
    out.t_final = t_final;
    switch (stop) {
        case ode::StopReason::reached_t_max:
        case ode::StopReason::step_limit: out.kind = OutcomeKind::bounded; break;
        case ode::StopReason::escaped: out.kind = OutcomeKind::escaped; break;
        case ode::StopReason::step_underflow: out.kind = OutcomeKind::blowup_estimated; break;
    }
    return out;
}

ode::StepControl make_control(const IntegrateOptions& opt) {
    ode::StepControl ctl;
    ctl.t_max = opt.t_max;
    ctl.rel_tol = opt.rel_tol;
    ctl.abs_tol = opt.abs_tol;
    ctl.escape = opt.escape_threshold;
    ctl.forced_times = opt.sample_times;
    return ctl;
}

double compute_c_drift(const Trajectory& traj) {
    if (traj.y.empty() || traj.y.front()[1] == 0.0) return 0.0;
    if (std::abs(traj.gamma + 1.0) < 1e-9) return 0.0;
    const FirstIntegral c0 = first_integral(RState{traj.y.front()[0], traj.y.front()[1], traj.b, traj.gamma});
    if (c0.degenerate) return 0.0;
    const double denom = std::max(1.0, std::abs(c0.c));
    double drift = 0.0;
    for (std::size_t i = 1; i < traj.y.size(); ++i) {
        if (traj.y[i][1] == 0.0) continue;
        const FirstIntegral ci = first_integral(RState{traj.y[i][0], traj.y[i][1], traj.b, traj.gamma});
        if (ci.degenerate || !std::isfinite(ci.c)) continue;
        drift = std::max(drift, std::abs(ci.c - c0.c) / denom);
    }
    return drift;
}

double compute_k_drift(const std::vector<std::array<double, 3>>& y) {
    bool have_k0 = false;
    double k0 = 0.0, drift = 0.0;
    for (const auto& p : y) {
        const double diff = p[0] - p[2];
        if (std::abs(diff) <= 1e-10 * std::max({1.0, std::abs(p[0]), std::abs(p[2])})) continue;
        const double k = p[1] / diff;
        if (!have_k0) {
            k0 = k;
            have_k0 = true;
        } else {
            drift = std::max(drift, std::abs(k - k0) / std::max(1.0, std::abs(k0)));
        }
    }
    return drift;
}

}  // namespace

Trajectory integrate(const RState& r0, double t_max, double tol) {
    IntegrateOptions opt;
    opt.t_max = t_max;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    return integrate(r0, opt);
}

Trajectory integrate(const RState& r0, const IntegrateOptions& opt) {
    Trajectory traj;
    traj.b = r0.b;
    traj.gamma = r0.gamma;
    const double b = r0.b, g = r0.gamma;
    auto rhs = [b, g](double, const ode::Vec<2>& y) -> ode::Vec<2> {
        return {-y[0] * y[0] + b * y[1] * y[1], -0.5 * (g + 1.0) * y[0] * y[1]};
    };
    auto sol = ode::dopri5<2>(rhs, {r0.r1, r0.r2}, make_control(opt));
    traj.t = std::move(sol.t);
    traj.y = std::move(sol.y);
    traj.outcome = outcome_from_stop(sol.stop, sol.t_final);
    traj.c_drift = compute_c_drift(traj);
    if (traj.outcome.kind == OutcomeKind::blowup_estimated) {
        // step underflow before the escape threshold: estimate from the tail
        Trajectory tmp = traj;
        tmp.outcome.kind = OutcomeKind::escaped;
        const BlowupEstimate est = blowup_time_estimate(tmp);
        traj.outcome.T = est.T;
        traj.outcome.bracket_lo = est.bracket_lo;
        traj.outcome.bracket_hi = est.bracket_hi;
        traj.outcome.low_confidence = est.low_confidence;
    }
    return traj;
}

PTrajectory integrate_p(const PVector& p0, const GasParams& gp, const IntegrateOptions& opt) {
    PTrajectory traj;
    traj.gamma = gp.gamma;
    const GasParams g = gp;
    auto rhs = [g](double, const ode::Vec<3>& y) -> ode::Vec<3> {
        const PVector d = rhs_P(PVector{y[0], y[1], y[2]}, g);
        return {d.p1, d.p2, d.p3};
    };
    auto sol = ode::dopri5<3>(rhs, {p0.p1, p0.p2, p0.p3}, make_control(opt));
    traj.t = std::move(sol.t);
    traj.y = std::move(sol.y);
    traj.outcome = outcome_from_stop(sol.stop, sol.t_final);
    traj.k_drift = compute_k_drift(traj.y);
    return traj;
}

RayTrajectory integrate_ray(const RayState& s0, const GasParams& gp, const IntegrateOptions& opt) {
    RayTrajectory traj;
    traj.gamma = gp.gamma;
    const GasParams g = gp;
    auto rhs = [g](double, const ode::Vec<6>& y) -> ode::Vec<6> {
        const RayState d =
            rhs_augmented_ray(RayState{y[0], y[1], y[2], y[3], y[4], y[5]}, g);
        return {d.u1, d.u2, d.u3, d.p1, d.p2, d.p3};
    };
    auto valid = [](const ode::Vec<6>& y) { return y[1] > 0.0 && y[2] > 0.0; };
    auto sol = ode::dopri5<6>(rhs, {s0.u1, s0.u2, s0.u3, s0.p1, s0.p2, s0.p3},
                              make_control(opt), valid);
    traj.t = std::move(sol.t);
    traj.y = std::move(sol.y);
    traj.outcome = outcome_from_stop(sol.stop, sol.t_final);
    return traj;
}

BlowupEstimate blowup_time_estimate(const Trajectory& traj) {
    if (traj.outcome.kind == OutcomeKind::blowup_estimated && std::isfinite(traj.outcome.T)) {
        return {traj.outcome.T, traj.outcome.bracket_lo, traj.outcome.bracket_hi,
                traj.outcome.low_confidence};
    }
    if (traj.outcome.kind != OutcomeKind::escaped || traj.y.size() < 2)
        throw DomainError("blow-up estimate requires an escaped trajectory");

    const double t_last = traj.t.back();
    double max_r2 = 0.0;
    for (const auto& y : traj.y) max_r2 = std::max(max_r2, std::abs(y[1]));
    const bool riccati = max_r2 <= 1e-12 * std::max(1.0, std::abs(traj.y.front()[0]));

    if (riccati) {
        // dR1/dt = -R1^2 exactly: 1/R1(t) = 1/R1(0) + t, root at t - 1/R1.
        const double r1 = traj.y.back()[0];
        const double T = t_last - 1.0 / r1;
        const double margin = std::max(T - t_last, 1e-15 * std::max(1.0, T));
        return {T, t_last, T + margin, false};
    }

    // General escape: both components grow quadratically, so 1/m is
    // asymptotically linear in t. Fit the last decade of growth of the
    // dominant component.
    const std::size_t n = traj.y.size();
    const int comp = std::abs(traj.y.back()[0]) >= std::abs(traj.y.back()[1]) ? 0 : 1;
    const double m_last = std::abs(traj.y.back()[static_cast<std::size_t>(comp)]);
    std::vector<std::pair<double, double>> tail;  // (t, 1/m)
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(traj.y[i][static_cast<std::size_t>(comp)]);
        if (m >= 0.1 * m_last && m > 0.0) tail.emplace_back(traj.t[i], 1.0 / m);
    }
    BlowupEstimate out;
    out.low_confidence = tail.size() < 5;
    if (tail.size() < 2) {
        out.T = t_last;
        out.bracket_lo = t_last;
        out.bracket_hi = 2.0 * t_last;
        out.low_confidence = true;
        return out;
    }
    // regress against tau = t - t_last; centering keeps the normal
    // equations well conditioned when the tail spans a tiny time window
    double st = 0, su = 0, stt = 0, stu = 0;
    for (const auto& [ti, ui] : tail) {
        const double tau = ti - t_last;
        st += tau;
        su += ui;
        stt += tau * tau;
        stu += tau * ui;
    }
    const double nn = static_cast<double>(tail.size());
    const double det = nn * stt - st * st;
    const double slope = (det != 0.0) ? (nn * stu - st * su) / det : 0.0;
    const double icept = (nn > 0.0) ? (su - slope * st) / nn : 0.0;
    if (slope >= 0.0) {
        out.T = t_last;
        out.bracket_lo = t_last;
        out.bracket_hi = 2.0 * t_last;
        out.low_confidence = true;
        return out;
    }
    out.T = t_last - icept / slope;
    out.bracket_lo = t_last;
    const double margin = std::max(out.T - t_last, 1e-15 * std::max(1.0, out.T));
    out.bracket_hi = out.T + margin;
    if (out.T < t_last) {  // regression noise; clamp into the bracket
        out.T = t_last;
        out.low_confidence = true;
        out.bracket_hi = 2.0 * t_last;
    }
    return out;
}

std::vector<Trajectory> phase_portrait(double b, const GasParams& gp,
                                       const std::vector<PortraitSeed>& seeds,
                                       const IntegrateOptions& opt) {
    std::vector<Trajectory> out;
    out.reserve(seeds.size());
    for (const PortraitSeed& seed : seeds) {
        const RState r0{seed.r1, seed.r2, b, gp.gamma};
        Trajectory fwd = integrate(r0, opt);
        if (fwd.outcome.kind == OutcomeKind::bounded) {
            // backward leg: trajectories come in from far out on the level set
            const double g = gp.gamma;
            auto rhs = [b, g](double, const ode::Vec<2>& y) -> ode::Vec<2> {
                return {y[0] * y[0] - b * y[1] * y[1], 0.5 * (g + 1.0) * y[0] * y[1]};
            };
            auto sol = ode::dopri5<2>(rhs, {seed.r1, seed.r2}, make_control(opt));
            Trajectory merged;
            merged.b = b;
            merged.gamma = gp.gamma;
            for (std::size_t i = sol.t.size(); i-- > 1;) {
                merged.t.push_back(-sol.t[i]);
                merged.y.push_back(sol.y[i]);
            }
            for (std::size_t i = 0; i < fwd.t.size(); ++i) {
                merged.t.push_back(fwd.t[i]);
                merged.y.push_back(fwd.y[i]);
            }
            merged.outcome = fwd.outcome;
            merged.c_drift = compute_c_drift(merged);
            out.push_back(std::move(merged));
        } else {
            out.push_back(std::move(fwd));
        }
    }
    return out;
}

ChaplyginResult chaplygin_solve(double r1_0, double r2_0, double k0) {
    ChaplyginResult res;
    res.b = 1.0 + k0;
    res.r2 = r2_0;
    const double a = res.b * sq(r2_0);  // dR1/dt = -R1^2 + a
    if (std::abs(a) < 1e-300) {
        if (r1_0 < 0.0) {
            res.blows_up = true;
            res.T = -1.0 / r1_0;
        }
        return res;
    }
    if (a > 0.0) {
        const double sa = std::sqrt(a);
        if (r1_0 < -sa) {
            res.blows_up = true;
            res.T = 0.5 / sa * std::log((r1_0 - sa) / (r1_0 + sa));
        }
        return res;
    }
    // a < 0: dR1/dt < 0 everywhere, every initial state reaches -infinity
    const double sn = std::sqrt(-a);
    res.blows_up = true;
    res.T = (std::atan(r1_0 / sn) + std::asin(1.0)) / sn;  // asin(1) = pi/2
    return res;
}

}  // namespace gdblow
