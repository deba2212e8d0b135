#include "gdblow/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gdblow/riemann_ode.hpp"

namespace gdblow {

namespace {

bool near_zero(double q, double tol, double scale) {
    return std::abs(q) <= tol * std::max(1.0, scale);
}

}  // namespace

Indicators point_indicators(const PointData& pd, const GasParams& gp) {
    check_gas(gp);
    if (gp.gamma < 0.0) throw DomainError("indicators require gamma > 0");
    if (!(pd.rho0 > 0.0) || !(pd.p0 > 0.0))
        throw DomainError("indicators require rho0 > 0 and p0 > 0");
    Indicators ind;
    ind.r1 = pd.dv0;
    if (near_zero(pd.dp0, kDefaultTol, std::abs(pd.p0))) {
        ind.r2 = 0.0;
        ind.k_infinite = true;
        ind.k = std::numeric_limits<double>::infinity();
        ind.b = std::numeric_limits<double>::quiet_NaN();
        return ind;
    }
    ind.r2 = pd.dp0 / std::sqrt(gp.gamma * pd.rho0 * pd.p0);
    ind.k = gp.gamma * pd.p0 * pd.drho0 / (2.0 * pd.rho0 * pd.dp0) - 0.5;
    ind.b = ind.k - (gp.gamma - 1.0) / 2.0;
    return ind;
}

PointVerdict classify_point(const Indicators& ind, const GasParams& gp, double tol) {
    check_gas(gp);
    if (gp.gamma < 1.0)
        throw DomainError(
            "the smoothness classifier covers gamma >= 1; use the Chaplygin path for gamma = -1");
    PointVerdict v;
    v.ind = ind;
    const auto ge0 = [tol](double q) { return q >= -tol; };
    const auto gt0 = [tol](double q) { return q > tol; };

    v.sets.set4 = (ind.r2 == 0.0) && ge0(ind.r1);
    if (!ind.k_infinite) {
        v.sets.set1 = ge0(ind.b) && ge0(ind.r1);
        v.sets.set2 = gt0(ind.b) && ind.r2 != 0.0;
        if (gp.gamma > 1.0 && ind.b < -tol && ge0(ind.r1)) {
            const double coeff = 2.0 * ind.b / (gp.gamma - 1.0);
            const double level = ind.r1 * ind.r1 + coeff * ind.r2 * ind.r2;
            const double scale =
                std::max(ind.r1 * ind.r1, std::abs(coeff) * ind.r2 * ind.r2);
            v.sets.set3 = level >= -tol * std::max(1.0, scale);
        }
        // gamma == 1: the logarithmic first integral admits no decaying
        // branch with R2 != 0, so set3 contributes nothing beyond set4.
    }
    v.safe = v.sets.set1 || v.sets.set2 || v.sets.set3 || v.sets.set4;
    return v;
}

EntropyFormK entropy_form_K(const PointData& pd, const GasParams& gp) {
    check_gas(gp);
    if (!(pd.rho0 > 0.0) || !(pd.p0 > 0.0))
        throw DomainError("entropy form requires rho0 > 0 and p0 > 0");
    EntropyFormK out;
    const double dlnp = pd.dp0 / pd.p0;
    if (near_zero(pd.dp0, kDefaultTol, std::abs(pd.p0))) {
        out.degenerate = true;
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double ds = dlnp - gp.gamma * pd.drho0 / pd.rho0;
    out.value = -0.5 * ds / (std::pow(pd.rho0, gp.gamma + 1.0) * dlnp);
    return out;
}

// ---------------------------------------------------------------------------
// Window classification with adaptive refinement at safe/unsafe flips
// ---------------------------------------------------------------------------

namespace {

using PointFn = std::function<PointVerdict(double)>;

GlobalVerdict classify_window(double a, double b, const GridSpec& spec, const PointFn& at) {
    GlobalVerdict out;
    out.grid.a = a;
    out.grid.b = b;
    out.grid.initial_nodes = spec.nodes;
    out.grid.min_spacing = (b - a) / std::max(1, spec.nodes - 1);

    const std::vector<double> grid = uniform_grid(a, b, spec.nodes);
    out.table.reserve(grid.size());
    for (double x : grid) out.table.push_back(at(x));

    std::vector<PointVerdict> extra;
    const double floor_dx = (b - a) * spec.refine_frac;
    for (std::size_t i = 0; i + 1 < out.table.size(); ++i) {
        if (out.table[i].safe == out.table[i + 1].safe) continue;
        double lo = out.table[i].x, hi = out.table[i + 1].x;
        bool lo_safe = out.table[i].safe;
        while (hi - lo > floor_dx) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // spacing exhausted in fp
            PointVerdict pv = at(mid);
            extra.push_back(pv);
            if (pv.safe == lo_safe)
                lo = mid;
            else
                hi = mid;
        }
        out.grid.min_spacing = std::min(out.grid.min_spacing, hi - lo);
    }
    out.grid.refined_nodes = static_cast<int>(extra.size());

    std::vector<PointVerdict> all = out.table;
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end(),
              [](const PointVerdict& l, const PointVerdict& r) { return l.x < r.x; });
    for (const PointVerdict& pv : all)
        if (!pv.safe) out.witnesses.push_back(pv);
    out.smooth = out.witnesses.empty();
    return out;
}

std::optional<double> ode_blowup_T(const Indicators& ind, const GasParams& gp,
                                   const GridSpec& spec) {
    RState r0;
    r0.r1 = ind.r1;
    r0.r2 = ind.r2;
    r0.b = ind.k_infinite ? 0.0 : ind.b;  // R2 = 0: b never enters
    r0.gamma = gp.gamma;
    IntegrateOptions opt;
    opt.t_max = spec.ode_t_max;
    opt.rel_tol = spec.ode_tol;
    opt.abs_tol = spec.ode_tol * 1e-2;
    Trajectory tr = integrate(r0, opt);
    if (tr.outcome.kind == OutcomeKind::escaped) return blowup_time_estimate(tr).T;
    if (tr.outcome.kind == OutcomeKind::blowup_estimated && std::isfinite(tr.outcome.T))
        return tr.outcome.T;
    return std::nullopt;
}

void fill_predicted_T(GlobalVerdict& v, const GasParams& gp, const GridSpec& spec) {
    if (v.smooth || !spec.compute_predicted_T) return;
    std::optional<double> best;
    for (const PointVerdict& w : v.witnesses) {
        const std::optional<double> T = ode_blowup_T(w.ind, gp, spec);
        if (T && (!best || *T < *best)) best = T;
    }
    v.predicted_T = best;
}

}  // namespace

GlobalVerdict classify_profile(const Profile& pr, const GasParams& gp, const GridSpec& spec) {
    check_gas(gp);
    if (gp.gamma < 1.0)
        throw DomainError(
            "the smoothness classifier covers gamma >= 1; use the Chaplygin path for gamma = -1");
    const PointFn at = [&](double x) {
        PointVerdict v = classify_point(point_indicators(sample_point(pr, x), gp), gp, spec.tol);
        v.x = x;
        return v;
    };
    GlobalVerdict out = classify_window(pr.a, pr.b, spec, at);
    fill_predicted_T(out, gp, spec);
    return out;
}

GlobalVerdict classify_isentropic(const Profile& pr, const GasParams& gp, const GridSpec& spec) {
    check_gas(gp);
    if (!(gp.gamma > 1.0)) throw DomainError("isentropic oracle requires gamma > 1");
    const double g = gp.gamma;
    const PointFn at = [&, g](double x) {
        const dsl::Dual v = pr.v0.eval_d(x);
        const dsl::Dual r = pr.rho0.eval_d(x);
        if (!(r.v > 0.0)) throw DomainError("rho0 must be positive at x=" + std::to_string(x));
        PointVerdict out;
        out.x = x;
        out.ind.r1 = v.d;
        const double weight = std::pow(r.v, (g - 3.0) / 2.0);
        out.ind.r2 = near_zero(r.d, spec.tol, std::abs(r.v)) ? 0.0 : weight * r.d;
        out.ind.k = 0.0;
        out.ind.k_infinite = (out.ind.r2 == 0.0);
        out.ind.b = -(g - 1.0) / 2.0;
        // v0' >= rho0^((gamma-3)/2) |rho0'|, non-strict resolved safe
        out.safe = out.ind.r1 - std::abs(out.ind.r2) >= -spec.tol;
        if (out.ind.r2 == 0.0) {
            out.sets.set4 = out.ind.r1 >= -spec.tol;
        } else {
            out.sets.set3 = out.safe;
        }
        return out;
    };
    GlobalVerdict out = classify_window(pr.a, pr.b, spec, at);
    fill_predicted_T(out, gp, spec);
    return out;
}

GlobalVerdict classify_chaplygin(const Profile& pr, const GridSpec& spec) {
    const PointFn at = [&](double x) {
        const dsl::Dual v = pr.v0.eval_d(x);
        const dsl::Dual r = pr.rho0.eval_d(x);
        if (!(r.v > 0.0)) throw DomainError("rho0 must be positive at x=" + std::to_string(x));
        PointVerdict out;
        out.x = x;
        out.ind.r1 = v.d;
        // isentropic Chaplygin law p0 = -1/rho0: R2 = rho0'/rho0^2
        out.ind.r2 = r.d / (r.v * r.v);
        out.ind.k = 0.0;
        out.ind.b = 1.0;
        out.sets.chap = out.ind.r1 + std::abs(out.ind.r2) >= -spec.tol;
        out.safe = out.sets.chap;
        return out;
    };
    GlobalVerdict out = classify_window(pr.a, pr.b, spec, at);
    out.mode = VerdictMode::chaplygin_degeneracy;
    if (!out.smooth && spec.compute_predicted_T) {
        std::optional<double> best;
        for (const PointVerdict& w : out.witnesses) {
            const ChaplyginResult cr = chaplygin_solve(w.ind.r1, w.ind.r2, 0.0);
            if (cr.blows_up && (!best || cr.T < *best)) best = cr.T;
        }
        out.predicted_T = best;
    }
    return out;
}

}  // namespace gdblow
