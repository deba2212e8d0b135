#include "gdblow/xval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gdblow {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

GridSpec grid_spec(const Scenario& sc) {
    GridSpec g = sc.grid;
    g.ode_t_max = std::max(g.ode_t_max, sc.ode_t_max);
    g.ode_tol = sc.ode_tol;
    return g;
}

OdeSummary summarize(double x, const Trajectory& tr) {
    OdeSummary s;
    s.x = x;
    s.outcome = outcome_name(tr.outcome.kind);
    s.c_drift = tr.c_drift;
    for (const auto& y : tr.y) {
        s.max_r1 = std::max(s.max_r1, std::abs(y[0]));
        s.max_r2 = std::max(s.max_r2, std::abs(y[1]));
    }
    if (tr.outcome.kind == OutcomeKind::escaped) {
        const BlowupEstimate est = blowup_time_estimate(tr);
        s.T = est.T;
        s.bracket_lo = est.bracket_lo;
        s.bracket_hi = est.bracket_hi;
        s.low_confidence = est.low_confidence;
    } else if (tr.outcome.kind == OutcomeKind::blowup_estimated) {
        s.T = tr.outcome.T;
        s.bracket_lo = tr.outcome.bracket_lo;
        s.bracket_hi = tr.outcome.bracket_hi;
        s.low_confidence = tr.outcome.low_confidence;
    }
    return s;
}

Trajectory run_ode(const Indicators& ind, double gamma, double t_max, double tol,
                   double escape = 1e8) {
    RState r0;
    r0.r1 = ind.r1;
    r0.r2 = ind.r2;
    r0.b = ind.k_infinite ? 0.0 : ind.b;
    r0.gamma = gamma;
    IntegrateOptions opt;
    opt.t_max = t_max;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    opt.escape_threshold = escape;
    return integrate(r0, opt);
}

}  // namespace

GlobalVerdict classify_scenario(const Scenario& sc) {
    const Profile pr = scenario_profile(sc);
    if (sc.gamma == -1.0) return classify_chaplygin(pr, grid_spec(sc));
    return classify_profile(pr, GasParams{sc.gamma}, grid_spec(sc));
}

std::vector<OdeSummary> ode_summaries(const Scenario& sc, const GlobalVerdict& verdict) {
    std::vector<OdeSummary> out;
    if (sc.gamma == -1.0) return out;  // closed forms live in the verdict itself
    if (!verdict.smooth) {
        for (const PointVerdict& w : verdict.witnesses) {
            out.push_back(summarize(w.x, run_ode(w.ind, sc.gamma, sc.ode_t_max, sc.ode_tol)));
        }
    } else {
        for (const PointVerdict& pv : verdict.table) {
            out.push_back(summarize(pv.x, run_ode(pv.ind, sc.gamma, sc.ode_t_max, sc.ode_tol)));
        }
    }
    return out;
}

double ode_gradient_bound(const Scenario& sc, const GlobalVerdict& verdict, double t_horizon) {
    double bound = 0.0;
    for (const PointVerdict& pv : verdict.table) {
        const Trajectory tr = run_ode(pv.ind, sc.gamma, t_horizon, sc.ode_tol);
        for (const auto& y : tr.y)
            bound = std::max(bound, std::abs(y[0]) + std::abs(y[1]));
    }
    return bound;
}

Report classify_report(const Scenario& sc) {
    Report rep;
    rep.scenario = sc;
    rep.verdict = classify_scenario(sc);
    rep.ode = ode_summaries(sc, rep.verdict);
    return rep;
}

Report cross_validate(const Scenario& sc, const XvalHooks& hooks) {
    Report rep = classify_report(sc);
    if (hooks.predicted_T_override) rep.verdict.predicted_T = hooks.predicted_T_override;

    if (sc.gamma <= 1.0) {
        rep.xval.status = "NotRun";
        rep.xval.details.push_back(
            "PDE cross-check requires gamma > 1 (total-energy finite-volume form)");
        return rep;
    }

    const Profile pr = scenario_profile(sc);
    const GasParams gp{sc.gamma};

    std::vector<int> cells = sc.xval_cells;
    std::sort(cells.begin(), cells.end());
    bool all_completed = true;
    std::optional<double> finest_steepen;
    double finest_maxdvdx = 0.0;
    for (int c : cells) {
        fv::SimOptions opt;
        opt.cells = c;
        opt.cfl = sc.pde_cfl;
        opt.t_end = sc.pde_t_end;
        opt.bc = sc.pde_boundary;
        const fv::SimResult res = fv::simulate(pr, gp, opt);
        PdeGridSummary s;
        s.cells = c;
        s.t_steepen = res.t_steepen;
        s.max_dvdx = res.max_dvdx;
        s.breakdown = res.breakdown;
        s.breakdown_t = res.breakdown_t;
        s.breakdown_cell = res.breakdown_cell;
        s.mass_defect_rel = res.mass_defect_rel;
        s.momentum_defect_rel = res.momentum_defect_rel;
        rep.pde.push_back(s);
        all_completed = all_completed && !res.breakdown;
        finest_steepen = res.t_steepen;
        finest_maxdvdx = res.max_dvdx;
    }

    if (rep.verdict.smooth) {
        const double bound = ode_gradient_bound(sc, rep.verdict, sc.pde_t_end);
        rep.ode_gradient_bound = bound;
        const bool gradient_ok = finest_maxdvdx <= 1.5 * bound;
        if (all_completed && gradient_ok) {
            rep.xval.status = "Consistent";
            rep.xval.details.push_back("smooth verdict; max PDE gradient " +
                                       fmt(finest_maxdvdx) + " within 1.5x ODE bound " +
                                       fmt(bound));
        } else {
            rep.xval.status = "Discrepant";
            if (!all_completed) rep.xval.details.push_back("smooth verdict but a PDE run broke down");
            if (!gradient_ok)
                rep.xval.details.push_back("smooth verdict but max PDE gradient " +
                                           fmt(finest_maxdvdx) + " exceeds 1.5x ODE bound " +
                                           fmt(bound));
        }
        return rep;
    }

    // blow-up predicted
    if (!rep.verdict.predicted_T) {
        rep.xval.status = "Discrepant";
        rep.xval.details.push_back("blow-up verdict but no ray produced a time estimate");
        return rep;
    }
    const double T = *rep.verdict.predicted_T;
    if (!finest_steepen) {
        rep.xval.status = "Discrepant";
        rep.xval.details.push_back("blow-up predicted at T=" + fmt(T) +
                                   " but the finest grid never steepened");
        if (sc.pde_t_end < 1.5 * T)
            rep.xval.details.push_back("pde.t_end=" + fmt(sc.pde_t_end) +
                                       " does not cover the prediction window; extend it past " +
                                       fmt(1.5 * T));
        return rep;
    }
    const double ts = *finest_steepen;
    if (ts >= 0.5 * T && ts <= 1.5 * T) {
        rep.xval.status = "Consistent";
        rep.xval.details.push_back("t_steepen=" + fmt(ts) + " within [0.5,1.5]*predicted_T=" +
                                   fmt(T) + " on the finest grid");
    } else {
        rep.xval.status = "Discrepant";
        rep.xval.details.push_back("t_steepen=" + fmt(ts) + " outside [0.5,1.5]*predicted_T=" +
                                   fmt(T));
    }
    return rep;
}

}  // namespace gdblow
