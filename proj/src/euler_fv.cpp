#include "gdblow/euler_fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gdblow::fv {

namespace {

struct Prim {
    double rho, v, p;
};

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

Prim to_prim(double rho, double mom, double ener, double gamma) {
    const double v = mom / rho;
    const double p = (gamma - 1.0) * (ener - 0.5 * mom * v);
    return {rho, v, p};
}

struct Flux {
    double mass, mom, ener;
};

Flux physical_flux(const Prim& w, double gamma) {
    const double e = w.p / (gamma - 1.0) + 0.5 * w.rho * w.v * w.v;
    return {w.rho * w.v, w.rho * w.v * w.v + w.p, w.v * (e + w.p)};
}

Flux rusanov(const Prim& wl, const Prim& wr, double gamma) {
    const Flux fl = physical_flux(wl, gamma);
    const Flux fr = physical_flux(wr, gamma);
    const double cl = std::sqrt(gamma * wl.p / wl.rho);
    const double cr = std::sqrt(gamma * wr.p / wr.rho);
    const double alpha = std::max(std::abs(wl.v) + cl, std::abs(wr.v) + cr);
    const double el = wl.p / (gamma - 1.0) + 0.5 * wl.rho * wl.v * wl.v;
    const double er = wr.p / (gamma - 1.0) + 0.5 * wr.rho * wr.v * wr.v;
    return {0.5 * (fl.mass + fr.mass) - 0.5 * alpha * (wr.rho - wl.rho),
            0.5 * (fl.mom + fr.mom) - 0.5 * alpha * (wr.rho * wr.v - wl.rho * wl.v),
            0.5 * (fl.ener + fr.ener) - 0.5 * alpha * (er - el)};
}

// Primitive fields with two ghost cells per side.
struct Padded {
    std::vector<double> rho, v, p;  // size n + 4, cell i at index i + 2
    int n;
};

Padded gather(const GridState& g, const GasParams& gp) {
    const int n = g.cells();
    Padded w;
    w.n = n;
    w.rho.resize(n + 4);
    w.v.resize(n + 4);
    w.p.resize(n + 4);
    for (int i = 0; i < n; ++i) {
        const Prim pr = to_prim(g.rho[i], g.mom[i], g.ener[i], gp.gamma);
        w.rho[i + 2] = pr.rho;
        w.v[i + 2] = pr.v;
        w.p[i + 2] = pr.p;
    }
    auto src = [&](int i) {
        if (g.bc == Boundary::periodic) return ((i % n) + n) % n;
        return std::clamp(i, 0, n - 1);  // constant-extrapolation far field
    };
    for (int k = 0; k < 2; ++k) {
        const int lo = src(-1 - k), hi = src(n + k);
        w.rho[1 - k] = w.rho[lo + 2];
        w.v[1 - k] = w.v[lo + 2];
        w.p[1 - k] = w.p[lo + 2];
        w.rho[n + 2 + k] = w.rho[hi + 2];
        w.v[n + 2 + k] = w.v[hi + 2];
        w.p[n + 2 + k] = w.p[hi + 2];
    }
    return w;
}

// Net time derivative of the conserved fields plus the two boundary fluxes.
struct Rhs {
    std::vector<double> rho, mom, ener;
    Flux left, right;
};

Rhs rhs(const GridState& g, const GasParams& gp) {
    const int n = g.cells();
    const Padded w = gather(g, gp);
    auto recon = [](const std::vector<double>& q, int j, double& ql, double& qr) {
        // face values of cell j (padded index): minmod-limited linear slope
        const double s = minmod(q[j] - q[j - 1], q[j + 1] - q[j]);
        ql = q[j] - 0.5 * s;
        qr = q[j] + 0.5 * s;
    };
    // per-cell reconstructed face values
    std::vector<double> rl(n + 2), rr(n + 2), vl(n + 2), vr(n + 2), pl(n + 2), pr(n + 2);
    for (int j = 0; j < n + 2; ++j) {
        recon(w.rho, j + 1, rl[j], rr[j]);
        recon(w.v, j + 1, vl[j], vr[j]);
        recon(w.p, j + 1, pl[j], pr[j]);
    }
    std::vector<Flux> f(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        // interface i-1/2 sits between padded cells i+1 and i+2
        const Prim wl{rr[i], vr[i], pr[i]};
        const Prim wr{rl[i + 1], vl[i + 1], pl[i + 1]};
        f[static_cast<std::size_t>(i)] = rusanov(wl, wr, gp.gamma);
    }
    Rhs out;
    out.rho.resize(n);
    out.mom.resize(n);
    out.ener.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& fa = f[static_cast<std::size_t>(i)];
        const auto& fb = f[static_cast<std::size_t>(i) + 1];
        out.rho[i] = -(fb.mass - fa.mass) / g.h;
        out.mom[i] = -(fb.mom - fa.mom) / g.h;
        out.ener[i] = -(fb.ener - fa.ener) / g.h;
    }
    out.left = f.front();
    out.right = f.back();
    return out;
}

void check_positivity(const GridState& g, const GasParams& gp) {
    const int n = g.cells();
    for (int i = 0; i < n; ++i) {
        const Prim pr = to_prim(g.rho[i], g.mom[i], g.ener[i], gp.gamma);
        if (!(pr.rho > 0.0) || !std::isfinite(pr.rho))
            throw BreakdownError(g.t, i, "density positivity lost");
        if (!(pr.p > 0.0) || !std::isfinite(pr.p))
            throw BreakdownError(g.t, i, "pressure positivity lost");
    }
}

}  // namespace

GridState init_grid(const Profile& pr, const GasParams& gp, int cells, Boundary bc) {
    check_gas(gp);
    if (gp.gamma <= 1.0)
        throw DomainError("finite-volume solver requires gamma > 1 (total-energy form)");
    if (cells < 16) throw DomainError("finite-volume grid needs at least 16 cells");
    GridState g;
    g.a = pr.a;
    g.b = pr.b;
    g.h = (pr.b - pr.a) / cells;
    g.bc = bc;
    g.rho.resize(cells);
    g.mom.resize(cells);
    g.ener.resize(cells);
    for (int i = 0; i < cells; ++i) {
        const PointData pd = sample_point(pr, g.x_center(i));
        g.rho[i] = pd.rho0;
        g.mom[i] = pd.rho0 * pd.v0;
        g.ener[i] = pd.p0 / (gp.gamma - 1.0) + 0.5 * pd.rho0 * pd.v0 * pd.v0;
    }
    return g;
}

double stable_dt(const GridState& g, const GasParams& gp, double cfl) {
    if (!(cfl > 0.0) || cfl > 0.5) throw DomainError("cfl must lie in (0, 0.5]");
    double smax = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
        const Prim pr = to_prim(g.rho[i], g.mom[i], g.ener[i], gp.gamma);
        smax = std::max(smax, std::abs(pr.v) + std::sqrt(gp.gamma * pr.p / pr.rho));
    }
    if (!(smax > 0.0) || !std::isfinite(smax))
        throw DomainError("cannot form a stable step from this state");
    return cfl * g.h / smax;
}

void step_dt(GridState& g, const GasParams& gp, double dt) {
    const int n = g.cells();
    const Rhs r1 = rhs(g, gp);
    GridState mid = g;
    for (int i = 0; i < n; ++i) {
        mid.rho[i] = g.rho[i] + dt * r1.rho[i];
        mid.mom[i] = g.mom[i] + dt * r1.mom[i];
        mid.ener[i] = g.ener[i] + dt * r1.ener[i];
    }
    mid.t = g.t + dt;
    check_positivity(mid, gp);
    const Rhs r2 = rhs(mid, gp);
    for (int i = 0; i < n; ++i) {
        g.rho[i] = 0.5 * (g.rho[i] + mid.rho[i] + dt * r2.rho[i]);
        g.mom[i] = 0.5 * (g.mom[i] + mid.mom[i] + dt * r2.mom[i]);
        g.ener[i] = 0.5 * (g.ener[i] + mid.ener[i] + dt * r2.ener[i]);
    }
    g.t += dt;
    g.bgain_mass += 0.5 * dt * ((r1.left.mass - r1.right.mass) + (r2.left.mass - r2.right.mass));
    g.bgain_mom += 0.5 * dt * ((r1.left.mom - r1.right.mom) + (r2.left.mom - r2.right.mom));
    check_positivity(g, gp);
}

GridState step(const GridState& g, const GasParams& gp, double cfl) {
    GridState out = g;
    step_dt(out, gp, stable_dt(g, gp, cfl));
    return out;
}

PrimitiveState cell_state(const GridState& g, const GasParams& gp, int i) {
    const Prim pr = to_prim(g.rho[i], g.mom[i], g.ener[i], gp.gamma);
    return PrimitiveState{pr.v, pr.rho, pr.p};
}

namespace {

GradientSample measure_gradients(const GridState& g, const GasParams& gp) {
    GradientSample s;
    s.t = g.t;
    const int n = g.cells();
    double prev_v = 0.0, prev_p = 0.0;
    for (int i = 0; i < n; ++i) {
        const Prim pr = to_prim(g.rho[i], g.mom[i], g.ener[i], gp.gamma);
        if (i > 0) {
            const double dv = std::abs(pr.v - prev_v) / g.h;
            const double dp = std::abs(pr.p - prev_p) / g.h;
            if (dv > s.dvdx_max) {
                s.dvdx_max = dv;
                s.x_argmax = g.a + i * g.h;  // interface location
            }
            s.dpdx_max = std::max(s.dpdx_max, dp);
        }
        prev_v = pr.v;
        prev_p = pr.p;
    }
    return s;
}

Snapshot take_snapshot(const GridState& g, const GasParams& gp) {
    Snapshot s;
    s.t = g.t;
    const int n = g.cells();
    s.x.resize(n);
    s.rho.resize(n);
    s.v.resize(n);
    s.p.resize(n);
    s.S.resize(n);
    for (int i = 0; i < n; ++i) {
        const PrimitiveState st = cell_state(g, gp, i);
        s.x[i] = g.x_center(i);
        s.rho[i] = st.rho;
        s.v[i] = st.v;
        s.p[i] = st.p;
        s.S[i] = entropy(st, gp);
    }
    return s;
}

}  // namespace

SimResult simulate(const Profile& pr, const GasParams& gp, const SimOptions& opt) {
    SimResult res;
    GridState g = init_grid(pr, gp, opt.cells, opt.bc);
    const double mass0 = std::accumulate(g.rho.begin(), g.rho.end(), 0.0) * g.h;
    const double mom0 = std::accumulate(g.mom.begin(), g.mom.end(), 0.0) * g.h;

    std::vector<double> snaps = opt.snapshot_times;
    snaps.push_back(opt.t_end);
    std::sort(snaps.begin(), snaps.end());

    GradientSample g0 = measure_gradients(g, gp);
    res.history.push_back(g0);
    res.max_dvdx = g0.dvdx_max;
    // flat data never triggers the steepening detector
    const double steepen_threshold =
        (g0.dvdx_max > 1e-12) ? opt.steepen_factor * g0.dvdx_max
                              : std::numeric_limits<double>::infinity();

    std::size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= g.t) ++next_snap;

    try {
        while (g.t < opt.t_end) {
            double dt = stable_dt(g, gp, opt.cfl);
            if (next_snap < snaps.size() && g.t + dt >= snaps[next_snap])
                dt = snaps[next_snap] - g.t;
            if (g.t + dt > opt.t_end) dt = opt.t_end - g.t;
            if (dt <= 1e-15 * std::max(1.0, g.t)) {
                // degenerate clip (coincident snapshot times)
                ++next_snap;
                continue;
            }
            step_dt(g, gp, dt);
            const GradientSample gs = measure_gradients(g, gp);
            res.history.push_back(gs);
            res.max_dvdx = std::max(res.max_dvdx, gs.dvdx_max);
            if (!res.t_steepen && gs.dvdx_max > steepen_threshold) res.t_steepen = gs.t;
            while (next_snap < snaps.size() && g.t >= snaps[next_snap] - 1e-14) {
                res.snapshots.push_back(take_snapshot(g, gp));
                ++next_snap;
            }
        }
    } catch (const BreakdownError& e) {
        res.breakdown = true;
        res.breakdown_t = e.t;
        res.breakdown_cell = e.cell;
        try {
            res.snapshots.push_back(take_snapshot(g, gp));
        } catch (const DomainError&) {
            // post-breakdown state has no valid entropy; keep the history only
        }
    }

    const double mass1 = std::accumulate(g.rho.begin(), g.rho.end(), 0.0) * g.h;
    const double mom1 = std::accumulate(g.mom.begin(), g.mom.end(), 0.0) * g.h;
    res.mass_defect_rel = std::abs(mass1 - mass0 - g.bgain_mass) / std::max(1e-30, std::abs(mass0));
    res.momentum_defect_rel =
        std::abs(mom1 - mom0 - g.bgain_mom) / std::max(1.0, std::abs(mom0));
    return res;
}

}  // namespace gdblow::fv
