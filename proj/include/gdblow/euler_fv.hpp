#ifndef GDBLOW_EULER_FV_HPP
#define GDBLOW_EULER_FV_HPP

#include <optional>
#include <vector>

#include "gdblow/gas.hpp"
#include "gdblow/profile.hpp"

namespace gdblow::fv {

enum class Boundary { periodic, farfield };

// Conserved-variable field (rho, rho v, E) on uniform cells over [a, b],
// E = p/(gamma-1) + rho v^2/2. Requires gamma > 1. Positivity of rho and p
// is checked after every step; a violation aborts the run with the cell and
// time rather than being clipped.
struct GridState {
    double a = -1.0, b = 1.0;
    double h = 0.0;
    double t = 0.0;
    Boundary bc = Boundary::periodic;
    std::vector<double> rho, mom, ener;
    // accumulated boundary gain of mass/momentum (zero for periodic runs)
    double bgain_mass = 0.0, bgain_mom = 0.0;

    int cells() const { return static_cast<int>(rho.size()); }
    double x_center(int i) const { return a + (i + 0.5) * h; }
};

// Midpoint sampling of the profile into cell averages. cells >= 16.
GridState init_grid(const Profile& pr, const GasParams& gp, int cells, Boundary bc);

double stable_dt(const GridState& g, const GasParams& gp, double cfl);

// One MUSCL/minmod + local Lax-Friedrichs step with two-stage second-order
// time integration. Throws BreakdownError on positivity loss.
GridState step(const GridState& g, const GasParams& gp, double cfl);
void step_dt(GridState& g, const GasParams& gp, double dt);

struct GradientSample {
    double t = 0.0;
    double dvdx_max = 0.0;
    double dpdx_max = 0.0;
    double x_argmax = 0.0;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> x, rho, v, p, S;
};

struct SimOptions {
    int cells = 512;
    double cfl = 0.4;
    double t_end = 1.0;
    Boundary bc = Boundary::periodic;
    std::vector<double> snapshot_times;  // t_end is always snapshotted
    double steepen_factor = 10.0;        // t_steepen: first t with dvdx > factor * initial
};

struct SimResult {
    std::vector<Snapshot> snapshots;
    std::vector<GradientSample> history;
    std::optional<double> t_steepen;
    bool breakdown = false;
    double breakdown_t = 0.0;
    int breakdown_cell = -1;
    // conservation bookkeeping (boundary gain already subtracted)
    double mass_defect_rel = 0.0;
    double momentum_defect_rel = 0.0;
    double max_dvdx = 0.0;
};

SimResult simulate(const Profile& pr, const GasParams& gp, const SimOptions& opt);

// Cell-centered primitives for inspection and snapshot output.
PrimitiveState cell_state(const GridState& g, const GasParams& gp, int i);

}  // namespace gdblow::fv

#endif  // GDBLOW_EULER_FV_HPP
