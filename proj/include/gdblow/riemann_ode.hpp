#ifndef GDBLOW_RIEMANN_ODE_HPP
#define GDBLOW_RIEMANN_ODE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gdblow/gas.hpp"

namespace gdblow {

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

// Characteristic slope combinations of the spatial derivatives of
// (v, tau, p) with tau = 1/rho:
//   P1 = v' - p'/s,  P2 = s*tau' + p'/s,  P3 = v' + p'/s,  s = sqrt(gamma p rho).
// Along trajectories with P1 != P3 the ratio P2/(P1-P3) is constant.
struct PVector {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

// Spatial derivatives of the primitive fields at a point.
struct SpatialSlopes {
    double dv = 0.0;
    double drho = 0.0;
    double dp = 0.0;
};

// Reduced slope variables R1 = (P1+P3)/2, R2 = (P3-P1)/2 with the trajectory
// constant b. sign(R2) is invariant along trajectories; R2 = 0 is the pure
// Riccati branch where b is irrelevant.
struct RState {
    double r1 = 0.0;
    double r2 = 0.0;
    double b = 0.0;
    double gamma = 1.4;
};

// State transported along the joint ray: (u1,u2,u3) = (v, tau, p) plus the
// three slopes. Valid while u2 > 0 and u3 > 0.
struct RayState {
    double u1 = 0.0;
    double u2 = 1.0;
    double u3 = 1.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

// ---------------------------------------------------------------------------
// Right-hand sides and algebra
// ---------------------------------------------------------------------------

PVector riemann_slopes(const PrimitiveState& s, const SpatialSlopes& d, const GasParams& gp);

struct RReduction {
    double r1 = 0.0;
    double r2 = 0.0;
    double k = 0.0;
    bool k_infinite = false;       // P1 == P3 but P2 != 0
    bool k_indeterminate = false;  // P1 == P3 and P2 == 0 (R2 = 0 routing)
};
RReduction reduce_to_R(const PVector& p);

// Quadratic slope dynamics dP/dt.
PVector rhs_P(const PVector& p, const GasParams& gp);

// Reduced dynamics: dR1/dt = -R1^2 + b R2^2, dR2/dt = -((gamma+1)/2) R1 R2.
std::array<double, 2> rhs_R(const RState& r);

// Six-component ray dynamics (du1,du2,du3,dP1,dP2,dP3).
RayState rhs_augmented_ray(const RayState& s, const GasParams& gp);

// Conserved quantity along R-trajectories with R2 != 0:
//   gamma != 1:  C = (R1^2 + (2b/(gamma-1)) R2^2) |R2|^(-4/(gamma+1))
//   gamma == 1:  C = R1^2/R2^2 + 2 b ln|R2|
// Degenerate for R2 = 0 or gamma = -1.
struct FirstIntegral {
    double c = 0.0;
    bool degenerate = false;
};
FirstIntegral first_integral(const RState& r);

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

enum class OutcomeKind { bounded, escaped, blowup_estimated };

struct Outcome {
    OutcomeKind kind = OutcomeKind::bounded;
    double t_final = 0.0;
    // filled for blowup_estimated
    double T = std::numeric_limits<double>::quiet_NaN();
    double bracket_lo = std::numeric_limits<double>::quiet_NaN();
    double bracket_hi = std::numeric_limits<double>::quiet_NaN();
    bool low_confidence = false;
};

struct IntegrateOptions {
    double t_max = 100.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double escape_threshold = 1e8;
    std::vector<double> sample_times;  // ascending; the stepper lands on these
};

struct Trajectory {
    double b = 0.0;
    double gamma = 1.4;
    std::vector<double> t;
    std::vector<std::array<double, 2>> y;  // (R1, R2)
    double c_drift = 0.0;                  // sup|C - C0| / max(1, |C0|)
    Outcome outcome;
};

struct PTrajectory {
    double gamma = 1.4;
    std::vector<double> t;
    std::vector<std::array<double, 3>> y;  // (P1, P2, P3)
    double k_drift = 0.0;                  // drift of P2/(P1-P3) where defined
    Outcome outcome;
};

struct RayTrajectory {
    double gamma = 1.4;
    std::vector<double> t;
    std::vector<std::array<double, 6>> y;  // (u1,u2,u3,P1,P2,P3)
    Outcome outcome;
};

Trajectory integrate(const RState& r0, double t_max, double tol);
Trajectory integrate(const RState& r0, const IntegrateOptions& opt);
PTrajectory integrate_p(const PVector& p0, const GasParams& gp, const IntegrateOptions& opt);
RayTrajectory integrate_ray(const RayState& s0, const GasParams& gp, const IntegrateOptions& opt);

// Extrapolated blow-up time from an escaped trajectory. The escape tail of
// both components is quadratic (the slope ratio tends to a constant), so the
// reciprocal of the dominant component is regressed linearly against t over
// the last decade of growth; with R2 = 0 the reciprocal form is exact.
struct BlowupEstimate {
    double T = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool low_confidence = false;
};
BlowupEstimate blowup_time_estimate(const Trajectory& traj);

// One trajectory per seed, integrated forward (and backward when the forward
// leg stays bounded) so the polyline shows the full phase curve.
struct PortraitSeed {
    double r1 = 0.0;
    double r2 = 0.0;
};
std::vector<Trajectory> phase_portrait(double b, const GasParams& gp,
                                       const std::vector<PortraitSeed>& seeds,
                                       const IntegrateOptions& opt = {});

// gamma = -1: R2 is frozen and R1 obeys a constant-coefficient Riccati
// equation with b = 1 + K0. Closed forms for every sign of b R2^2.
struct ChaplyginResult {
    bool blows_up = false;
    double T = std::numeric_limits<double>::quiet_NaN();
    double b = 1.0;
    double r2 = 0.0;
};
ChaplyginResult chaplygin_solve(double r1_0, double r2_0, double k0);

}  // namespace gdblow

#endif  // GDBLOW_RIEMANN_ODE_HPP
