#ifndef GDBLOW_XVAL_HPP
#define GDBLOW_XVAL_HPP

#include <optional>

#include "gdblow/report.hpp"

namespace gdblow {

// Test seam: lets the negative-control test corrupt the predicted time and
// watch the cross-check flag the discrepancy.
struct XvalHooks {
    std::optional<double> predicted_T_override;
};

GlobalVerdict classify_scenario(const Scenario& sc);

// Theorem verdict -> per-witness (or per-sample) ODE runs -> PDE runs on the
// configured grid ladder -> consistency status:
//   smooth   : every PDE run completes with max gradient <= 1.5x the
//              ODE-derived bound
//   blow-up  : the finest grid steepens at t within [0.5, 1.5] * predicted_T
Report cross_validate(const Scenario& sc, const XvalHooks& hooks = {});

// The classify-only report (verdict + indicator table + ODE witness summaries).
Report classify_report(const Scenario& sc);

// max over sampled rays of sup_t (|R1| + |R2|): bounds |dv/dx| transported
// along characteristics while the solution stays smooth.
double ode_gradient_bound(const Scenario& sc, const GlobalVerdict& verdict, double t_horizon);

std::vector<OdeSummary> ode_summaries(const Scenario& sc, const GlobalVerdict& verdict);

}  // namespace gdblow

#endif  // GDBLOW_XVAL_HPP
