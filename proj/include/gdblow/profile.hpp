#ifndef GDBLOW_PROFILE_HPP
#define GDBLOW_PROFILE_HPP

#include <string>
#include <vector>

#include "gdblow/expr.hpp"
#include "gdblow/gas.hpp"

namespace gdblow {

// Cauchy data (v0, rho0, p0) as differentiable expressions over [a, b].
// rho0 and p0 must be strictly positive on the window; violations are hard
// input errors, not warnings. The verdict produced from a Profile is always
// relative to this finite window.
struct Profile {
    dsl::Expr v0;
    dsl::Expr rho0;
    dsl::Expr p0;
    double a = -1.0;
    double b = 1.0;
};

Profile make_profile(const std::string& v0, const std::string& rho0, const std::string& p0,
                     double a, double b);

// Data and exact first derivatives at one grid node.
struct PointData {
    double x = 0.0;
    double v0 = 0.0, rho0 = 1.0, p0 = 1.0;
    double dv0 = 0.0, drho0 = 0.0, dp0 = 0.0;
};

PointData sample_point(const Profile& pr, double x);

// Evaluates every node; fails atomically on the first positivity violation
// or evaluation fault. `grid` must be strictly increasing within [a, b].
std::vector<PointData> sample_profile(const Profile& pr, const std::vector<double>& grid);

std::vector<double> uniform_grid(double a, double b, int nodes);

// Named profile families used by the worked examples: "constant",
// "gaussian-bump", "exp-family" (p0 = exp(x), rho0 = exp((1+2/gamma) x),
// globally smooth for any initial velocity when gamma >= 1).
Profile preset_profile(const std::string& name, const GasParams& gp);

// Text for an isentropic pressure law p0 = rho0^gamma / gamma built from a
// density expression, suitable for Expr::parse.
std::string isentropic_pressure_text(const std::string& rho0_text, double gamma);

}  // namespace gdblow

#endif  // GDBLOW_PROFILE_HPP
