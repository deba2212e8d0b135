#include "gdblow/profile.hpp"

#include <cmath>
#include <cstdio>

namespace gdblow {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Profile make_profile(const std::string& v0, const std::string& rho0, const std::string& p0,
                     double a, double b) {
    if (!(a < b)) throw DomainError("profile domain requires a < b");
    return Profile{dsl::Expr::parse(v0), dsl::Expr::parse(rho0), dsl::Expr::parse(p0), a, b};
}

PointData sample_point(const Profile& pr, double x) {
    const dsl::Dual v = pr.v0.eval_d(x);
    const dsl::Dual r = pr.rho0.eval_d(x);
    const dsl::Dual p = pr.p0.eval_d(x);
    if (!(r.v > 0.0))
        throw DomainError("rho0 must be positive, got " + fmt17(r.v) + " at x=" + fmt17(x));
    if (!(p.v > 0.0))
        throw DomainError("p0 must be positive, got " + fmt17(p.v) + " at x=" + fmt17(x));
    return PointData{x, v.v, r.v, p.v, v.d, r.d, p.d};
}

std::vector<PointData> sample_profile(const Profile& pr, const std::vector<double>& grid) {
    std::vector<PointData> out;
    out.reserve(grid.size());
    double prev = pr.a - 1.0;
    for (double x : grid) {
        if (x < pr.a || x > pr.b)
            throw DomainError("grid node x=" + fmt17(x) + " outside profile domain");
        if (!(x > prev) && !out.empty())
            throw DomainError("grid must be strictly increasing");
        prev = x;
        out.push_back(sample_point(pr, x));
    }
    return out;
}

std::vector<double> uniform_grid(double a, double b, int nodes) {
    if (nodes < 2) throw DomainError("grid needs at least 2 nodes");
    std::vector<double> g(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i)
        g[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / (nodes - 1);
    g.back() = b;
    return g;
}

std::string isentropic_pressure_text(const std::string& rho0_text, double gamma) {
    return "(" + rho0_text + ")^" + fmt17(gamma) + "/" + fmt17(gamma);
}

Profile preset_profile(const std::string& name, const GasParams& gp) {
    if (name == "constant") return make_profile("0", "1", "1", -1.0, 1.0);
    if (name == "gaussian-bump")
        return make_profile("0", "1 + 0.1*exp(-x^2)",
                            isentropic_pressure_text("1 + 0.1*exp(-x^2)", gp.gamma), -2.0, 2.0);
    if (name == "exp-family") {
        check_gas(gp);
        const double k = 1.0 + 2.0 / gp.gamma;
        return make_profile("-10*x*exp(-x^2)", "exp(" + fmt17(k) + "*x)", "exp(x)", -2.0, 2.0);
    }
    throw ConfigError("unknown profile preset '" + name + "'");
}

}  // namespace gdblow
