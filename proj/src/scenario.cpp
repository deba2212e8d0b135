#include "gdblow/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gdblow/toml_lite.hpp"

namespace gdblow {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Scenario make_preset(const std::string& name, double gamma, bool gamma_given) {
    Scenario sc;
    sc.name = name;
    if (name == "constant") {
        sc.gamma = gamma_given ? gamma : 1.4;
        sc.a = -1.0;
        sc.b = 1.0;
        sc.v0 = "0";
        sc.rho0 = "1";
        sc.p0 = "1";
        sc.pde_t_end = 5.0;
        sc.pde_boundary = fv::Boundary::periodic;
        return sc;
    }
    if (name == "remark1") {
        // pressure/density pair with b(x) = 1 everywhere: smooth for any v0
        sc.gamma = gamma_given ? gamma : 1.4;
        check_gas(GasParams{sc.gamma});
        sc.a = -2.0;
        sc.b = 2.0;
        sc.v0 = "-10*x*exp(-x^2)";
        sc.rho0 = "exp(" + fmt17(1.0 + 2.0 / sc.gamma) + "*x)";
        sc.p0 = "exp(x)";
        sc.pde_t_end = 3.0;
        sc.pde_cells = 1024;
        sc.pde_boundary = fv::Boundary::farfield;
        return sc;
    }
    if (name == "linear-compression") {
        // Left-moving compression (a simple wave: the outgoing invariant and
        // the entropy are uniform), locally linear at the origin and
        // flattened toward the window edges. The steepest slope is
        // -2/(gamma+1), which puts the gradient catastrophe at exactly t = 1.
        sc.gamma = gamma_given ? gamma : 1.4;
        if (!(sc.gamma > 1.0))
            throw ConfigError("linear-compression preset requires gamma > 1");
        sc.a = -6.0;
        sc.b = 4.0;
        const double g = sc.gamma;
        sc.v0 = "-" + fmt17(2.0 / (g + 1.0)) + "*x*exp(-(x/2)^2)";
        // sound speed c = ((gamma-1)/2) (K0 - v) with K0 = 2/(gamma-1), so
        // c(0) = 1; rho = c^(2/(gamma-1)), p = rho^gamma/gamma
        const std::string c_text =
            "(" + fmt17((g - 1.0) / 2.0) + "*(" + fmt17(2.0 / (g - 1.0)) + " - (" + sc.v0 + ")))";
        sc.rho0 = c_text + "^" + fmt17(2.0 / (g - 1.0));
        sc.p0 = c_text + "^" + fmt17(2.0 * g / (g - 1.0)) + "/" + fmt17(g);
        sc.pde_t_end = 1.5;
        sc.pde_boundary = fv::Boundary::farfield;
        return sc;
    }
    if (name == "isentropic-bump") {
        sc.gamma = gamma_given ? gamma : 1.4;
        sc.a = -2.0;
        sc.b = 2.0;
        sc.v0 = "0";
        sc.rho0 = "1 + 0.1*exp(-x^2)";
        sc.p0 = isentropic_pressure_text(sc.rho0, sc.gamma);
        sc.pde_t_end = 1.0;
        sc.pde_boundary = fv::Boundary::farfield;
        return sc;
    }
    if (name == "chaplygin-demo") {
        // gamma = -1; p0 is ignored by the Chaplygin classifier (p = -1/rho)
        sc.gamma = -1.0;
        sc.a = -2.0;
        sc.b = 2.0;
        sc.v0 = "-0.5*tanh(x)";
        sc.rho0 = "1 + 0.2*exp(-x^2)";
        sc.p0 = "1";
        return sc;
    }
    if (name == "isothermal-demo") {
        // gamma = 1 variant of the remark1 family, again with b(x) = 1
        sc.gamma = 1.0;
        sc.a = -2.0;
        sc.b = 2.0;
        sc.v0 = "-x";
        sc.rho0 = "exp(3*x)";
        sc.p0 = "exp(x)";
        return sc;
    }
    std::string known;
    for (const std::string& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

fv::Boundary parse_boundary(const std::string& s) {
    if (s == "periodic") return fv::Boundary::periodic;
    if (s == "farfield") return fv::Boundary::farfield;
    throw ConfigError("pde.boundary must be \"periodic\" or \"farfield\", got \"" + s + "\"");
}

void validate(const Scenario& sc) {
    check_gas(GasParams{sc.gamma});
    if (!(sc.a < sc.b)) throw ConfigError("domain must satisfy a < b");
    if (sc.grid.nodes < 2) throw ConfigError("grid.nodes must be at least 2");
    if (!(sc.grid.tol > 0.0)) throw ConfigError("grid.tol must be positive");
    if (!(sc.grid.refine_frac > 0.0)) throw ConfigError("grid.refine_frac must be positive");
    if (!(sc.ode_tol > 0.0)) throw ConfigError("ode.tol must be positive");
    if (!(sc.ode_t_max > 0.0)) throw ConfigError("ode.t_max must be positive");
    if (sc.pde_cells < 16) throw ConfigError("pde.cells must be at least 16");
    if (!(sc.pde_cfl > 0.0) || sc.pde_cfl > 0.5)
        throw ConfigError("pde.cfl must lie in (0, 0.5]");
    if (!(sc.pde_t_end > 0.0)) throw ConfigError("pde.t_end must be positive");
    for (int c : sc.xval_cells)
        if (c < 16) throw ConfigError("xval.cells entries must be at least 16");
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"constant",       "remark1",        "linear-compression",
            "isentropic-bump", "chaplygin-demo", "isothermal-demo"};
}

Scenario preset_scenario(const std::string& name) { return make_preset(name, 0.0, false); }

Scenario preset_scenario(const std::string& name, double gamma) {
    return make_preset(name, gamma, true);
}

Scenario load_scenario(const std::string& name_or_path) {
    for (const std::string& n : preset_names()) {
        if (n == name_or_path) {
            Scenario sc = preset_scenario(name_or_path);
            validate(sc);
            return sc;
        }
    }
    if (!std::filesystem::is_regular_file(name_or_path))
        throw ConfigError("'" + name_or_path + "' is neither a preset nor a scenario file");
    const toml::Table t = toml::parse_file(name_or_path);

    Scenario sc;
    const bool gamma_given = t.contains("gamma");
    if (t.contains("preset")) {
        sc = make_preset(t.get_string("preset", ""), t.get_number("gamma", 0.0), gamma_given);
    } else if (gamma_given) {
        sc.gamma = t.get_number("gamma", sc.gamma);
    }
    sc.name = t.get_string("name", std::filesystem::path(name_or_path).stem().string());

    if (t.contains("domain")) {
        const auto dom = t.get_array("domain", {});
        if (dom.size() != 2) throw ConfigError("domain must be [a, b]");
        sc.a = dom[0];
        sc.b = dom[1];
    }
    sc.v0 = t.get_string("profile.v0", sc.v0);
    sc.rho0 = t.get_string("profile.rho0", sc.rho0);
    sc.p0 = t.get_string("profile.p0", sc.p0);

    sc.grid.nodes = t.get_int("grid.nodes", sc.grid.nodes);
    sc.grid.tol = t.get_number("grid.tol", sc.grid.tol);
    sc.grid.refine_frac = t.get_number("grid.refine_frac", sc.grid.refine_frac);
    sc.grid.compute_predicted_T = t.get_bool("grid.predicted_t", sc.grid.compute_predicted_T);

    sc.ode_t_max = t.get_number("ode.t_max", sc.ode_t_max);
    sc.ode_tol = t.get_number("ode.tol", sc.ode_tol);

    sc.pde_cells = t.get_int("pde.cells", sc.pde_cells);
    sc.pde_cfl = t.get_number("pde.cfl", sc.pde_cfl);
    sc.pde_t_end = t.get_number("pde.t_end", sc.pde_t_end);
    if (t.contains("pde.boundary"))
        sc.pde_boundary = parse_boundary(t.get_string("pde.boundary", ""));

    if (t.contains("xval.cells")) {
        sc.xval_cells.clear();
        for (double c : t.get_array("xval.cells", {})) {
            if (std::nearbyint(c) != c) throw ConfigError("xval.cells must be integers");
            sc.xval_cells.push_back(static_cast<int>(c));
        }
        if (sc.xval_cells.empty()) throw ConfigError("xval.cells must not be empty");
    }

    sc.out_report = t.get_string("output.report", sc.out_report);
    sc.out_series_dir = t.get_string("output.series_dir", sc.out_series_dir);

    validate(sc);
    return sc;
}

Profile scenario_profile(const Scenario& sc) {
    auto parse_field = [&](const std::string& text, const char* field) {
        try {
            return dsl::Expr::parse(text);
        } catch (const ParseError& e) {
            throw ConfigError("profile." + std::string(field) + ": " + e.what());
        }
    };
    Profile pr;
    pr.v0 = parse_field(sc.v0, "v0");
    pr.rho0 = parse_field(sc.rho0, "rho0");
    pr.p0 = parse_field(sc.p0, "p0");
    pr.a = sc.a;
    pr.b = sc.b;
    return pr;
}

}  // namespace gdblow
