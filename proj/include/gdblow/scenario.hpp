#ifndef GDBLOW_SCENARIO_HPP
#define GDBLOW_SCENARIO_HPP

#include <string>
#include <vector>

#include "gdblow/criterion.hpp"
#include "gdblow/euler_fv.hpp"
#include "gdblow/profile.hpp"

namespace gdblow {

// Everything one run needs: gas, window, profile text, grid, ODE and PDE
// options, output locations. Loadable from a small TOML file or from one of
// the embedded presets (remark1, linear-compression, isentropic-bump,
// chaplygin-demo, isothermal-demo, constant).
struct Scenario {
    std::string name = "scenario";
    double gamma = 1.4;
    double a = -1.0, b = 1.0;

    std::string v0 = "0";
    std::string rho0 = "1";
    std::string p0 = "1";

    GridSpec grid;

    double ode_t_max = 100.0;
    double ode_tol = 1e-10;

    int pde_cells = 512;
    double pde_cfl = 0.4;
    double pde_t_end = 1.0;
    fv::Boundary pde_boundary = fv::Boundary::farfield;
    std::vector<int> xval_cells = {256, 512, 1024};

    std::string out_report;      // empty: stdout
    std::string out_series_dir;  // empty: current directory
};

std::vector<std::string> preset_names();

// Presets regenerate gamma-dependent profile text when gamma is overridden.
Scenario preset_scenario(const std::string& name);
Scenario preset_scenario(const std::string& name, double gamma);

// Accepts a preset name or a path to a scenario TOML file.
Scenario load_scenario(const std::string& name_or_path);

Profile scenario_profile(const Scenario& sc);

}  // namespace gdblow

#endif  // GDBLOW_SCENARIO_HPP
