#include "gdblow/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gdblow/report.hpp"
#include "gdblow/xval.hpp"

namespace gdblow::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int verdict_exit_code(const GlobalVerdict& v) { return v.smooth ? 0 : 2; }

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_atomic(path, content);
}

std::string series_path(const Scenario& sc, const std::string& stem) {
    if (sc.out_series_dir.empty()) return stem;
    return sc.out_series_dir + "/" + stem;
}

std::vector<PortraitSeed> parse_seeds(const std::string& spec, double b, double gamma) {
    std::vector<PortraitSeed> seeds;
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (start <= s.size()) {
            const std::size_t end = s.find(sep, start);
            if (end == std::string::npos) {
                parts.push_back(s.substr(start));
                break;
            }
            parts.push_back(s.substr(start, end - start));
            start = end + 1;
        }
        return parts;
    };
    const auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("empty seed spec");
    if (parts[0] == "circle") {
        if (parts.size() < 2) throw ConfigError("seed spec: circle:N[:radius]");
        const int n = std::stoi(parts[1]);
        const double r = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
        if (n < 1) throw ConfigError("seed spec: need at least one seed");
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * std::acos(-1.0) * i / n;
            seeds.push_back({r * std::cos(th), r * std::sin(th)});
        }
        return seeds;
    }
    if (parts[0] == "list") {
        if (parts.size() != 2) throw ConfigError("seed spec: list:r1,r2;r1,r2;...");
        for (const std::string& pair : split(parts[1], ';')) {
            if (pair.empty()) continue;
            const auto nums = split(pair, ',');
            if (nums.size() != 2) throw ConfigError("seed spec: bad pair '" + pair + "'");
            seeds.push_back({std::stod(nums[0]), std::stod(nums[1])});
        }
        if (seeds.empty()) throw ConfigError("seed spec: no seeds given");
        return seeds;
    }
    if (parts[0] == "separatrix") {
        // decaying branch of the C = 0 level set (needs b < 0, gamma > 1)
        if (parts.size() != 2) throw ConfigError("seed spec: separatrix:r1");
        if (!(b < 0.0) || !(gamma > 1.0))
            throw ConfigError("separatrix seeds need b < 0 and gamma > 1");
        const double r1 = std::stod(parts[1]);
        if (!(r1 > 0.0)) throw ConfigError("separatrix seeds need r1 > 0");
        const double kappa = std::sqrt(-2.0 * b / (gamma - 1.0));
        seeds.push_back({r1, r1 / kappa});
        return seeds;
    }
    throw ConfigError("unknown seed spec '" + parts[0] + "' (circle:|list:|separatrix:)");
}

int cmd_classify(const std::string& scenario_arg, std::string out) {
    const Scenario sc = load_scenario(scenario_arg);
    const Report rep = classify_report(sc);
    if (out.empty()) out = sc.out_report;
    emit(out, report_json(rep));
    std::cerr << "verdict: " << (rep.verdict.smooth ? "smooth" : "blow-up predicted")
              << (rep.verdict.predicted_T ? " (predicted_T=" + fmt(*rep.verdict.predicted_T) + ")"
                                          : "")
              << " [" << rep.verdict.witnesses.size() << " witnesses]\n";
    return verdict_exit_code(rep.verdict);
}

int cmd_ode(double r1, double r2, double b, double gamma, double t_max, double tol,
            const std::string& out) {
    RState r0{r1, r2, b, gamma};
    IntegrateOptions opt;
    opt.t_max = t_max;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    const Trajectory tr = integrate(r0, opt);
    const std::string csv = trajectory_csv(tr);
    std::ostream& summary = out.empty() ? std::cerr : std::cout;
    if (out.empty())
        std::cout << csv;
    else
        write_atomic(out, csv);

    const FirstIntegral c0 = first_integral(r0);
    summary << "outcome=" << outcome_name(tr.outcome.kind);
    if (tr.outcome.kind == OutcomeKind::bounded) {
        summary << " t_final=" << fmt(tr.outcome.t_final);
    } else {
        const BlowupEstimate est = blowup_time_estimate(tr);
        summary << " T=" << fmt(est.T) << " bracket=[" << fmt(est.bracket_lo) << ","
                << fmt(est.bracket_hi) << "]" << (est.low_confidence ? " low_confidence" : "");
    }
    summary << " C0=" << (c0.degenerate ? "nan" : fmt(c0.c)) << " c_drift=" << fmt(tr.c_drift);
    if (b > 0.0 && r2 != 0.0) summary << " level_set=closed";
    summary << "\n";
    return 0;
}

int cmd_portrait(double b, double gamma, const std::string& seeds_spec, double t_max,
                 const std::string& out) {
    const std::vector<PortraitSeed> seeds = parse_seeds(seeds_spec, b, gamma);
    IntegrateOptions opt;
    opt.t_max = t_max;
    const std::vector<Trajectory> lines = phase_portrait(b, GasParams{gamma}, seeds, opt);
    const std::string csv = portrait_csv(lines);
    std::ostream& summary = out.empty() ? std::cerr : std::cout;
    if (out.empty())
        std::cout << csv;
    else
        write_atomic(out, csv);
    int bounded = 0, escaped = 0;
    for (const Trajectory& tr : lines)
        (tr.outcome.kind == OutcomeKind::bounded ? bounded : escaped) += 1;
    summary << "seeds=" << lines.size() << " bounded=" << bounded << " escaped=" << escaped
            << "\n";
    return 0;
}

int cmd_pde(const std::string& scenario_arg, int cells, double cfl, double t_end) {
    Scenario sc = load_scenario(scenario_arg);
    if (cells > 0) sc.pde_cells = cells;
    if (cfl > 0.0) sc.pde_cfl = cfl;
    if (t_end > 0.0) sc.pde_t_end = t_end;
    const Profile pr = scenario_profile(sc);
    fv::SimOptions opt;
    opt.cells = sc.pde_cells;
    opt.cfl = sc.pde_cfl;
    opt.t_end = sc.pde_t_end;
    opt.bc = sc.pde_boundary;
    const fv::SimResult res = fv::simulate(pr, GasParams{sc.gamma}, opt);

    write_atomic(series_path(sc, sc.name + "_gradient.csv"), gradient_csv(res.history));
    for (const fv::Snapshot& snap : res.snapshots) {
        write_atomic(series_path(sc, sc.name + "_snapshot_t" + fmt(snap.t) + ".csv"),
                     snapshot_csv(snap));
    }
    if (res.breakdown) {
        std::cout << "breakdown at t=" << fmt(res.breakdown_t) << " cell=" << res.breakdown_cell
                  << "\n";
    } else if (res.t_steepen) {
        std::cout << "t_steepen=" << fmt(*res.t_steepen) << " max_dvdx=" << fmt(res.max_dvdx)
                  << "\n";
    } else {
        std::cout << "bounded gradients to t_end=" << fmt(sc.pde_t_end)
                  << " (max |dv/dx| = " << fmt(res.max_dvdx) << ")\n";
    }
    std::cout << "mass_defect_rel=" << fmt(res.mass_defect_rel)
              << " momentum_defect_rel=" << fmt(res.momentum_defect_rel) << "\n";
    return 0;
}

int cmd_xval(const std::string& scenario_arg, std::string out) {
    const Scenario sc = load_scenario(scenario_arg);
    const Report rep = cross_validate(sc);
    if (out.empty()) out = sc.out_report;
    emit(out, report_json(rep));
    std::cerr << "cross-validation: " << rep.xval.status;
    for (const std::string& d : rep.xval.details) std::cerr << "\n  " << d;
    std::cerr << "\n";
    if (rep.xval.status == "Discrepant") return 3;
    return verdict_exit_code(rep.verdict);
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"decides whether 1D polytropic Euler Cauchy data stays globally smooth or "
                 "suffers a finite-time gradient catastrophe, and cross-checks the verdict "
                 "against slope-ODE dynamics and a finite-volume run"};
    app.require_subcommand(1);

    std::string scenario_arg, out_path;
    auto* classify = app.add_subcommand("classify", "classify a scenario (exit 0 smooth, 2 blow-up)");
    classify->add_option("scenario", scenario_arg, "scenario .toml or preset name")->required();
    classify->add_option("--out", out_path, "report path (default: scenario output.report or stdout)");

    double r1 = 0, r2 = 0, b = 0, gamma = 1.4, t_max = 100, tol = 1e-10;
    std::string ode_out;
    auto* ode = app.add_subcommand("ode", "integrate the reduced slope system from (R1, R2)");
    ode->add_option("--r1", r1, "initial R1")->required();
    ode->add_option("--r2", r2, "initial R2")->required();
    ode->add_option("--b", b, "trajectory constant b");
    ode->add_option("--gamma", gamma, "adiabatic exponent");
    ode->add_option("--t-max", t_max, "integration horizon");
    ode->add_option("--tol", tol, "relative tolerance");
    ode->add_option("--out", ode_out, "trajectory CSV path (default stdout)");

    double pb = 1.0, pgamma = 1.4, pt_max = 20.0;
    std::string seeds_spec = "circle:16", portrait_out;
    auto* portrait = app.add_subcommand("portrait", "phase portrait polylines for a fixed b");
    portrait->add_option("--b", pb, "trajectory constant b")->required();
    portrait->add_option("--gamma", pgamma, "adiabatic exponent");
    portrait->add_option("--seeds", seeds_spec, "circle:N[:radius] | list:r1,r2;... | separatrix:r1");
    portrait->add_option("--t-max", pt_max, "per-leg horizon");
    portrait->add_option("--out", portrait_out, "CSV path (default stdout)");

    int cells = 0;
    double cfl = 0.0, t_end = 0.0;
    auto* pde = app.add_subcommand("pde", "run the finite-volume cross-check");
    pde->add_option("scenario", scenario_arg, "scenario .toml or preset name")->required();
    pde->add_option("--cells", cells, "override cell count");
    pde->add_option("--cfl", cfl, "override CFL number");
    pde->add_option("--t-end", t_end, "override end time");

    auto* xval = app.add_subcommand("xval", "classify, then cross-validate against ODE and PDE");
    xval->add_option("scenario", scenario_arg, "scenario .toml or preset name")->required();
    xval->add_option("--out", out_path, "report path");

    auto* presets = app.add_subcommand("presets", "list embedded scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (classify->parsed()) return cmd_classify(scenario_arg, out_path);
        if (ode->parsed()) return cmd_ode(r1, r2, b, gamma, t_max, tol, ode_out);
        if (portrait->parsed()) return cmd_portrait(pb, pgamma, seeds_spec, pt_max, portrait_out);
        if (pde->parsed()) return cmd_pde(scenario_arg, cells, cfl, t_end);
        if (xval->parsed()) return cmd_xval(scenario_arg, out_path);
        if (presets->parsed()) {
            for (const std::string& n : preset_names()) std::cout << n << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace gdblow::cli
