#include "gdblow/report.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace gdblow {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(sde, &end, 10);
        if (end != sde && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) out_ += ",";
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += "{";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += "[";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += "\"" + json_escape(k) + "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    if (std::isfinite(v)) {
        out_ += fmt17(v);
    } else {
        out_ += "null";  // JSON has no inf/nan
    }
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_ += "\"" + json_escape(v) + "\"";
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value_null() {
    separator();
    out_ += "null";
    return *this;
}

const char* outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::bounded: return "bounded";
        case OutcomeKind::escaped: return "escaped";
        case OutcomeKind::blowup_estimated: return "blowup_estimated";
    }
    return "unknown";
}

namespace {

void write_point(JsonWriter& w, const PointVerdict& pv) {
    w.begin_object();
    w.key("x").value(pv.x);
    w.key("r1").value(pv.ind.r1);
    w.key("r2").value(pv.ind.r2);
    if (pv.ind.k_infinite) {
        w.key("k").value("infinite");
        w.key("b").value_null();
    } else {
        w.key("k").value(pv.ind.k);
        w.key("b").value(pv.ind.b);
    }
    w.key("sets").begin_object();
    w.key("set1").value(pv.sets.set1);
    w.key("set2").value(pv.sets.set2);
    w.key("set3").value(pv.sets.set3);
    w.key("set4").value(pv.sets.set4);
    w.key("chap").value(pv.sets.chap);
    w.end_object();
    w.key("safe").value(pv.safe);
    w.end_object();
}

void write_scenario(JsonWriter& w, const Scenario& sc) {
    w.begin_object();
    w.key("name").value(sc.name);
    w.key("gamma").value(sc.gamma);
    w.key("domain").begin_array().value(sc.a).value(sc.b).end_array();
    w.key("profile").begin_object();
    w.key("v0").value(sc.v0);
    w.key("rho0").value(sc.rho0);
    w.key("p0").value(sc.p0);
    w.end_object();
    w.key("grid").begin_object();
    w.key("nodes").value(sc.grid.nodes);
    w.key("tol").value(sc.grid.tol);
    w.key("refine_frac").value(sc.grid.refine_frac);
    w.end_object();
    w.key("ode").begin_object();
    w.key("t_max").value(sc.ode_t_max);
    w.key("tol").value(sc.ode_tol);
    w.end_object();
    w.key("pde").begin_object();
    w.key("cells").value(sc.pde_cells);
    w.key("cfl").value(sc.pde_cfl);
    w.key("t_end").value(sc.pde_t_end);
    w.key("boundary").value(sc.pde_boundary == fv::Boundary::periodic ? "periodic" : "farfield");
    w.key("xval_cells").begin_array();
    for (int c : sc.xval_cells) w.value(c);
    w.end_array();
    w.end_object();
    w.end_object();
}

}  // namespace

std::string report_json(const Report& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("artifact").begin_object();
    w.key("name").value("gdblow");
    w.key("version").value(kVersion);
    w.key("generated_at").value(timestamp());
    w.end_object();

    w.key("scenario");
    write_scenario(w, rep.scenario);

    w.key("verdict").begin_object();
    w.key("mode").value(rep.verdict.mode == VerdictMode::condition_sets ? "condition-sets"
                                                                 : "chaplygin-degeneracy");
    w.key("smooth").value(rep.verdict.smooth);
    if (rep.verdict.predicted_T)
        w.key("predicted_T").value(*rep.verdict.predicted_T);
    else
        w.key("predicted_T").value_null();
    w.key("grid").begin_object();
    w.key("initial_nodes").value(rep.verdict.grid.initial_nodes);
    w.key("refined_nodes").value(rep.verdict.grid.refined_nodes);
    w.key("min_spacing").value(rep.verdict.grid.min_spacing);
    w.end_object();
    w.key("witness_count").value(static_cast<int>(rep.verdict.witnesses.size()));
    w.key("witnesses").begin_array();
    for (const PointVerdict& pv : rep.verdict.witnesses) write_point(w, pv);
    w.end_array();
    w.end_object();

    w.key("indicators").begin_array();
    for (const PointVerdict& pv : rep.verdict.table) write_point(w, pv);
    w.end_array();

    w.key("ode").begin_array();
    for (const OdeSummary& s : rep.ode) {
        w.begin_object();
        w.key("x").value(s.x);
        w.key("outcome").value(s.outcome);
        if (s.T)
            w.key("T").value(*s.T);
        else
            w.key("T").value_null();
        w.key("bracket").begin_array().value(s.bracket_lo).value(s.bracket_hi).end_array();
        w.key("c_drift").value(s.c_drift);
        w.key("max_r1").value(s.max_r1);
        w.key("max_r2").value(s.max_r2);
        w.key("low_confidence").value(s.low_confidence);
        w.end_object();
    }
    w.end_array();

    if (rep.ode_gradient_bound)
        w.key("ode_gradient_bound").value(*rep.ode_gradient_bound);
    else
        w.key("ode_gradient_bound").value_null();

    w.key("pde").begin_array();
    for (const PdeGridSummary& s : rep.pde) {
        w.begin_object();
        w.key("cells").value(s.cells);
        if (s.t_steepen)
            w.key("t_steepen").value(*s.t_steepen);
        else
            w.key("t_steepen").value_null();
        w.key("max_dvdx").value(s.max_dvdx);
        w.key("breakdown").value(s.breakdown);
        if (s.breakdown) {
            w.key("breakdown_t").value(s.breakdown_t);
            w.key("breakdown_cell").value(s.breakdown_cell);
        }
        w.key("mass_defect_rel").value(s.mass_defect_rel);
        w.key("momentum_defect_rel").value(s.momentum_defect_rel);
        w.end_object();
    }
    w.end_array();

    w.key("cross_validation").begin_object();
    w.key("status").value(rep.xval.status);
    w.key("details").begin_array();
    for (const std::string& d : rep.xval.details) w.value(d);
    w.end_array();
    w.end_object();

    w.end_object();
    return w.str() + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.good()) throw ConfigError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = "t,R1,R2,C\n";
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const FirstIntegral fi =
            first_integral(RState{tr.y[i][0], tr.y[i][1], tr.b, tr.gamma});
        out += fmt17(tr.t[i]) + "," + fmt17(tr.y[i][0]) + "," + fmt17(tr.y[i][1]) + "," +
               (fi.degenerate ? "nan" : fmt17(fi.c)) + "\n";
    }
    return out;
}

std::string ray_csv(const RayTrajectory& tr) {
    std::string out = "t,R1,R2,u1,u2,u3,P1,P2,P3,C\n";
    // b from the foot point; constant along the exact trajectory
    double b = 0.0;
    bool have_b = false;
    if (!tr.y.empty()) {
        const RReduction red = reduce_to_R(PVector{tr.y[0][3], tr.y[0][4], tr.y[0][5]});
        if (!red.k_infinite && !red.k_indeterminate) {
            b = red.k - (tr.gamma - 1.0) / 2.0;
            have_b = true;
        }
    }
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const auto& y = tr.y[i];
        const double r1 = 0.5 * (y[3] + y[5]);
        const double r2 = 0.5 * (y[5] - y[3]);
        std::string c = "nan";
        if (have_b) {
            const FirstIntegral fi = first_integral(RState{r1, r2, b, tr.gamma});
            if (!fi.degenerate) c = fmt17(fi.c);
        }
        out += fmt17(tr.t[i]) + "," + fmt17(r1) + "," + fmt17(r2) + "," + fmt17(y[0]) + "," +
               fmt17(y[1]) + "," + fmt17(y[2]) + "," + fmt17(y[3]) + "," + fmt17(y[4]) + "," +
               fmt17(y[5]) + "," + c + "\n";
    }
    return out;
}

std::string portrait_csv(const std::vector<Trajectory>& polylines) {
    std::string out = "seed,outcome,t,R1,R2,C\n";
    for (std::size_t s = 0; s < polylines.size(); ++s) {
        const Trajectory& tr = polylines[s];
        const char* oc = outcome_name(tr.outcome.kind);
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
            const FirstIntegral fi =
                first_integral(RState{tr.y[i][0], tr.y[i][1], tr.b, tr.gamma});
            out += std::to_string(s) + "," + oc + "," + fmt17(tr.t[i]) + "," +
                   fmt17(tr.y[i][0]) + "," + fmt17(tr.y[i][1]) + "," +
                   (fi.degenerate ? "nan" : fmt17(fi.c)) + "\n";
        }
    }
    return out;
}

std::string snapshot_csv(const fv::Snapshot& s) {
    std::string out = "x,rho,v,p,S\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        out += fmt17(s.x[i]) + "," + fmt17(s.rho[i]) + "," + fmt17(s.v[i]) + "," +
               fmt17(s.p[i]) + "," + fmt17(s.S[i]) + "\n";
    }
    return out;
}

std::string gradient_csv(const std::vector<fv::GradientSample>& hist) {
    std::string out = "t,dvdx_max,dpdx_max,x_argmax\n";
    for (const fv::GradientSample& g : hist) {
        out += fmt17(g.t) + "," + fmt17(g.dvdx_max) + "," + fmt17(g.dpdx_max) + "," +
               fmt17(g.x_argmax) + "\n";
    }
    return out;
}

}  // namespace gdblow
