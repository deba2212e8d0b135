#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "gdblow/cli.hpp"
#include "gdblow/report.hpp"
#include "gdblow/toml_lite.hpp"
#include "gdblow/xval.hpp"
#include "json.hpp"

using namespace gdblow;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "gdblow_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const fs::path p = temp_dir() / name;
    std::ofstream out(p);
    out << content;
    out.close();
    return p.string();
}

struct CaptureStreams {
    std::ostringstream out, err;
    std::streambuf *old_out, *old_err;
    CaptureStreams() : old_out(std::cout.rdbuf(out.rdbuf())), old_err(std::cerr.rdbuf(err.rdbuf())) {}
    ~CaptureStreams() {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
    }
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr,
            std::string* err = nullptr) {
    std::vector<const char*> argv{"gdblow"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    CaptureStreams cap;
    const int rc = cli::run(static_cast<int>(argv.size()), argv.data());
    if (out) *out = cap.out.str();
    if (err) *err = cap.err.str();
    return rc;
}

}  // namespace

TEST_CASE("toml subset parses sections, types and comments") {
    const toml::Table t = toml::parse(
        "# header comment\n"
        "gamma = 1.4\n"
        "name = \"demo # not a comment\"\n"
        "domain = [-2.0, 2]\n"
        "flag = true\n"
        "[pde]\n"
        "cells = 512   # trailing\n"
        "boundary = \"periodic\"\n");
    CHECK(t.get_number("gamma", 0.0) == doctest::Approx(1.4));
    CHECK(t.get_string("name", "") == "demo # not a comment");
    CHECK(t.get_array("domain", {}).size() == 2);
    CHECK(t.get_bool("flag", false));
    CHECK(t.get_int("pde.cells", 0) == 512);
    CHECK(t.get_string("pde.boundary", "") == "periodic");
    CHECK(t.get_number("missing", 7.5) == 7.5);
}

TEST_CASE("toml errors carry line numbers") {
    CHECK_THROWS_WITH_AS(toml::parse("gamma 1.4\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_WITH_AS(toml::parse("a = 1\nb = \"x\nc = 2\n"), doctest::Contains("line 2"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(toml::parse("a = [1, oops]\n"), doctest::Contains("line 1"),
                         ConfigError);
    CHECK_THROWS_AS(toml::parse("[unclosed\na=1\n"), ConfigError);
    const toml::Table t = toml::parse("a = 1\n");
    CHECK_THROWS_AS(t.get_string("a", ""), ConfigError);
}

TEST_CASE("presets load, validate, and reject unknown names") {
    for (const std::string& name : preset_names()) {
        const Scenario sc = load_scenario(name);
        CHECK(sc.name == name);
        CHECK_NOTHROW(scenario_profile(sc));
    }
    CHECK_THROWS_WITH_AS(load_scenario("not-a-preset"), doctest::Contains("neither a preset"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(load_scenario(temp_dir().string()),
                         doctest::Contains("neither a preset"), ConfigError);
}

TEST_CASE("scenario files override preset fields") {
    const std::string path = write_temp("override.toml",
                                        "preset = \"linear-compression\"\n"
                                        "name = \"lc-tuned\"\n"
                                        "[grid]\n"
                                        "nodes = 51\n"
                                        "[pde]\n"
                                        "cells = 128\n"
                                        "boundary = \"periodic\"\n"
                                        "[xval]\n"
                                        "cells = [64, 128]\n");
    const Scenario sc = load_scenario(path);
    CHECK(sc.name == "lc-tuned");
    CHECK(sc.grid.nodes == 51);
    CHECK(sc.pde_cells == 128);
    CHECK(sc.pde_boundary == fv::Boundary::periodic);
    CHECK(sc.xval_cells == std::vector<int>{64, 128});
    CHECK(sc.a == -6.0);  // inherited from the preset
}

TEST_CASE("scenario validation rejects bad configurations") {
    CHECK_THROWS_AS(load_scenario(write_temp("bad1.toml", "gamma = 0\n")), DomainError);
    CHECK_THROWS_WITH_AS(load_scenario(write_temp("bad2.toml", "domain = [2, -2]\n")),
                         doctest::Contains("a < b"), ConfigError);
    CHECK_THROWS_WITH_AS(
        load_scenario(write_temp("bad3.toml", "[pde]\nboundary = \"open\"\n")),
        doctest::Contains("boundary"), ConfigError);
    CHECK_THROWS_WITH_AS(load_scenario(write_temp("bad4.toml", "[pde]\ncfl = 0.9\n")),
                         doctest::Contains("cfl"), ConfigError);
    const Scenario bad_expr = load_scenario(
        write_temp("bad5.toml", "preset = \"isothermal-demo\"\n[profile]\nv0 = \"2*(x\"\n"));
    CHECK_THROWS_WITH_AS(scenario_profile(bad_expr), doctest::Contains("profile.v0"),
                         ConfigError);
}

TEST_CASE("reports are deterministic and keep a stable field order") {
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    Scenario sc = load_scenario("linear-compression");
    sc.grid.nodes = 31;
    const std::string a = report_json(classify_report(sc));
    const std::string b = report_json(classify_report(sc));
    CHECK(a == b);

    const auto j = nlohmann::json::parse(a);
    CHECK(j["artifact"]["name"] == "gdblow");
    CHECK(j["artifact"]["version"] == kVersion);
    CHECK(j["artifact"]["generated_at"] == "2023-11-14T22:13:20Z");
    CHECK(j["scenario"]["gamma"] == 1.4);
    CHECK(j["verdict"]["smooth"] == false);
    CHECK(j["verdict"]["predicted_T"].is_number());
    CHECK(j["verdict"]["witness_count"].get<int>() > 0);
    CHECK(j["indicators"].size() == 31);
    CHECK(j["cross_validation"]["status"] == "NotRun");
    // stable top-level ordering
    std::size_t pos = 0;
    for (const char* key : {"\"artifact\"", "\"scenario\"", "\"verdict\"", "\"indicators\"",
                            "\"ode\"", "\"pde\"", "\"cross_validation\""}) {
        const std::size_t next = a.find(key, pos);
        REQUIRE(next != std::string::npos);
        CHECK(next > pos);
        pos = next;
    }
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("floats serialize with 17 significant digits") {
    JsonWriter w;
    w.begin_object();
    w.key("tenth").value(0.1);
    w.key("third").value(1.0 / 3.0);
    w.end_object();
    CHECK(w.str() == "{\"tenth\":0.10000000000000001,\"third\":0.33333333333333331}");
}

TEST_CASE("atomic writes land complete and leave no temp files") {
    const fs::path dir = temp_dir() / "atomic";
    fs::remove_all(dir);
    const std::string target = (dir / "report.json").string();
    write_atomic(target, "{\"ok\":true}\n");
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "{\"ok\":true}\n");
    int entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++entries;
        CHECK(e.path().filename() == "report.json");
    }
    CHECK(entries == 1);
}

TEST_CASE("csv headers match the documented column orders") {
    Trajectory tr;
    tr.b = 1.0;
    tr.gamma = 1.4;
    tr.t = {0.0};
    tr.y = {{0.5, 1.0}};
    CHECK(trajectory_csv(tr).rfind("t,R1,R2,C\n", 0) == 0);

    RayTrajectory ray;
    ray.gamma = 1.4;
    ray.t = {0.0};
    ray.y = {{0.0, 1.0, 1.0, 0.1, 0.0, 0.2}};
    CHECK(ray_csv(ray).rfind("t,R1,R2,u1,u2,u3,P1,P2,P3,C\n", 0) == 0);

    CHECK(portrait_csv({tr}).rfind("seed,outcome,t,R1,R2,C\n", 0) == 0);

    fv::Snapshot snap;
    snap.t = 0.0;
    snap.x = {0.0};
    snap.rho = {1.0};
    snap.v = {0.0};
    snap.p = {1.0};
    snap.S = {0.0};
    CHECK(snapshot_csv(snap).rfind("x,rho,v,p,S\n", 0) == 0);

    CHECK(gradient_csv({{0.0, 1.0, 2.0, 0.5}}).rfind("t,dvdx_max,dpdx_max,x_argmax\n", 0) == 0);
}

TEST_CASE("cross-validation flags a corrupted predicted time") {
    Scenario sc = load_scenario("linear-compression");
    sc.grid.nodes = 51;
    sc.xval_cells = {256};

    const Report good = cross_validate(sc);
    CHECK(good.xval.status == "Consistent");

    XvalHooks hooks;
    hooks.predicted_T_override = 5.0;  // deliberately wrong
    const Report bad = cross_validate(sc, hooks);
    CHECK(bad.xval.status == "Discrepant");
    REQUIRE_FALSE(bad.xval.details.empty());
}

TEST_CASE("xval declines the PDE stage outside gamma > 1") {
    Scenario sc = load_scenario("chaplygin-demo");
    sc.grid.nodes = 31;
    const Report rep = cross_validate(sc);
    CHECK(rep.xval.status == "NotRun");
    CHECK(rep.verdict.mode == VerdictMode::chaplygin_degeneracy);
}

TEST_CASE("cli exit codes form the machine contract") {
    const std::string out = (temp_dir() / "cli_report.json").string();
    CHECK(run_cli({"presets"}) == 0);
    CHECK(run_cli({"classify", "remark1", "--out", out}) == 0);
    CHECK(run_cli({"classify", "linear-compression", "--out", out}) == 2);
    CHECK(run_cli({"classify", "/no/such/file.toml"}) == 1);
    CHECK(run_cli({"classify", write_temp("broken.toml", "domain = [1,\n")}) == 1);
    CHECK(run_cli({"ode", "--r1", "-1"}) == 1);  // missing --r2
    CHECK(run_cli({"ode", "--r1", "-1", "--r2", "0", "--out",
                   (temp_dir() / "traj.csv").string()}) == 0);
    CHECK(run_cli({"portrait", "--b", "-1", "--seeds", "bogus:3"}) == 1);
    CHECK(run_cli({"pde", "isothermal-demo"}) == 1);  // gamma = 1 has no energy form
}

TEST_CASE("ode and portrait summaries carry the documented fields") {
    std::string out;
    CHECK(run_cli({"ode", "--r1", "-1", "--r2", "0", "--out",
                   (temp_dir() / "ric.csv").string()},
                  &out) == 0);
    CHECK(out.find("outcome=escaped") != std::string::npos);
    CHECK(out.find("T=1") != std::string::npos);

    CHECK(run_cli({"ode", "--r1", "0", "--r2", "1", "--b", "1", "--gamma", "1.4", "--t-max",
                   "10", "--out", (temp_dir() / "orbit.csv").string()},
                  &out) == 0);
    CHECK(out.find("outcome=bounded") != std::string::npos);
    CHECK(out.find("C0=") != std::string::npos);
    CHECK(out.find("c_drift=") != std::string::npos);
    CHECK(out.find("level_set=closed") != std::string::npos);

    CHECK(run_cli({"ode", "--r1", "1", "--r2", "1", "--b", "-1", "--gamma", "1.4", "--out",
                   (temp_dir() / "sep.csv").string()},
                  &out) == 0);
    CHECK(out.find("C0=") != std::string::npos);  // sign decides decay vs escape

    CHECK(run_cli({"portrait", "--b", "-1", "--gamma", "1.4", "--seeds", "separatrix:0.5",
                   "--out", (temp_dir() / "sep_portrait.csv").string()},
                  &out) == 0);
    CHECK(out.find("bounded=1") != std::string::npos);
    CHECK(run_cli({"portrait", "--b", "-1", "--seeds", "list:-0.5,0;-1,0", "--out",
                   (temp_dir() / "axis.csv").string()},
                  &out) == 0);
    CHECK(out.find("escaped=2") != std::string::npos);
}

TEST_CASE("classify reports expression errors with positions via exit code 1") {
    const std::string path = write_temp("bad_expr.toml",
                                        "preset = \"constant\"\n[profile]\nv0 = \"exp(\"\n");
    std::string err;
    CHECK(run_cli({"classify", path}, nullptr, &err) == 1);
    CHECK(err.find("profile.v0") != std::string::npos);
    CHECK(err.find("byte") != std::string::npos);
}

TEST_CASE("classify output embeds the scenario echo") {
    const std::string out = (temp_dir() / "echo.json").string();
    REQUIRE(run_cli({"classify", "isentropic-bump", "--out", out}) == 2);
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["scenario"]["name"] == "isentropic-bump");
    CHECK(j["scenario"]["profile"]["v0"] == "0");
    CHECK(j["verdict"]["mode"] == "condition-sets");
    CHECK(j["ode"].size() == j["verdict"]["witness_count"].get<std::size_t>());
}
