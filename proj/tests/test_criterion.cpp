#include <cmath>
#include <random>

#include "doctest.h"
#include "gdblow/criterion.hpp"
#include "gdblow/riemann_ode.hpp"
#include "support.hpp"

using namespace gdblow;

namespace {

PointData point_from(const Profile& pr, double x) { return sample_point(pr, x); }

}  // namespace

TEST_CASE("indicators for the smooth exponential family: b = 1 identically") {
    for (double g : {1.2, 1.4, 2.0, 3.0}) {
        const double k = 1.0 + 2.0 / g;
        char rho[64];
        std::snprintf(rho, sizeof rho, "exp(%.17g*x)", k);
        const Profile pr = make_profile("0", rho, "exp(x)", -2.0, 2.0);
        for (double x : uniform_grid(-2.0, 2.0, 41)) {
            const Indicators ind = point_indicators(point_from(pr, x), {g});
            CHECK_FALSE(ind.k_infinite);
            CHECK(std::abs(ind.b - 1.0) <= 1e-12);
            CHECK(ind.r2 > 0.0);
            CHECK(ind.k == doctest::Approx((g + 1.0) / 2.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("indicators for isentropic data: K = 0 and the corollary weight") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (double g : {1.2, 1.4, 2.0}) {
        const std::string rho = "1 + 0.3*exp(-(x-0.2)^2)";
        const Profile pr = make_profile("0.1*x", rho, isentropic_pressure_text(rho, g), -2.0, 2.0);
        for (int i = 0; i < 40; ++i) {
            const double x = u(rng);
            const PointData pd = point_from(pr, x);
            const Indicators ind = point_indicators(pd, {g});
            if (ind.k_infinite) continue;  // density extremum
            CHECK(std::abs(ind.k) < 1e-12);
            CHECK(ind.b == doctest::Approx(-(g - 1.0) / 2.0).epsilon(1e-12));
            const double weight = std::pow(pd.rho0, (g - 3.0) / 2.0) * pd.drho0;
            CHECK(ind.r2 == doctest::Approx(weight).epsilon(1e-12));
        }
    }
}

TEST_CASE("indicators snap R2 to zero at pressure extrema") {
    const Profile pr = make_profile("-x", "1", "1", -1.0, 1.0);
    const Indicators ind = point_indicators(point_from(pr, 0.3), {1.4});
    CHECK(ind.r1 == doctest::Approx(-1.0));
    CHECK(ind.r2 == 0.0);
    CHECK(ind.k_infinite);
}

TEST_CASE("classify_point walks the condition sets") {
    const GasParams gp{1.4};

    // positive-b family admits any velocity slope through set2
    Indicators remark;
    remark.r1 = -10.0;
    remark.r2 = 0.5;
    remark.b = 1.0;
    remark.k = remark.b + 0.2;
    const PointVerdict v1 = classify_point(remark, gp);
    CHECK(v1.safe);
    CHECK(v1.sets.set2);
    CHECK_FALSE(v1.sets.set1);
    CHECK_FALSE(v1.sets.set3);
    CHECK_FALSE(v1.sets.set4);

    // constant data sits in set4 (and set1 when b >= 0)
    Indicators flat;
    flat.r1 = 0.0;
    flat.r2 = 0.0;
    flat.b = 0.3;
    const PointVerdict v2 = classify_point(flat, gp);
    CHECK(v2.safe);
    CHECK(v2.sets.set4);
    CHECK(v2.sets.set1);

    // infinite K routes only through set4
    Indicators kinf;
    kinf.r1 = 1.0;
    kinf.r2 = 0.0;
    kinf.k_infinite = true;
    kinf.b = std::numeric_limits<double>::quiet_NaN();
    const PointVerdict v3 = classify_point(kinf, gp);
    CHECK(v3.safe);
    CHECK(v3.sets.set4);
    CHECK_FALSE(v3.sets.set1);
    CHECK_FALSE(v3.sets.set2);
    CHECK_FALSE(v3.sets.set3);

    kinf.r1 = -1e-6;
    CHECK_FALSE(classify_point(kinf, gp).safe);

    CHECK_THROWS_AS(classify_point(flat, GasParams{0.5}), DomainError);
}

TEST_CASE("isentropic negative-slope point is unsafe and the dynamics escape") {
    const double g = 1.4;
    Indicators ind;
    ind.r2 = 0.8;
    ind.r1 = -0.5 * std::abs(ind.r2);
    ind.k = 0.0;
    ind.b = -(g - 1.0) / 2.0;
    const PointVerdict v = classify_point(ind, {g});
    CHECK_FALSE(v.safe);
    CHECK_FALSE(v.sets.set3);  // fails on R1 < 0
    const testsup::BruteResult brute =
        testsup::brute_force_r(ind.r1, ind.r2, ind.b, g, 1e-5, 500.0);
    CHECK(brute.escaped);
    CHECK(brute.r1 < 0.0);  // escape toward -infinity
}

TEST_CASE("gamma = 1 has no decaying branch with b < 0 and R2 != 0") {
    Indicators ind;
    ind.r1 = 1.0;
    ind.r2 = 1.0;
    ind.b = -1.0;
    ind.k = ind.b;
    const PointVerdict v = classify_point(ind, GasParams{1.0});
    CHECK_FALSE(v.safe);
    const Trajectory tr = integrate(RState{ind.r1, ind.r2, ind.b, 1.0}, 2000.0, 1e-10);
    CHECK(tr.outcome.kind != OutcomeKind::bounded);
}

TEST_CASE("classify_profile: globally smooth family stays smooth for any velocity") {
    for (const char* v0 : {"0", "-x", "-10*x*exp(-x^2)"}) {
        const double g = 1.4, k = 1.0 + 2.0 / g;
        char rho[64];
        std::snprintf(rho, sizeof rho, "exp(%.17g*x)", k);
        const Profile pr = make_profile(v0, rho, "exp(x)", -2.0, 2.0);
        GridSpec spec;
        spec.nodes = 101;
        const GlobalVerdict gv = classify_profile(pr, {g}, spec);
        CHECK(gv.smooth);
        CHECK(gv.witnesses.empty());
        CHECK_FALSE(gv.predicted_T.has_value());
    }
}

TEST_CASE("classify_profile: uniform compression is unsafe everywhere with T = 1") {
    const Profile pr = make_profile("-x", "1", "1", -1.0, 1.0);
    GridSpec spec;
    spec.nodes = 51;
    const GlobalVerdict gv = classify_profile(pr, {1.4}, spec);
    CHECK_FALSE(gv.smooth);
    CHECK(gv.witnesses.size() == 51);  // no safe/unsafe flips, no refinement
    CHECK(gv.grid.refined_nodes == 0);
    REQUIRE(gv.predicted_T.has_value());
    CHECK(*gv.predicted_T == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("classify_profile refines the safe/unsafe boundary") {
    // v0' = (2x^2 - 1) e^{-x^2} flips sign at x = 1/sqrt(2)
    const Profile pr = make_profile("-x*exp(-x^2)", "1", "1", -3.0, 3.0);
    GridSpec spec;
    spec.nodes = 101;
    spec.compute_predicted_T = false;
    const GlobalVerdict gv = classify_profile(pr, {1.4}, spec);
    CHECK_FALSE(gv.smooth);
    CHECK(gv.grid.refined_nodes > 0);
    CHECK(gv.grid.min_spacing <= 6.0 * 1e-6);
    const double flip = 1.0 / std::sqrt(2.0);
    for (const PointVerdict& w : gv.witnesses) {
        CHECK(std::abs(w.x) < flip + 1e-5);
    }
}

TEST_CASE("classify_isentropic matches the pointwise corollary") {
    GridSpec spec;
    spec.nodes = 81;
    spec.compute_predicted_T = false;

    const Profile expanding = make_profile("x", "1", "1", -1.0, 1.0);
    CHECK(classify_isentropic(expanding, {1.4}, spec).smooth);

    // gamma = 3 removes the density weight: any density variation is unsafe
    const Profile tanh_rho = make_profile("0", "1 + 0.1*tanh(x)", "1", -2.0, 2.0);
    const GlobalVerdict gv = classify_isentropic(tanh_rho, {3.0}, spec);
    CHECK_FALSE(gv.smooth);
    CHECK(gv.witnesses.size() >= 81u);  // rho' != 0 at every node

    CHECK_THROWS_AS(classify_isentropic(expanding, {1.0}, spec), DomainError);
}

TEST_CASE("classify_profile equals classify_isentropic on isentropic data") {
    const double g = 1.4;
    const std::string rho = "1 + 0.1*exp(-x^2)";
    const Profile pr = make_profile("0", rho, isentropic_pressure_text(rho, g), -2.0, 2.0);
    GridSpec spec;
    spec.nodes = 101;
    spec.compute_predicted_T = false;
    const GlobalVerdict a = classify_profile(pr, {g}, spec);
    const GlobalVerdict b = classify_isentropic(pr, {g}, spec);
    CHECK(a.smooth == b.smooth);
    REQUIRE(a.table.size() == b.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) {
        CHECK(a.table[i].safe == b.table[i].safe);
    }
    // (refined bisection nodes sit inside the tolerance band of the flip
    // point, where the quadratic and linear test shapes may round
    // differently; the grid-node contract is what both must agree on)
    // only the density extremum at x = 0 is safe
    CHECK_FALSE(a.smooth);
    for (const PointVerdict& pv : a.table)
        CHECK(pv.safe == (std::abs(pv.x) < 1e-12));
}

TEST_CASE("chaplygin classification and closed-form time") {
    GridSpec spec;
    spec.nodes = 81;

    // strict-hyperbolicity loss wherever v0' < -|R2|; rho' = 0 at the center
    const Profile pr = make_profile("-0.5*tanh(x)", "1 + 0.2*exp(-x^2)", "1", -2.0, 2.0);
    const GlobalVerdict gv = classify_chaplygin(pr, spec);
    CHECK(gv.mode == VerdictMode::chaplygin_degeneracy);
    CHECK_FALSE(gv.smooth);
    REQUIRE(gv.predicted_T.has_value());
    CHECK(*gv.predicted_T == doctest::Approx(2.0).epsilon(1e-9));  // 1/|v0'(0)|

    const Profile safe = make_profile("0.2*x", "1 + 0.2*exp(-x^2)", "1", -2.0, 2.0);
    CHECK(classify_chaplygin(safe, spec).smooth);

    // rho = 1/(1-x) gives R2 = rho'/rho^2 = 1 identically, so the pointwise
    // rule reduces to R1 versus -1
    for (const auto& [v0, smooth] : std::vector<std::pair<const char*, bool>>{
             {"-2*x", false},  // R1 = -2 < -|R2|
             {"-x", true},     // boundary, non-strict: no degeneracy
             {"0", true}}) {
        const Profile ch = make_profile(v0, "1/(1-x)", "1", -0.5, 0.5);
        CHECK(classify_chaplygin(ch, spec).smooth == smooth);
    }
}

TEST_CASE("entropy-based K differs from the classifier K by rho^(gamma+1)") {
    const double g = 1.4, k = 1.0 + 2.0 / g;
    char rho[64];
    std::snprintf(rho, sizeof rho, "exp(%.17g*x)", k);
    const Profile pr = make_profile("0", rho, "exp(x)", -2.0, 2.0);
    for (double x : {-1.0, -0.25, 0.0, 0.4, 1.3}) {
        const PointData pd = point_from(pr, x);
        const Indicators ind = point_indicators(pd, {g});
        const EntropyFormK ek = entropy_form_K(pd, {g});
        REQUIRE_FALSE(ek.degenerate);
        CHECK(ek.value == doctest::Approx(ind.k / std::pow(pd.rho0, g + 1.0)).epsilon(1e-12));
        CHECK(ek.value ==
              doctest::Approx((g + 1.0) / (2.0 * std::pow(pd.rho0, g + 1.0))).epsilon(1e-12));
    }

    // rho = 1 makes both forms coincide exactly
    const Profile unit = make_profile("0", "1", "exp(x)", -1.0, 1.0);
    const PointData pd = point_from(unit, 0.5);
    CHECK(entropy_form_K(pd, {g}).value ==
          doctest::Approx(point_indicators(pd, {g}).k).epsilon(1e-14));

    // isentropic data has S' = 0
    const std::string riso = "1 + 0.2*exp(-x^2)";
    const Profile iso = make_profile("0", riso, isentropic_pressure_text(riso, g), -2.0, 2.0);
    const EntropyFormK zk = entropy_form_K(point_from(iso, 0.7), {g});
    REQUIRE_FALSE(zk.degenerate);
    CHECK(std::abs(zk.value) < 1e-12);

    // pressure extremum degenerates the form
    const Profile flat = make_profile("0", riso, "1", -2.0, 2.0);
    CHECK(entropy_form_K(point_from(flat, 0.7), {g}).degenerate);
}

TEST_CASE("velocity translation leaves verdicts unchanged") {
    GridSpec spec;
    spec.nodes = 61;
    spec.compute_predicted_T = false;
    for (const char* shift : {"0.7", "-3"}) {
        const Profile base = make_profile("-x*exp(-x^2)", "1 + 0.1*exp(-x^2)",
                                          "1 + 0.05*exp(-(x-0.3)^2)", -2.0, 2.0);
        const Profile moved =
            make_profile(std::string("-x*exp(-x^2) + (") + shift + ")", "1 + 0.1*exp(-x^2)",
                         "1 + 0.05*exp(-(x-0.3)^2)", -2.0, 2.0);
        const GlobalVerdict a = classify_profile(base, {1.4}, spec);
        const GlobalVerdict b = classify_profile(moved, {1.4}, spec);
        REQUIRE(a.table.size() == b.table.size());
        for (std::size_t i = 0; i < a.table.size(); ++i) {
            CHECK(a.table[i].safe == b.table[i].safe);
            CHECK(a.table[i].ind.r1 == doctest::Approx(b.table[i].ind.r1).epsilon(1e-12));
        }
    }
}

TEST_CASE("with R2 = 0 the verdict depends only on the sign of R1") {
    std::mt19937 rng(131);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        Indicators ind;
        ind.r1 = u(rng);
        ind.r2 = 0.0;
        ind.k_infinite = (rng() % 2) == 0;
        ind.b = ind.k_infinite ? std::numeric_limits<double>::quiet_NaN() : u(rng);
        const PointVerdict v = classify_point(ind, {1.4});
        CHECK(v.safe == (ind.r1 >= -kDefaultTol));
    }
}

TEST_CASE("set3 membership tracks the sign of the first integral") {
    std::mt19937 rng(137);
    std::uniform_real_distribution<double> u(-2.0, 2.0), up(0.05, 2.0);
    int checked = 0;
    while (checked < 300) {
        const double g = 1.2 + 0.2 * (rng() % 10);
        Indicators ind;
        ind.r1 = u(rng);
        ind.r2 = (u(rng) < 0 ? -1 : 1) * up(rng);
        ind.b = -up(rng);
        ind.k = ind.b + (g - 1.0) / 2.0;
        const double coeff = 2.0 * ind.b / (g - 1.0);
        const double level = ind.r1 * ind.r1 + coeff * ind.r2 * ind.r2;
        const double scale = std::max(ind.r1 * ind.r1, std::abs(coeff) * ind.r2 * ind.r2);
        if (std::abs(level) < 1e-6 * std::max(1.0, scale)) continue;  // off the boundary
        const PointVerdict v = classify_point(ind, {g});
        const FirstIntegral c = first_integral(RState{ind.r1, ind.r2, ind.b, g});
        REQUIRE_FALSE(c.degenerate);
        const bool expect = ind.b < 0.0 && ind.r1 >= 0.0 && c.c >= 0.0;
        CHECK(v.sets.set3 == expect);
        ++checked;
    }
}

TEST_CASE("raising R1 never flips a safe point to unsafe") {
    const auto draws = testsup::robust_random_indicators(150, 977);
    std::mt19937 rng(139);
    std::uniform_real_distribution<double> bump(0.0, 3.0);
    for (auto [ind, gp] : draws) {
        const bool before = classify_point(ind, gp).safe;
        ind.r1 += bump(rng);
        const bool after = classify_point(ind, gp).safe;
        if (before) CHECK(after);
    }
}
