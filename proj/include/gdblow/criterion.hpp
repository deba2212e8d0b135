#ifndef GDBLOW_CRITERION_HPP
#define GDBLOW_CRITERION_HPP

#include <optional>
#include <vector>

#include "gdblow/gas.hpp"
#include "gdblow/profile.hpp"

namespace gdblow {

// Pointwise indicator fields computed from the Cauchy data:
//   R1 = v0',  R2 = p0'/sqrt(gamma rho0 p0),
//   K  = gamma p0 rho0' / (2 rho0 p0') - 1/2,   b = K - (gamma-1)/2.
// When p0' vanishes (within the zero threshold) R2 is snapped to exactly 0
// and K is marked infinite; b is undefined in that case and only the R2 = 0
// branch of the classifier applies.
struct Indicators {
    double r1 = 0.0;
    double r2 = 0.0;
    double k = 0.0;
    bool k_infinite = false;
    double b = 0.0;
};

// Membership in the smoothness condition sets:
//   set1: b >= 0 and R1 >= 0
//   set2: b > 0 and R2 != 0
//   set3: b < 0, R1 >= 0 and R1^2 + (2b/(gamma-1)) R2^2 >= 0   (gamma > 1)
//   set4: R2 = 0 and R1 >= 0
//   chap: Chaplygin-mode bound R1 >= -|R2| (reported separately)
struct ConditionFlags {
    bool set1 = false;
    bool set2 = false;
    bool set3 = false;
    bool set4 = false;
    bool chap = false;
};

struct PointVerdict {
    double x = 0.0;
    Indicators ind;
    ConditionFlags sets;
    bool safe = false;
};

inline constexpr double kDefaultTol = 1e-12;

Indicators point_indicators(const PointData& pd, const GasParams& gp);

// Evaluates the four condition sets with a symmetric tolerance band;
// non-strict bounds resolve in favor of "safe". Requires gamma >= 1.
PointVerdict classify_point(const Indicators& ind, const GasParams& gp,
                            double tol = kDefaultTol);

struct GridSpec {
    int nodes = 401;
    double refine_frac = 1e-6;  // bisection floor as a fraction of (b - a)
    double tol = kDefaultTol;
    bool compute_predicted_T = true;
    double ode_t_max = 1e4;   // escape-search horizon for blow-up times
    double ode_tol = 1e-10;
};

struct GridMeta {
    double a = 0.0, b = 0.0;
    int initial_nodes = 0;
    int refined_nodes = 0;     // extra nodes classified during bisection
    double min_spacing = 0.0;  // finest bracket reached at a safe/unsafe flip
};

enum class VerdictMode { condition_sets, chaplygin_degeneracy };

// The window-wide decision. `witnesses` holds every unsafe node (initial
// grid plus refinement), ordered by x; empty iff smooth. predicted_T is the
// minimum blow-up-time estimate over the witnesses (the first ray to blow up
// sets the catastrophe time).
struct GlobalVerdict {
    bool smooth = true;
    std::vector<PointVerdict> witnesses;
    std::optional<double> predicted_T;
    GridMeta grid;
    VerdictMode mode = VerdictMode::condition_sets;
    std::vector<PointVerdict> table;  // initial-grid verdicts in order
};

GlobalVerdict classify_profile(const Profile& pr, const GasParams& gp,
                               const GridSpec& spec = {});

// Independent oracle for the isentropic regime: p0 is ignored and pressure
// is taken as rho0^gamma/gamma; a point is safe iff
// v0' >= rho0^((gamma-3)/2) |rho0'|. Requires gamma > 1 (the reduction that
// yields this bound fixes b = -(gamma-1)/2 < 0).
GlobalVerdict classify_isentropic(const Profile& pr, const GasParams& gp,
                                  const GridSpec& spec = {});

// gamma = -1 with the isentropic Chaplygin law p0 = -1/rho0 (K = 0, b = 1):
// unsafe iff R1 < -|R2|, which signals loss of strict hyperbolicity rather
// than a classical gradient catastrophe.
GlobalVerdict classify_chaplygin(const Profile& pr, const GridSpec& spec = {});

// The entropy-based form K_S = -(1/2) S0' / (rho0^(gamma+1) (ln p0)'),
// exposed for cross-reporting. It equals the classifier's K divided by
// rho0^(gamma+1); the classifier always uses the definition above.
struct EntropyFormK {
    double value = 0.0;
    bool degenerate = false;  // (ln p0)' below the zero threshold
};
EntropyFormK entropy_form_K(const PointData& pd, const GasParams& gp);

}  // namespace gdblow

#endif  // GDBLOW_CRITERION_HPP
