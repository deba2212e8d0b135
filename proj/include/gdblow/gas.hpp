#ifndef GDBLOW_GAS_HPP
#define GDBLOW_GAS_HPP

#include "gdblow/errors.hpp"

namespace gdblow {

// Polytropic gas parameterization, p = rho^gamma * exp(S) / gamma.
// gamma must be finite and nonzero; the classifier additionally requires
// gamma >= 1 (gamma = -1, the Chaplygin gas, goes through its own path).
struct GasParams {
    double gamma = 1.4;
};

// Throws DomainError unless gamma is finite and nonzero.
void check_gas(const GasParams& gp);

// Pointwise flow state in primitive variables, nondimensional units.
// rho > 0 and p > 0 (away-from-vacuum assumption).
struct PrimitiveState {
    double v = 0.0;
    double rho = 1.0;
    double p = 1.0;
};

void check_state(const PrimitiveState& s);

// The three wave speeds (v - c, v, v + c), strictly ordered for any valid
// state with gamma > 0.
struct CharSpeeds {
    double xi1;
    double xi2;
    double xi3;
};

// c = sqrt(gamma p / rho). Requires gamma > 0 and a valid state.
double sound_speed(const PrimitiveState& s, const GasParams& gp);

CharSpeeds char_speeds(const PrimitiveState& s, const GasParams& gp);

// S = ln(gamma p / rho^gamma). Note: a common shorthand drops the gamma
// factor; the two definitions differ by the constant ln(gamma), so every
// derivative-based use agrees.
double entropy(const PrimitiveState& s, const GasParams& gp);

}  // namespace gdblow

#endif  // GDBLOW_GAS_HPP
