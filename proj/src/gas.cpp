#include "gdblow/gas.hpp"

#include <cmath>

namespace gdblow {

void check_gas(const GasParams& gp) {
    if (!std::isfinite(gp.gamma)) throw DomainError("gamma must be finite");
    if (gp.gamma == 0.0) throw DomainError("gamma must be nonzero");
}

void check_state(const PrimitiveState& s) {
    if (!(s.rho > 0.0) || !std::isfinite(s.rho))
        throw DomainError("rho must be positive and finite, got " + std::to_string(s.rho));
    if (!(s.p > 0.0) || !std::isfinite(s.p))
        throw DomainError("p must be positive and finite, got " + std::to_string(s.p));
    if (!std::isfinite(s.v)) throw DomainError("v must be finite");
}

double sound_speed(const PrimitiveState& s, const GasParams& gp) {
    check_gas(gp);
    check_state(s);
    if (gp.gamma < 0.0) throw DomainError("sound speed requires gamma > 0");
    return std::sqrt(gp.gamma * s.p / s.rho);
}

CharSpeeds char_speeds(const PrimitiveState& s, const GasParams& gp) {
    const double c = sound_speed(s, gp);
    return {s.v - c, s.v, s.v + c};
}

double entropy(const PrimitiveState& s, const GasParams& gp) {
    check_gas(gp);
    check_state(s);
    if (gp.gamma < 0.0) throw DomainError("entropy requires gamma > 0");
    return std::log(gp.gamma * s.p) - gp.gamma * std::log(s.rho);
}

}  // namespace gdblow
