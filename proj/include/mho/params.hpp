#pragma once

#include <cmath>

#include "mho/errors.hpp"

namespace mho {

/// Physical constants shared by the classical and quantum oscillator.
/// SI units: c in m/s, kappa2 in J/m^2, hbar in J s.
struct OscillatorParams {
    double c = 1.0;
    double kappa2 = 1.0;
    double hbar = 1.0;

    double kappa() const { return std::sqrt(kappa2); }

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
        if (!ok(c) || !ok(kappa2) || !ok(hbar)) {
            throw DomainError("OscillatorParams: c, kappa2 and hbar must be finite and positive");
        }
    }

    static OscillatorParams natural() { return {1.0, 1.0, 1.0}; }
};

}  // namespace mho
