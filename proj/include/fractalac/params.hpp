#pragma once
#include <cmath>

#include "fractalac/errors.hpp"
#include "fractalac/mat3.hpp"

namespace fractalac {

// Drive and component parameters of the ladder circuit.  epsilon > 0 puts a
// small resistor in series with every reactive component; it is folded into
// the component impedances rather than adding nodes.
struct CircuitParams {
    double omega = 1.0;
    double L = 1.0;
    double C = 1.0;
    double epsilon = 0.0;

    double Omega() const { return omega * omega * L * C; }
    cplx Z_C() const { return cplx(0.0, -1.0 / (omega * C)) + epsilon; }
    cplx Z_L() const { return cplx(0.0, omega * L) + epsilon; }

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw ParamError("omega must be positive and finite");
        if (!(L > 0.0) || !std::isfinite(L))
            throw ParamError("L must be positive and finite");
        if (!(C > 0.0) || !std::isfinite(C))
            throw ParamError("C must be positive and finite");
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
            throw ParamError("epsilon must be nonnegative and finite");
    }
};

} // namespace fractalac
