#pragma once
#include "fractalac/mat3.hpp"

namespace fractalac {

// Conductance ratio of the bilaterally symmetric self-similar circuit on the
// gasket, as a function of the impedance scaling ratio s.  For real positive
// s the radicand s^2 (s-1)^2 + 1 is >= 1, so the value is real; the
// complex_radicand path is kept for completeness and reports both branches.
struct SGConductance {
    cplx value;          // principal-branch evaluation
    cplx second_branch;  // the -sqrt branch (equals value when radicand >= 0
                         // only up to the sign of the root term)
    bool complex_radicand;
};

SGConductance sg_symmetric_conductance(double s);

} // namespace fractalac
