#include "fractalac/sg.hpp"

namespace fractalac {

SGConductance sg_symmetric_conductance(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw ParamError("s must be positive and finite");
    if (std::abs(s - 1.5) <= 1e-12 * 1.5)
        throw ParamError("s = 3/2 is the pole of the conductance formula");

    double den = 3.0 - 2.0 * s;
    double t = s * s - 1.0;
    // algebraically t^2 + s^2 den = s^2 (s-1)^2 + 1, so this stays >= 1 for
    // real s; the complex path below is kept for the record
    double rad = t * t + s * s * den;

    SGConductance out;
    out.complex_radicand = rad < 0.0;
    if (!out.complex_radicand) {
        double root = std::sqrt(rad);
        out.value = cplx((t + root) / den, 0.0);
        out.second_branch = cplx((t - root) / den, 0.0);
    } else {
        cplx root = std::sqrt(cplx(rad, 0.0));
        out.value = (cplx(t, 0.0) + root) / den;
        out.second_branch = (cplx(t, 0.0) - root) / den;
    }
    return out;
}

} // namespace fractalac
