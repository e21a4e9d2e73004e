#include "fractalac/fsl.hpp"

#include <cmath>
#include <limits>

namespace fractalac {

const char* to_string(FSLRegime r) {
    switch (r) {
        case FSLRegime::Filter: return "Filter";
        case FSLRegime::BelowBand: return "BelowBand";
        case FSLRegime::AboveBand: return "AboveBand";
        case FSLRegime::BandEdge: return "BandEdge";
    }
    return "?";
}

double fsl_band_edge_lo() { return 9.0 * (4.0 - std::sqrt(15.0)); }
double fsl_band_edge_hi() { return 9.0 * (4.0 + std::sqrt(15.0)); }

FSLImpedance fsl_characteristic_impedance(const CircuitParams& p) {
    p.validate();
    if (p.epsilon != 0.0)
        throw ParamError("characteristic impedance closed form needs epsilon = 0");

    double Om = p.Omega();
    double D = 144.0 * Om - 4.0 * Om * Om - 81.0;
    double denom = 10.0 * p.omega * p.C;

    FSLImpedance out;
    if (D > 0.0) {
        out.Z = cplx(std::sqrt(D), 9.0 + 2.0 * Om) / denom;
        out.regime = FSLRegime::Filter;
    } else if (D == 0.0) {
        out.Z = cplx(0.0, 9.0 + 2.0 * Om) / denom;
        out.regime = FSLRegime::BandEdge;
    } else {
        double S = std::sqrt(-D);
        // below the band the root subtracts, above it adds
        if (Om < 0.5 * fsl_band_edge_lo()) {
            // conjugate form of 2 Om + 9 - S, immune to cancellation as Om -> 0
            out.Z = cplx(0.0, 180.0 * Om / (2.0 * Om + 9.0 + S)) / denom;
            out.regime = FSLRegime::BelowBand;
        } else {
            out.Z = cplx(0.0, (2.0 * Om + 9.0 + S)) / denom;
            out.regime = FSLRegime::AboveBand;
        }
    }

    // self-consistency residual of the defining parallel-network equation
    cplx zc = p.Z_C();
    cplx zl = p.Z_L();
    cplx lhs = 1.0 / out.Z;
    cplx resid = lhs - 1.0 / zl - 1.0 / (3.0 * zc + (5.0 / 3.0) * out.Z);
    if (std::abs(resid) > 1e-11 * std::abs(lhs))
        throw NumericalError("characteristic impedance fails its defining equation");
    return out;
}

cplx FLTMap::operator()(cplx z) const {
    cplx den = c * z + d;
    if (std::abs(den) < 1e-300)
        throw PoleHit("argument at the pole of the map", -1);
    return (a * z + b) / den;
}

cplx FLTMap::multiplier_at(cplx z) const {
    cplx den = c * z + d;
    return (a * d - b * c) / (den * den);
}

FLTMap fsl_flt(const CircuitParams& p) {
    p.validate();
    cplx zl = p.Z_L();
    cplx zc = p.Z_C();

    FLTMap F;
    F.a = 5.0 * zl;
    F.b = 9.0 * zl * zc;
    F.c = 5.0;
    F.d = 3.0 * zl + 9.0 * zc;

    cplx det = F.a * F.d - F.b * F.c;  // = 15 zl^2
    double det_scale = std::abs(F.a) * std::abs(F.d) + std::abs(F.b) * std::abs(F.c);
    if (std::abs(det) <= 1e-14 * det_scale || std::abs(det) < 1e-300)
        throw DegenerateMap("map determinant vanishes");

    // fixed points of z = F(z); principal branch, with the sign of an exact
    // negative-real radicand pinned to the upper half plane
    cplx A = 9.0 * zc + 8.0 * zl;
    cplx rad = A * A - 60.0 * zl * zl;
    if (rad.imag() == 0.0) rad = cplx(rad.real(), +0.0);
    cplx s = std::sqrt(rad);
    cplx zp = (2.0 * zl - 9.0 * zc + s) / 10.0;
    cplx zm = (2.0 * zl - 9.0 * zc - s) / 10.0;

    // the physical fixed point is the attracting one; on a neutral tie take
    // the root with the larger real part (the dissipative branch)
    double mp = std::abs(F.multiplier_at(zp));
    double mm = std::abs(F.multiplier_at(zm));
    if (std::abs(mp - mm) > 1e-9 * std::max(mp, mm)) {
        if (mp < mm) {
            F.z_plus = zp;
            F.z_minus = zm;
        } else {
            F.z_plus = zm;
            F.z_minus = zp;
        }
    } else {
        if (zp.real() >= zm.real()) {
            F.z_plus = zp;
            F.z_minus = zm;
        } else {
            F.z_plus = zm;
            F.z_minus = zp;
        }
    }
    return F;
}

std::vector<cplx> fsl_iterate(const CircuitParams& p, cplx Z0, long N) {
    if (N < 0) throw ParamError("iteration count must be nonnegative");
    FLTMap F = fsl_flt(p);
    std::vector<cplx> seq;
    seq.reserve(static_cast<size_t>(N) + 1);
    seq.push_back(Z0);
    cplx z = Z0;
    for (long n = 0; n < N; ++n) {
        cplx den = F.c * z + F.d;
        if (std::abs(den) < 1e-300)
            throw PoleHit("orbit hit the pole of the map at iterate " +
                              std::to_string(n),
                          n);
        z = (F.a * z + F.b) / den;
        seq.push_back(z);
    }
    return seq;
}

std::vector<RegularizedPoint>
fsl_regularized_limit(const CircuitParams& p, const std::vector<double>& epsilons) {
    p.validate();
    if (epsilons.empty()) throw ParamError("empty epsilon schedule");
    double prev = std::numeric_limits<double>::infinity();
    for (double e : epsilons) {
        if (!(e > 0.0) || !std::isfinite(e))
            throw ParamError("epsilon schedule must be strictly positive");
        if (!(e < prev))
            throw ParamError("epsilon schedule must be strictly decreasing");
        prev = e;
    }

    std::vector<RegularizedPoint> out;
    out.reserve(epsilons.size());
    for (double e : epsilons) {
        CircuitParams q = p;
        q.epsilon = e;
        FLTMap F = fsl_flt(q);
        double mult = std::abs(F.multiplier_at(F.z_plus));
        if (!(mult < 1.0))
            throw NumericalError("perturbed fixed point is not attracting");
        out.push_back({e, F.z_plus, mult});
    }
    return out;
}

} // namespace fractalac
