#include "fractalac/hanoi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fractalac {

namespace {

constexpr double kWin = 1e-12;  // relative width of the special-r windows

bool near_r(double r, double r0) { return std::abs(r - r0) <= kWin * r0; }

bool tiny(cplx v, double scale) { return std::abs(v) <= 1e-12 * scale; }

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::string fmt_mag(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

Mat3 mat3(cplx a00, cplx a01, cplx a02, cplx a10, cplx a11, cplx a12,
          cplx a20, cplx a21, cplx a22) {
    Mat3 m;
    m(0, 0) = a00; m(0, 1) = a01; m(0, 2) = a02;
    m(1, 0) = a10; m(1, 1) = a11; m(1, 2) = a12;
    m(2, 0) = a20; m(2, 1) = a21; m(2, 2) = a22;
    return m;
}

// Quadratic A z^2 + i beta z + Cq = 0 with real A, beta, Cq.  The
// discriminant -beta^2 - 4 A Cq is real, so the roots either split into
// conjugate-symmetric real parts (filter case) or are purely imaginary; the
// imaginary pair goes through the real quadratic in y = Im z, taking the
// non-cancelling root first and its partner from the product, so a tiny
// leading coefficient cannot wash out the small root.
std::vector<cplx> structured_roots(double A, double beta, double Cq) {
    double disc = -beta * beta - 4.0 * A * Cq;
    double scale = beta * beta + 4.0 * std::abs(A * Cq);
    if (std::abs(disc) <= 1e-12 * scale)
        return {cplx(0.0, -beta / (2.0 * A))};
    if (disc > 0.0) {
        double s = std::sqrt(disc);
        return {cplx(s / (2.0 * A), -beta / (2.0 * A)),
                cplx(-s / (2.0 * A), -beta / (2.0 * A))};
    }
    double s = std::sqrt(-disc);
    double y1 = (-beta - std::copysign(s, beta)) / (2.0 * A);
    double y2 = -Cq / (A * y1);
    return {cplx(0.0, y1), cplx(0.0, y2)};
}

double pair_scale(const HanoiParams& p, cplx z1, cplx z2) {
    return std::max({std::abs(z1), std::abs(z2), std::abs(p.Z_C()),
                     std::abs(p.Z_L())});
}

CharacteristicPair finish_pair(const HanoiParams& p, cplx z1, cplx z2) {
    cplx zc = p.Z_C(), zl = p.Z_L();
    double r = p.r;
    cplx e1, e2;
    if (p.variant == HanoiVariant::I) {
        e1 = (z1 + z2 / 2.0) -
             (r * z1 + (r * z1 + 2.0 * r * z2 + zc) / 2.0);
        e2 = 2.0 * z2 -
             (2.0 * r * z2 + 1.0 / (1.0 / (2.0 * r * z2 + zl) +
                                    0.5 / (r * z1 + r * z2 + zc)));
    } else {
        e1 = (z1 + z2 / 2.0) -
             (zl + r * z1 + (r * z1 + 2.0 * r * z2 + 2.0 * zc) / 2.0);
        e2 = 2.0 * z2 -
             (2.0 * r * z2 + 2.0 * zc +
              1.0 / (1.0 / (2.0 * r * z2 + zl) +
                     1.0 / (2.0 * r * (z1 + z2) + 2.0 * zc)));
    }
    if (!finite(e1) || !finite(e2))
        throw DegenerateCase("impedance pair makes a branch of the defining "
                             "network resonant");
    double resid = std::max(std::abs(e1), std::abs(e2)) / pair_scale(p, z1, z2);
    if (!(resid <= 1e-10))
        throw NumericalError("self-consistency residual " + fmt_mag(resid) +
                             " exceeds tolerance");
    CharacteristicPair out;
    out.Z1 = z1;
    out.Z2 = z2;
    out.residual = resid;
    out.is_filter_root = (z1 + z2).real() > 0.0 && (2.0 * z2).real() > 0.0;
    return out;
}

// Z1 follows each Z2 root linearly; then residual-check, flag and sort.
std::vector<CharacteristicPair> sorted_pairs(const HanoiParams& p,
                                             const std::vector<cplx>& z2_roots) {
    cplx zc = p.Z_C(), zl = p.Z_L();
    double r = p.r;
    cplx add = (p.variant == HanoiVariant::I) ? zc : 2.0 * (zc + zl);
    std::vector<CharacteristicPair> out;
    out.reserve(z2_roots.size());
    for (cplx z2 : z2_roots) {
        cplx z1 = ((2.0 * r - 1.0) * z2 + add) / (2.0 - 3.0 * r);
        out.push_back(finish_pair(p, z1, z2));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CharacteristicPair& x, const CharacteristicPair& y) {
                         if (x.is_filter_root != y.is_filter_root)
                             return x.is_filter_root;
                         if (x.Z2.real() != y.Z2.real())
                             return x.Z2.real() > y.Z2.real();
                         return x.Z2.imag() > y.Z2.imag();
                     });
    return out;
}

} // namespace

std::vector<CharacteristicPair> hanoi_characteristic_pair(const HanoiParams& p) {
    p.validate();
    double r = p.r, w = p.omega, L = p.L, C = p.C;
    cplx zc = p.Z_C(), zl = p.Z_L();

    if (p.variant == HanoiVariant::I) {
        if (near_r(r, 1.0))
            throw NoSolution("r = 1 collapses the self-similar system; no "
                             "impedance pair exists");
        if (near_r(r, 0.5)) {
            // the odd coefficient drops out and the roots are real
            double s = 2.0 * std::sqrt(L / C);
            return sorted_pairs(p, {cplx(s, 0.0), cplx(-s, 0.0)});
        }
        if (near_r(r, 0.6)) {
            // leading coefficient r(5r-3) vanishes; the equation is linear
            cplx lin = (2.0 * r - 1.0) * (2.0 * zc + zl);
            if (tiny(lin, std::abs(2.0 * r - 1.0) *
                              (2.0 * std::abs(zc) + std::abs(zl))))
                throw DegenerateCase("2 Z_C + Z_L vanishes at r = 3/5 "
                                     "(omega^2 L C = 2)");
            return sorted_pairs(p, {-(zc * zl) / lin});
        }
        if (near_r(r, 2.0 / 3.0)) {
            // 2-3r = 0: only the root compatible with a finite Z1 survives
            cplx den = zl - 2.0 * zc;
            if (tiny(den, std::abs(zl) + 2.0 * std::abs(zc)))
                throw DegenerateCase("Z_L - 2 Z_C vanishes at r = 2/3");
            return {finish_pair(p, 3.0 * zc * zc / den, -3.0 * zc)};
        }
        double A = r * (5.0 * r - 3.0);
        double beta = (2.0 * r - 1.0) * (w * L - 2.0 / (w * C));
        return sorted_pairs(p, structured_roots(A, beta, L / C));
    }

    // variant II
    if (near_r(r, 0.6) || near_r(r, 1.0)) {
        // leading coefficient 2r(1-r)(5r-3) vanishes; linear equation
        double beta = 2.0 * (-2.0 * (1.0 - r) * (3.0 * r - 1.0) / (w * C) +
                             (2.0 * r - 1.0) * (r + 1.0) * w * L);
        double bscale =
            2.0 * (2.0 * std::abs((1.0 - r) * (3.0 * r - 1.0)) / (w * C) +
                   std::abs((2.0 * r - 1.0) * (r + 1.0)) * w * L);
        if (std::abs(beta) <= 1e-12 * bscale)
            throw DegenerateCase("the linear coefficient vanishes at r = 3/5 "
                                 "(omega^2 L C = 2)");
        double Cq = -2.0 * (w * L - 1.0 / (w * C)) *
                    (r * w * L - (2.0 - r) / (w * C));
        return sorted_pairs(p, {-Cq / cplx(0.0, beta)});
    }
    if (near_r(r, 2.0 / 3.0)) {
        cplx sum = zc + zl;
        if (tiny(sum, std::abs(zc) + std::abs(zl)))
            throw DegenerateCase("Z_C + Z_L vanishes at r = 2/3 (resonance "
                                 "omega^2 L C = 1)");
        cplx den = 2.0 * zc + 3.0 * zl;
        if (tiny(den, 2.0 * std::abs(zc) + 3.0 * std::abs(zl)))
            throw DegenerateCase("2 Z_C + 3 Z_L vanishes at r = 2/3 "
                                 "(omega^2 L C = 2/3)");
        return {finish_pair(p, -3.0 * sum * (9.0 * zc + zl) / den, -6.0 * sum)};
    }
    double A = 2.0 * r * (1.0 - r) * (5.0 * r - 3.0);
    double beta = 2.0 * (-2.0 * (1.0 - r) * (3.0 * r - 1.0) / (w * C) +
                         (2.0 * r - 1.0) * (r + 1.0) * w * L);
    double Cq = -2.0 * (w * L - 1.0 / (w * C)) *
                (r * w * L - (2.0 - r) / (w * C));
    return sorted_pairs(p, structured_roots(A, beta, Cq));
}

bool FilterRegion::contains(double Omega) const {
    if (empty) return false;
    double x = (variant == HanoiVariant::I) ? Omega / 2.0 : Omega;
    return lo < x && x < hi;
}

FilterRegion hanoi_filter_region(HanoiVariant v, double r, double L, double C) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw ParamError("r must be positive and finite");
    if (!(L > 0.0) || !(C > 0.0) || !std::isfinite(L) || !std::isfinite(C))
        throw ParamError("L and C must be positive and finite");

    double nan = std::numeric_limits<double>::quiet_NaN();
    FilterRegion reg{v, r, true, nan, nan, nan};

    if (v == HanoiVariant::I) {
        if (r >= 0.6) return reg;  // no filter roots at or past r = 3/5
        if (near_r(r, 0.5)) {
            // the threshold quadratic degenerates; every frequency passes
            reg.empty = false;
            reg.lo = 0.0;
            reg.hi = std::numeric_limits<double>::infinity();
            return reg;
        }
        double g =
            1.0 + r * (3.0 - 5.0 * r) / ((2.0 * r - 1.0) * (2.0 * r - 1.0));
        double s = std::sqrt(g * g - 1.0);
        reg.empty = false;
        reg.gamma = g;
        reg.lo = g - s;
        reg.hi = g + s;
        return reg;
    }

    // variant II: the band is cut out by a concave quadratic in Omega,
    // present only below r = 3/5 and collapsed exactly at r = 1/2
    if (!(r < 0.6) || near_r(r, 0.5)) return reg;
    double Aq = -24.0 * r * r * r * r + 28.0 * r * r * r - 9.0 * r * r +
                2.0 * r - 1.0;
    double Bq = -4.0 * (r - 1.0) * (r - 1.0) * (6.0 * r * r - 3.0 * r - 1.0);
    double Cq = 4.0 * (1.0 - r) * (4.0 * r * r * r - 2.0 * r * r + r - 1.0);
    double disc = Bq * Bq - 4.0 * Aq * Cq;
    if (!(disc > 0.0)) return reg;
    double q = -(Bq + std::copysign(std::sqrt(disc), Bq)) / 2.0;
    double x1 = q / Aq;
    double x2 = Cq / q;
    reg.empty = false;
    reg.lo = std::min(x1, x2);
    reg.hi = std::max(x1, x2);
    return reg;
}

Mat3 hanoi_pq_map(const HanoiParams& p, const CharacteristicPair& pair) {
    p.validate();
    cplx z1 = pair.Z1, z2 = pair.Z2;
    cplx zc = p.Z_C(), zl = p.Z_L();
    double r = p.r;
    double scale = pair_scale(p, z1, z2);

    if (tiny(z2, scale))
        throw DegenerateEigenbasis("Z2 vanishes; the symmetric eigenvector "
                                   "is undefined");
    cplx b = 2.0 * z1 + z2;

    cplx lp, lm, top;
    if (p.variant == HanoiVariant::I) {
        lp = 1.0 - r;
        lm = 1.0 - r;
        top = 2.0 * z1 / z2;
    } else {
        if (tiny(b, 2.0 * std::abs(z1) + std::abs(z2)))
            throw DegenerateEigenbasis("2 Z1 + Z2 vanishes");
        cplx tipden = r * z2 + zc;
        if (tiny(tipden, r * std::abs(z2) + std::abs(zc)))
            throw DegenerateEigenbasis("r Z2 + Z_C vanishes");
        lp = (r * z1 + r * z2 + zc) / b;
        lm = ((1.0 - r) * z2 - zc) / z2;
        top = 2.0 * (r * z1 + zl) / tipden;
    }

    Mat3 P = mat3(1.0, top, 0.0, 1.0, -1.0, 1.0, 1.0, -1.0, -1.0);

    double colscale = 1.0;
    for (int j = 0; j < 3; ++j) {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(P(i, j)));
        colscale *= m;
    }
    if (std::abs(P.det()) <= 1e-12 * colscale)
        throw DegenerateEigenbasis("eigenvector matrix is numerically "
                                   "singular");

    Mat3 D;
    D(0, 0) = 1.0;
    D(1, 1) = lp;
    D(2, 2) = lm;
    return P * D * P.inverse();
}

InterpolationSet hanoi_interp_matrices(const HanoiParams& p,
                                       const CharacteristicPair& pair) {
    p.validate();
    cplx z1 = pair.Z1, z2 = pair.Z2;
    cplx zc = p.Z_C(), zl = p.Z_L();
    double r = p.r;

    cplx b = 2.0 * z1 + z2;
    if (tiny(b, 2.0 * std::abs(z1) + std::abs(z2)))
        throw DegenerateCase("2 Z1 + Z2 vanishes");

    InterpolationSet set;
    set.pq = hanoi_pq_map(p, pair);
    set.b = b;

    if (p.variant == HanoiVariant::I) {
        cplx base = 4.0 * r * z2 + 2.0 * zl;
        if (tiny(base, 4.0 * r * std::abs(z2) + 2.0 * std::abs(zl)))
            throw DegenerateCase("4 r Z2 + 2 Z_L vanishes");
        cplx c = (1.0 - r) * zl / base;
        set.c = c;

        cplx u = r * (z1 + z2) / b;  // tip-to-tip pass-through weight
        cplx v = r * z1 / b;
        cplx t = r * z2 / b;
        cplx h = r / 2.0 - t / 2.0;
        cplx m = 0.5 - t / 2.0;
        cplx e = 1.0 - r;

        set.M0 = mat3(1.0, 0.0, 0.0, e, u, v, e, v, u);
        set.M1 = mat3(u, e, h, 0.0, 1.0, 0.0, t, m + c, m - c);
        set.M2 = mat3(u, h, e, t, m - c, m + c, 0.0, 0.0, 1.0);
        return set;
    }

    if (tiny(z2, pair_scale(p, z1, z2))) throw DegenerateCase("Z2 vanishes");
    cplx base = 2.0 * r * z2 + zl;
    if (tiny(base, 2.0 * r * std::abs(z2) + std::abs(zl)))
        throw DegenerateCase("2 r Z2 + Z_L vanishes");
    cplx c = r * z1 + r * z2 + zc;
    if (tiny(c, r * std::abs(z1) + r * std::abs(z2) + std::abs(zc)))
        throw DegenerateCase("r Z1 + r Z2 + Z_C vanishes");
    cplx d = (1.0 - r) * z2 - zc;
    set.c = c;
    set.d = d;

    cplx X = d * (z2 - d) / (2.0 * c * z2);
    cplx Y = d * zl / (2.0 * z2 * base);
    cplx half = (b - c) / (2.0 * b);
    cplx mid = (b + d - z2) / (2.0 * b);
    cplx diag = 1.0 - zc * (z1 + z2) / (b * z2);
    cplx off = z1 * zc / (b * z2);

    set.M0 = mat3(1.0 - 2.0 * zl / b, zl / b, zl / b,
                  (c + zc) / b, r / 2.0 + zl / b + r * d / (2.0 * c),
                  r / 2.0 + zl / b - r * d / (2.0 * c),
                  (c + zc) / b, r / 2.0 + zl / b - r * d / (2.0 * c),
                  r / 2.0 + zl / b + r * d / (2.0 * c));
    set.M1 = mat3(c / b, half + X, half - X,
                  zc / b, diag, off,
                  (r * z2 + zc) / b, mid + Y, mid - Y);
    set.M2 = mat3(c / b, half - X, half + X,
                  (r * z2 + zc) / b, mid - Y, mid + Y,
                  zc / b, off, diag);
    return set;
}

} // namespace fractalac
