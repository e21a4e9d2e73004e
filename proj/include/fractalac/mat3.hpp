#pragma once
#include <array>
#include <cmath>
#include <complex>

#include "fractalac/errors.hpp"

namespace fractalac {

using cplx = std::complex<double>;

using Vec3 = std::array<cplx, 3>;

// Dense complex 3x3 matrix, enough linear algebra for the interpolation sets.
struct Mat3 {
    std::array<std::array<cplx, 3>, 3> a{};

    cplx& operator()(int i, int j) { return a[i][j]; }
    const cplx& operator()(int i, int j) const { return a[i][j]; }

    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m.a[i][i] = 1.0;
        return m;
    }

    Vec3 operator*(const Vec3& v) const {
        Vec3 out{};
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) s += a[i][j] * v[j];
            out[i] = s;
        }
        return out;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
                out.a[i][j] = s;
            }
        return out;
    }

    cplx det() const {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
             - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
             + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    // max row sum of moduli
    double norm_inf() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j) s += std::abs(a[i][j]);
            m = std::max(m, s);
        }
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j]));
        return m;
    }

    // Adjugate inverse; the caller is responsible for checking that the
    // determinant is not degenerate relative to the matrix scale.
    Mat3 inverse() const {
        cplx dd = det();
        if (std::abs(dd) == 0.0)
            throw SingularSystem("3x3 inverse of an exactly singular matrix");
        Mat3 inv;
        inv.a[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / dd;
        inv.a[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / dd;
        inv.a[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / dd;
        inv.a[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / dd;
        inv.a[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / dd;
        inv.a[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / dd;
        inv.a[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / dd;
        inv.a[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / dd;
        inv.a[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / dd;
        return inv;
    }
};

// The 3x3 matrices that push a boundary voltage triple one construction
// level deeper: pq maps the triple to the next-level junction values, and
// M0..M2 give the boundary triples of the three sub-copies.  b, c, d are the
// auxiliary scalars the Hanoi entries are written in (zero when unused).
struct InterpolationSet {
    Mat3 pq;
    Mat3 M0, M1, M2;
    cplx b{}, c{}, d{};

    const Mat3& copy_matrix(int j) const {
        switch (j) {
            case 0: return M0;
            case 1: return M1;
            case 2: return M2;
        }
        throw AddressError("copy index out of range");
    }
};

// Result of an address-word harmonic evaluation; kappa is the product of the
// inf-norms of the applied matrices and bounds the output against the input.
struct HarmonicTriple {
    Vec3 values{};
    double kappa = 1.0;
};

} // namespace fractalac
