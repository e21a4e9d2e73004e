#include <doctest.h>

#include <cmath>

#include "fractalac/fsl.hpp"
#include "fractalac/solver.hpp"
#include "testutil.hpp"

using namespace fractalac;
using testutil::rel_err;

namespace {

CircuitParams at_Omega(double Om, double C = 1.0) {
    CircuitParams p;
    p.C = C;
    p.L = Om / C;  // omega = 1
    return p;
}

} // namespace

TEST_CASE("characteristic impedance at Omega = 2") {
    CircuitParams p = at_Omega(2.0);
    auto out = fsl_characteristic_impedance(p);
    CHECK(out.regime == FSLRegime::Filter);
    CHECK(rel_err(out.Z, cplx(std::sqrt(191.0) / 10.0, 1.3)) < 1e-15);
    CHECK(rel_err(out.terminal_impedance(), cplx(std::sqrt(191.0) / 15.0, 13.0 / 15.0)) < 1e-15);
}

TEST_CASE("band edges and regime classification") {
    double lo = fsl_band_edge_lo(), hi = fsl_band_edge_hi();
    CHECK(lo == 9.0 * (4.0 - std::sqrt(15.0)));
    CHECK(hi == 9.0 * (4.0 + std::sqrt(15.0)));

    // the edges are quoted in the doubled variable: the band is Omega in (lo/2, hi/2)
    CHECK(fsl_characteristic_impedance(at_Omega(lo / 2 * 0.999)).regime == FSLRegime::BelowBand);
    CHECK(fsl_characteristic_impedance(at_Omega(lo / 2 * 1.001)).regime == FSLRegime::Filter);
    CHECK(fsl_characteristic_impedance(at_Omega(hi / 2 * 0.999)).regime == FSLRegime::Filter);
    CHECK(fsl_characteristic_impedance(at_Omega(hi / 2 * 1.001)).regime == FSLRegime::AboveBand);

    // outside the band Z is purely imaginary, inside it has a real part
    CHECK(fsl_characteristic_impedance(at_Omega(0.1)).Z.real() == 0.0);
    CHECK(fsl_characteristic_impedance(at_Omega(50.0)).Z.real() == 0.0);
    CHECK(fsl_characteristic_impedance(at_Omega(2.0)).Z.real() > 0.0);
}

TEST_CASE("characteristic impedance rejects lossy parameters") {
    CircuitParams p = at_Omega(2.0);
    p.epsilon = 0.5;
    CHECK_THROWS_AS(fsl_characteristic_impedance(p), ParamError);
    p.epsilon = 0.0;
    p.omega = -1.0;
    CHECK_THROWS_AS(fsl_characteristic_impedance(p), ParamError);
}

TEST_CASE("impedance scales like sqrt(L/C) at fixed Omega") {
    CircuitParams p = at_Omega(2.0);
    for (double a : {10.0, 1e-3}) {
        CircuitParams q;
        q.L = p.L * a;
        q.C = p.C / a;
        auto z1 = fsl_characteristic_impedance(p);
        auto z2 = fsl_characteristic_impedance(q);
        CHECK(z2.regime == z1.regime);
        CHECK(rel_err(z2.Z, a * z1.Z) < 1e-12);
    }
}

TEST_CASE("low and high frequency asymptotes") {
    // Omega -> 0: Z ~ i Omega / (omega C); Omega -> inf: Z ~ (2/5) Z_L
    CircuitParams lo = at_Omega(1e-8);
    CHECK(rel_err(fsl_characteristic_impedance(lo).Z, cplx(0.0, 1e-8)) < 1e-3);
    CircuitParams hi = at_Omega(1e8);
    CHECK(rel_err(fsl_characteristic_impedance(hi).Z, 0.4 * hi.Z_L()) < 1e-3);
}

TEST_CASE("defining equation residual across the band") {
    double lo = fsl_band_edge_lo() / 2, hi = fsl_band_edge_hi() / 2;
    for (int i = 0; i < 100; ++i) {
        CircuitParams p = at_Omega(lo + (i + 0.5) * (hi - lo) / 100);
        auto out = fsl_characteristic_impedance(p);
        cplx lhs = 1.0 / out.Z;
        cplx resid = lhs - 1.0 / p.Z_L() - 1.0 / (3.0 * p.Z_C() + (5.0 / 3.0) * out.Z);
        CHECK(std::abs(resid) <= 1e-11 * std::abs(lhs));
    }
}

TEST_CASE("exact band edge hits classify as BandEdge") {
    // scan Omega = L (omega = C = 1) one ulp at a time looking for a
    // representable zero of the discriminant; such a hit need not exist
    bool found = false;
    for (double edge2 : {fsl_band_edge_lo(), fsl_band_edge_hi()}) {
        double cand = edge2 / 2;
        for (int k = 0; k < 3000; ++k) cand = std::nextafter(cand, 0.0);
        for (int k = -3000; k <= 3000; ++k, cand = std::nextafter(cand, 1e9)) {
            double D = 144.0 * cand - 4.0 * cand * cand - 81.0;
            if (D == 0.0) {
                found = true;
                auto out = fsl_characteristic_impedance(at_Omega(cand));
                CHECK(out.regime == FSLRegime::BandEdge);
                CHECK(out.Z.real() == 0.0);
                CHECK(rel_err(out.Z, cplx(0.0, (9.0 + 2.0 * cand) / 10.0)) < 1e-15);
                break;
            }
        }
    }
    INFO("representable discriminant zero found: ", found);
    CHECK(true);
}

TEST_CASE("substitution map structure") {
    CircuitParams p = at_Omega(2.0);
    auto F = fsl_flt(p);
    cplx zl = p.Z_L(), zc = p.Z_C();

    SUBCASE("determinant and coefficients") {
        CHECK(rel_err(F.a * F.d - F.b * F.c, 15.0 * zl * zl) < 1e-14);
        CHECK(rel_err(F.a, 5.0 * zl) < 1e-15);
        CHECK(rel_err(F.b, 9.0 * zl * zc) < 1e-15);
        CHECK(rel_err(F.c, 5.0) < 1e-15);
        CHECK(rel_err(F.d, 3.0 * zl + 9.0 * zc) < 1e-15);
    }

    SUBCASE("fixed points are fixed and match the closed form") {
        CHECK(rel_err(F(F.z_plus), F.z_plus) < 1e-12);
        CHECK(rel_err(F(F.z_minus), F.z_minus) < 1e-12);
        cplx rad = std::sqrt((9.0 * zc + 8.0 * zl) * (9.0 * zc + 8.0 * zl) -
                             60.0 * zl * zl);
        cplx zp = (2.0 * zl - 9.0 * zc + rad) / 10.0;
        cplx zm = (2.0 * zl - 9.0 * zc - rad) / 10.0;
        bool direct = rel_err(F.z_plus, zp) < 1e-12 && rel_err(F.z_minus, zm) < 1e-12;
        bool swapped = rel_err(F.z_plus, zm) < 1e-12 && rel_err(F.z_minus, zp) < 1e-12;
        CHECK((direct || swapped));
    }

    SUBCASE("in the band the physical fixed point is the impedance") {
        CHECK(rel_err(F.z_plus, fsl_characteristic_impedance(p).Z) < 1e-12);
        CHECK(std::abs(std::abs(F.multiplier_at(F.z_plus)) - 1.0) < 1e-10);
    }

    SUBCASE("multiplier product over the two fixed points is 1") {
        for (double Om : {0.3, 2.0, 17.0, 40.0}) {
            auto G = fsl_flt(at_Omega(Om));
            cplx prod = G.multiplier_at(G.z_plus) * G.multiplier_at(G.z_minus);
            CHECK(rel_err(prod, 1.0) < 1e-10);
        }
    }
}

TEST_CASE("strong damping limit of the contraction factor") {
    // as epsilon grows the Cayley-type ratio tends to 17/sqrt(229)
    CircuitParams p = at_Omega(2.0);
    p.epsilon = 1e6;
    auto F = fsl_flt(p);
    cplx m = F.multiplier_at(F.z_plus);
    cplx q = (1.0 + m) / (1.0 - m);
    double target = 17.0 / std::sqrt(229.0);
    CHECK(std::abs(q - target) < 1e-4 * target);
}

TEST_CASE("orbits of the substitution map") {
    CircuitParams p = at_Omega(2.0);

    SUBCASE("orbit layout") {
        auto orbit = fsl_iterate(p, p.Z_L(), 5);
        REQUIRE(orbit.size() == 6);
        CHECK(orbit[0] == p.Z_L());
        auto F = fsl_flt(p);
        cplx z = p.Z_L();
        for (int n = 1; n <= 5; ++n) {
            z = F(z);
            CHECK(rel_err(orbit[n], z) < 1e-15);
        }
    }

    SUBCASE("negative length is rejected") {
        CHECK_THROWS_AS(fsl_iterate(p, p.Z_L(), -1), ParamError);
    }

    SUBCASE("starting on the pole reports the iterate index") {
        // at omega = L = C = 1 the pole -d/c = 1.2i is exactly representable
        CircuitParams unit;
        try {
            fsl_iterate(unit, cplx(0.0, 1.2), 3);
            FAIL("expected a pole hit");
        } catch (const PoleHit& e) {
            CHECK(e.index == 0);
        }
    }
}

TEST_CASE("regularized fixed-point ladder") {
    CircuitParams p;
    p.L = 0.01;
    p.C = 200.0;  // Omega = 2 at a scale where the perturbed maps contract well

    SUBCASE("strictly decreasing distances to the ideal impedance") {
        auto pts = fsl_regularized_limit(p, {1e-2, 1e-3, 1e-4});
        REQUIRE(pts.size() == 3);
        cplx Z = fsl_characteristic_impedance(p).Z;
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& pt : pts) {
            CHECK(pt.multiplier_mag < 1.0);
            double d = std::abs(pt.Z - Z);
            CHECK(d < prev);
            prev = d;
        }
        CHECK(prev < 1e-3);
    }

    SUBCASE("schedule gates") {
        CHECK_THROWS_AS(fsl_regularized_limit(p, {}), ParamError);
        CHECK_THROWS_AS(fsl_regularized_limit(p, {1e-2, 1e-2}), ParamError);
        CHECK_THROWS_AS(fsl_regularized_limit(p, {1e-3, 1e-2}), ParamError);
        CHECK_THROWS_AS(fsl_regularized_limit(p, {1e-2, 0.0}), ParamError);
        CHECK_THROWS_AS(fsl_regularized_limit(p, {-1e-2}), ParamError);
    }
}

TEST_CASE("level graph construction") {
    CircuitParams p;
    p.epsilon = 0.01;

    SUBCASE("level 0 is a triangle") {
        auto g = fsl_build_level_graph(p, 0);
        CHECK(g.node_count() == 3);
        CHECK(g.edge_count() == 3);
        CHECK(g.nodes() == std::vector<std::string>{"p0", "p1", "p2"});
    }

    SUBCASE("level 1 node order and sizes") {
        auto g = fsl_build_level_graph(p, 1);
        CHECK(g.nodes() == std::vector<std::string>{"p0", "p1", "p2", "q0", "s01",
                                                    "s02", "q1", "s12", "q2"});
        CHECK(g.edge_count() == 15);
    }

    SUBCASE("counts follow 3^(N+1) nodes and 3 E + 6 edges") {
        auto g = fsl_build_level_graph(p, 2);
        CHECK(g.node_count() == 27);
        CHECK(g.edge_count() == 51);
        auto g3 = fsl_build_level_graph(p, 3);
        CHECK(g3.node_count() == 81);
        CHECK(g3.edge_count() == 159);
    }

    SUBCASE("depth bounds") {
        CHECK_THROWS_AS(fsl_build_level_graph(p, 9), SizeError);
        CHECK_THROWS_AS(fsl_build_level_graph(p, -1), SizeError);
    }

    SUBCASE("terminal impedance approaches the substitution orbit") {
        CircuitParams u;
        u.L = 2.0;
        u.epsilon = 0.01;
        for (int N : {1, 2}) {
            auto g = fsl_build_level_graph(u, N);
            cplx eff = effective_impedance(g, "p0", "p1");
            cplx want = (2.0 / 3.0) * fsl_iterate(u, u.Z_L(), N).back();
            CHECK(rel_err(eff, want) < 1e-9);
        }
    }
}

TEST_CASE("reduced graph carries the characteristic impedance at every depth") {
    CircuitParams p = at_Omega(2.0);
    cplx want = fsl_characteristic_impedance(p).terminal_impedance();
    for (int d : {0, 1, 2}) {
        auto g = fsl_build_reduced_graph(p, d);
        CHECK(rel_err(effective_impedance(g, "p0", "p1"), want) < 1e-11);
    }
    CircuitParams lossy = p;
    lossy.epsilon = 0.01;
    CHECK_THROWS_AS(fsl_build_reduced_graph(lossy, 1), ParamError);
}

TEST_CASE("cell corner naming") {
    CHECK(fsl_cell_corners("") == std::array<std::string, 3>{"p0", "p1", "p2"});
    CHECK(fsl_cell_corners("0") == std::array<std::string, 3>{"q0", "s01", "s02"});
    CHECK(fsl_cell_corners("1") == std::array<std::string, 3>{"s01", "q1", "s12"});
    CHECK(fsl_cell_corners("21") == std::array<std::string, 3>{"2/s01", "2/q1", "2/s12"});
    CHECK_THROWS_AS(fsl_cell_corners("013"), AddressError);
}

TEST_CASE("interpolation matrices") {
    CircuitParams p = at_Omega(2.0);
    auto set = fsl_harmonic_matrices(p);

    SUBCASE("rows are stochastic") {
        // the constant copy matrices sum to 1 exactly in left-to-right order
        for (const Mat3* m : {&set.M0, &set.M1, &set.M2})
            for (int i = 0; i < 3; ++i) {
                cplx s = (*m)(i, 0) + (*m)(i, 1) + (*m)(i, 2);
                CHECK(s == cplx(1.0));
            }
        for (int i = 0; i < 3; ++i) {
            cplx s = set.pq(i, 0) + set.pq(i, 1) + set.pq(i, 2);
            CHECK(std::abs(s - 1.0) < 1e-13);
        }
    }

    SUBCASE("junction map matches its closed form") {
        cplx Z = fsl_characteristic_impedance(p).Z;
        cplx den = 9.0 * p.Z_C() + 5.0 * Z;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx want = (i == j ? 3.0 * p.Z_C() + 5.0 * Z : 3.0 * p.Z_C()) / den;
                CHECK(rel_err(set.pq(i, j), want) < 1e-15);
            }
    }

    SUBCASE("only defined in the filter regime at epsilon = 0") {
        CHECK_THROWS_AS(fsl_harmonic_matrices(at_Omega(0.1)), RegimeError);
        CHECK_THROWS_AS(fsl_harmonic_matrices(at_Omega(50.0)), RegimeError);
        CircuitParams lossy = p;
        lossy.epsilon = 1e-3;
        CHECK_THROWS_AS(fsl_harmonic_matrices(lossy), ParamError);
    }
}

TEST_CASE("harmonic evaluation") {
    CircuitParams p = at_Omega(2.0);
    Vec3 v{cplx(1.0), cplx(0.0), cplx(0.0)};

    SUBCASE("empty address is the identity") {
        auto out = fsl_harmonic_evaluate(p, v, "");
        CHECK(out.values == v);
        CHECK(out.kappa == 1.0);
    }

    SUBCASE("bad address symbol") {
        CHECK_THROWS_AS(fsl_harmonic_evaluate(p, v, "0x2"), AddressError);
    }

    SUBCASE("kappa bounds the output") {
        auto out = fsl_harmonic_evaluate(p, v, "0212");
        double vmax = 0.0, omax = 0.0;
        for (int i = 0; i < 3; ++i) {
            vmax = std::max(vmax, std::abs(v[i]));
            omax = std::max(omax, std::abs(out.values[i]));
        }
        CHECK(omax <= out.kappa * vmax * (1.0 + 1e-12));
    }

    SUBCASE("matches the equilibrium on the reduced graph") {
        auto g = fsl_build_reduced_graph(p, 2);
        auto sol = solve_dirichlet(
            g, {{"p0", cplx(1.0)}, {"p1", cplx(0.0)}, {"p2", cplx(0.0)}});
        for (const std::string addr : {"0", "2", "01", "21", "12"}) {
            auto got = fsl_harmonic_evaluate(p, v, addr);
            auto corners = fsl_cell_corners(addr);
            Vec3 want;
            for (int i = 0; i < 3; ++i) want[i] = sol.potentials.at(corners[i]);
            CHECK(testutil::vec_rel_err(got.values, want) < 1e-9);
        }
    }
}
