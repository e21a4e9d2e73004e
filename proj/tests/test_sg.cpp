#include <doctest.h>

#include <cmath>

#include "fractalac/sg.hpp"

using namespace fractalac;

TEST_CASE("symmetric conductance values") {
    auto g1 = sg_symmetric_conductance(1.0);
    CHECK(g1.value == cplx(1.0, 0.0));
    CHECK_FALSE(g1.complex_radicand);

    auto gh = sg_symmetric_conductance(0.5);
    CHECK(gh.value.real() == doctest::Approx(0.14038820320220757).epsilon(1e-15));
    CHECK(gh.second_branch.real() == doctest::Approx(-0.8903882032022076).epsilon(1e-15));
    CHECK(gh.value.imag() == 0.0);
    CHECK(gh.second_branch.imag() == 0.0);
}

TEST_CASE("real for every admissible ratio") {
    for (int i = 0; i < 50; ++i) {
        double s = (i + 1) * 1.4 / 50.0;
        auto g = sg_symmetric_conductance(s);
        CHECK_FALSE(g.complex_radicand);
        CHECK(g.value.imag() == 0.0);
        // the radicand rewrites as s^2 (s-1)^2 + 1 and never dips below 1
        double rad = s * s * (s - 1.0) * (s - 1.0) + 1.0;
        CHECK(rad >= 1.0);
    }
    // past the pole the denominator goes negative but the value stays real
    auto g3 = sg_symmetric_conductance(3.0);
    CHECK(g3.value.imag() == 0.0);
    CHECK(g3.value.real() < 0.0);
}

TEST_CASE("both branches satisfy the defining quadratic") {
    for (double s : {0.2, 0.5, 0.9, 1.0, 1.3, 2.0, 4.0}) {
        auto g = sg_symmetric_conductance(s);
        for (cplx x : {g.value, g.second_branch}) {
            cplx resid = (3.0 - 2.0 * s) * x * x - 2.0 * (s * s - 1.0) * x - s * s;
            double scale = std::max(1.0, std::norm(x));
            CHECK(std::abs(resid) < 1e-12 * scale * std::max(1.0, s * s));
        }
        // Vieta: the branch product is -s^2 / (3 - 2s)
        cplx prod = g.value * g.second_branch;
        CHECK(std::abs(prod - (-s * s / (3.0 - 2.0 * s))) < 1e-12 * std::abs(prod));
    }
}

TEST_CASE("parameter gates") {
    CHECK_THROWS_AS(sg_symmetric_conductance(0.0), ParamError);
    CHECK_THROWS_AS(sg_symmetric_conductance(-1.0), ParamError);
    CHECK_THROWS_AS(sg_symmetric_conductance(1.5), ParamError);
    CHECK_THROWS_AS(sg_symmetric_conductance(1.5 * (1.0 + 1e-13)), ParamError);
    CHECK_NOTHROW(sg_symmetric_conductance(1.5 * (1.0 + 1e-10)));
}
