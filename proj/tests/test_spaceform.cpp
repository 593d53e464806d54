#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steklov/spaceform.hpp"

using namespace steklov;
using std::numbers::pi;

TEST_CASE("sn: three branches and continuity across kappa = 0") {
    CHECK(sn(0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sn(-1.0, 1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    CHECK(sn(4.0, pi / 4.0) == doctest::Approx(0.5).epsilon(1e-14));
    // series branch vs hyperbolic branch at nearly-flat curvature
    CHECK(std::abs(sn(-1e-14, 1.0) - 1.0) < 1e-12);
    CHECK(std::abs(sn(-1e-7, 3.0) - std::sinh(std::sqrt(1e-7) * 3.0) / std::sqrt(1e-7)) < 1e-12);
}

TEST_CASE("sn_prime and the Wronskian-type identity") {
    CHECK(sn_prime(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sn_prime(-1.0, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    const double t = 0.7;
    CHECK(sn(-1.0, t) * sn_second(-1.0, t) - sn_prime(-1.0, t) * sn_prime(-1.0, t) ==
          doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("sn positivity, sn' >= 1, identity over the sampled grid") {
    for (double kappa : {0.0, -0.25, -1.0, -4.0}) {
        for (int i = 1; i <= 200; ++i) {
            const double t = 20.0 * i / 200.0;
            const double s = sn(kappa, t), sp = sn_prime(kappa, t);
            CHECK(s > 0.0);
            CHECK(sp >= 1.0);
            // identity holds to 1e-10 relative to the largest term; the
            // absolute residual cannot beat fp cancellation at sinh(40)^2
            const double resid = s * sn_second(kappa, t) - sp * sp + 1.0;
            CHECK(std::abs(resid) <= 1e-10 * std::max(1.0, sp * sp));
        }
    }
}

TEST_CASE("ball volumes: closed forms") {
    CHECK(ball_volume(2, 0.0, 1.0) == doctest::Approx(pi).epsilon(1e-12));
    CHECK(ball_volume(3, 0.0, 2.0) == doctest::Approx(32.0 * pi / 3.0).epsilon(1e-12));
    // 2 pi (cosh r - 1), checked against the quadrature path
    CHECK(ball_volume(2, -1.0, 1.0) ==
          doctest::Approx(2.0 * pi * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
    // n = 3 hyperbolic closed form: 4 pi (sinh(2r)/4 - r/2) for kappa = -1
    const double r = 1.3;
    CHECK(ball_volume(3, -1.0, r) ==
          doctest::Approx(4.0 * pi * (std::sinh(2.0 * r) / 4.0 - r / 2.0)).epsilon(1e-11));
}

TEST_CASE("sphere areas") {
    CHECK(sphere_area(2, 0.0, 1.0) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(2, -1.0, 1.0) == doctest::Approx(2.0 * pi * std::sinh(1.0)).epsilon(1e-14));
    CHECK(sphere_area(3, 0.0, 2.0) == doctest::Approx(16.0 * pi).epsilon(1e-14));
}

TEST_CASE("radius_from_volume inverts ball_volume") {
    CHECK(radius_from_volume(2, 0.0, pi) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(radius_from_volume(3, 0.0, 32.0 * pi / 3.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(radius_from_volume(2, -1.0, 2.0 * pi * (std::cosh(1.0) - 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(radius_from_volume(2, 0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(radius_from_volume(2, 0.0, 0.0), std::domain_error);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rad(0.05, 4.0);
    std::uniform_real_distribution<double> curv(-2.0, 0.0);
    for (int i = 0; i < 50; ++i) {
        const int n = 2 + i % 3;
        const double kappa = curv(rng);
        const double r0 = rad(rng);
        const double V = ball_volume(n, kappa, r0);
        CHECK(radius_from_volume(n, kappa, V) == doctest::Approx(r0).epsilon(1e-8));
        const double V0 = 0.3 + 5.0 * (i % 7);
        CHECK(ball_volume(n, kappa, radius_from_volume(n, kappa, V0)) ==
              doctest::Approx(V0).epsilon(1e-8));
    }
}

TEST_CASE("bound_constant: value, equality case, monotonicity, domain error") {
    CHECK(bound_constant(2, -1.0, -1.0, 3.0) == 1.0);
    CHECK(bound_constant(2, -1.0, -1.0, 7.0) == 1.0);
    CHECK(bound_constant(2, 0.0, -1.0, 1.0) ==
          doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));
    CHECK(bound_constant(2, 0.0, -1.0, 2.0) ==
          doctest::Approx(std::pow(std::sinh(2.0) / 2.0, 2)).epsilon(1e-14));
    CHECK(bound_constant(4, 0.0, -1.0, 1.0) ==
          doctest::Approx(std::pow(std::sinh(1.0), 6)).epsilon(1e-14));
    CHECK_THROWS_AS(bound_constant(2, -1.0, -0.5, 1.0), std::domain_error);

    // >= 1, and non-decreasing in d (sn_K/sn_kappa ratio montonicity)
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double d = 6.0 * i / 400.0;
        const double c = bound_constant(3, -0.25, -1.5, d);
        CHECK(c >= 1.0);
        CHECK(c >= prev - 1e-12);
        prev = c;
    }
}

TEST_CASE("isoperimetric profile on model spaces") {
    CHECK(isoperimetric_profile(2, 0.0, pi) == doctest::Approx(2.0 * pi).epsilon(1e-10));
    CHECK(isoperimetric_profile(3, 0.0, 4.0 * pi / 3.0) == doctest::Approx(4.0 * pi).epsilon(1e-10));
    // lower curvature -> strictly larger boundary area at fixed volume
    CHECK(isoperimetric_profile(2, -1.0, pi) > isoperimetric_profile(2, 0.0, pi));
    for (double t : {0.5, 2.0, 7.0, 20.0})
        for (int n : {2, 3}) {
            CHECK(isoperimetric_profile(n, -1.5, t) >= isoperimetric_profile(n, -0.5, t));
            CHECK(isoperimetric_profile(n, -0.5, t) >= isoperimetric_profile(n, 0.0, t));
        }
}

TEST_CASE("CurvatureSpec and SpaceFormBall invariants") {
    CHECK_THROWS_AS((CurvatureSpec{1, 0.0, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CurvatureSpec{2, -1.0, -2.0, -3.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((CurvatureSpec{2, -1.0, -0.5, -2.0}.validate()));
    CHECK_THROWS_AS((SpaceFormBall{2, 4.0, 2.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((SpaceFormBall{2, 4.0, 1.5}.validate()));
}

TEST_CASE("adaptive quadrature sanity") {
    CHECK(integrate([](double t) { return t * t; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate([](double t) { return std::exp(t); }, -1.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
}
