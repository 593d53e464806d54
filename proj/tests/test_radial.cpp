#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "steklov/radial.hpp"
#include "steklov/spaceform.hpp"

using namespace steklov;

namespace {

// Closed form for n = 2, kappa = -1: F(r) = 2 tanh(r/2), checked against the
// ODE by substitution (F'' + coth(r) F' - F/sinh^2(r) = 0 identically).
double f_hyperbolic(double r) { return 2.0 * std::tanh(0.5 * r); }
double fprime_hyperbolic(double r) {
    const double c = std::cosh(0.5 * r);
    return 1.0 / (c * c);
}

}  // namespace

TEST_CASE("flat profile is exactly linear") {
    const RadialProfile p = solve_profile(2, 0.0, 1.0);
    double worst = 0.0;
    for (size_t i = 0; i < p.r.size(); ++i) {
        worst = std::max(worst, std::abs(p.F[i] - p.r[i]));
        worst = std::max(worst, std::abs(p.Fprime[i] - 1.0));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("flat profile in n = 3: H is constantly n") {
    const RadialProfile p = solve_profile(3, 0.0, 1.0);
    for (size_t i = 0; i < p.r.size(); ++i) CHECK(p.H[i] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("hyperbolic profile matches 2 tanh(r/2)") {
    const RadialProfile p = solve_profile(2, -1.0, 1.0);
    double worst = 0.0;
    for (size_t i = 0; i < p.r.size(); ++i) {
        worst = std::max(worst, std::abs(p.F[i] / f_hyperbolic(p.r[i]) - 1.0));
        worst = std::max(worst, std::abs(p.Fprime[i] / fprime_hyperbolic(p.r[i]) - 1.0));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("series coefficient") {
    CHECK(series_a3(2, 0.0) == 0.0);
    CHECK(series_a3(2, -1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
    CHECK(series_a3(3, -2.0) == doctest::Approx(2.0 * -2.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("sigma1 of balls") {
    CHECK(sigma1_ball(2, 0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sigma1_ball(5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sigma1_ball(2, -1.0, 1.0) == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-8));
}

TEST_CASE("metric rescaling law") {
    for (int n : {2, 3}) {
        const double base = sigma1_ball(n, -1.0, 1.3);
        for (double c : {0.5, 2.0, 4.0}) {
            const double scaled = sigma1_ball(n, -1.0 / (c * c), c * 1.3);
            CHECK(scaled == doctest::Approx(base / c).epsilon(1e-8));
        }
    }
}

TEST_CASE("integral identity sigma1 = int H / int G") {
    CHECK(sigma1_via_GH(2, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sigma1_via_GH(2, -1.0, 1.0) ==
          doctest::Approx(sigma1_ball(2, -1.0, 1.0)).epsilon(1e-6));
    CHECK(sigma1_via_GH(3, -0.5, 2.0) ==
          doctest::Approx(sigma1_ball(3, -0.5, 2.0)).epsilon(1e-6));
    for (int n : {2, 3, 4})
        for (double kappa : {0.0, -0.5, -1.0})
            for (double R : {0.5, 1.0, 2.0}) {
                const double a = sigma1_ball(n, kappa, R);
                const double b = sigma1_via_GH(n, kappa, R);
                CHECK(std::abs(a - b) / a <= 1e-6);
            }
}

TEST_CASE("point values of G and H") {
    {
        const auto [g, h] = gh_values(2, 0.0, 1.0);
        CHECK(g == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(h == doctest::Approx(2.0).epsilon(1e-9));
    }
    {
        const auto [g, h] = gh_values(4, 0.0, 0.5);
        CHECK(g == doctest::Approx(2.5).epsilon(1e-9));
        CHECK(h == doctest::Approx(4.0).epsilon(1e-9));
    }
    {
        const double r = 1.0;
        const double F = f_hyperbolic(r), Fp = fprime_hyperbolic(r);
        const double g_expected = 2.0 * F * Fp + (std::cosh(r) / std::sinh(r)) * F * F;
        const double h_expected = Fp * Fp + F * F / (std::sinh(r) * std::sinh(r));
        const auto [g, h] = gh_values(2, -1.0, r);
        CHECK(g == doctest::Approx(g_expected).epsilon(1e-6));
        CHECK(h == doctest::Approx(h_expected).epsilon(1e-6));
    }
}

TEST_CASE("G / H monotonicity along the grid") {
    // G is non-decreasing for every kappa (including positive curvature);
    // H is non-increasing for kappa <= 0.
    for (double kappa : {-1.0, 0.0, 1.0}) {
        const RadialProfile p = solve_profile(2, kappa, 2.0, 2048);
        for (size_t i = 0; i + 1 < p.G.size(); ++i) CHECK(p.G[i + 1] >= p.G[i] - 1e-9);
    }
    for (double kappa : {-1.0, -0.5, 0.0}) {
        const RadialProfile p = solve_profile(2, kappa, 2.0, 2048);
        for (size_t i = 0; i + 1 < p.H.size(); ++i) CHECK(p.H[i + 1] <= p.H[i] + 1e-9);
        CHECK(p.G.front() >= 0.0);
        CHECK(p.H.front() >= 0.0);
    }
}

TEST_CASE("sn^{n-1} F' is non-decreasing along the grid") {
    for (double kappa : {0.0, -1.0}) {
        const RadialProfile p = solve_profile(3, kappa, 2.0, 2048);
        double prev = 0.0;
        for (size_t i = 0; i < p.r.size(); ++i) {
            const double v = std::pow(sn(kappa, p.r[i]), p.n - 1) * p.Fprime[i];
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("rayleigh quotient: minimizer, exact trials, randomized minimality") {
    const RadialProfile flat = solve_profile(2, 0.0, 1.0);

    SUBCASE("phi = F attains sigma1") {
        const RadialProfile p = solve_profile(2, -1.0, 1.0);
        const double sigma = sigma1_ball(2, -1.0, 1.0);
        CHECK(rayleigh_quotient(p, p.F) == doctest::Approx(sigma).epsilon(1e-4));
    }

    SUBCASE("phi = r on the flat disk gives exactly sigma1 = 1") {
        CHECK(rayleigh_quotient(flat, flat.r) == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("phi = r^2: independent symbolic value 5/4") {
        // int_0^1 (4r^2 + r^2) r dr / (1 * 1) = 5/4; exceeds sigma1 = 1.
        std::vector<double> phi(flat.r.size());
        for (size_t i = 0; i < phi.size(); ++i) phi[i] = flat.r[i] * flat.r[i];
        const double q = rayleigh_quotient(flat, phi);
        CHECK(q == doctest::Approx(1.25).epsilon(1e-5));
        CHECK(q >= 1.0);
    }

    SUBCASE("phi(R) = 0 is rejected") {
        std::vector<double> phi(flat.r.size());
        for (size_t i = 0; i < phi.size(); ++i) phi[i] = flat.r[i] * (1.0 - flat.r[i]);
        phi.back() = 0.0;
        CHECK_THROWS_AS(rayleigh_quotient(flat, phi), std::domain_error);
    }

    SUBCASE("random admissible trials never beat the minimum") {
        const RadialProfile p = solve_profile(2, -1.0, 1.5);
        const double sigma = sigma1_ball(2, -1.0, 1.5);
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        int tested = 0;
        while (tested < 50) {
            double c[5];
            for (double& x : c) x = coeff(rng);
            std::vector<double> phi(p.r.size());
            for (size_t i = 0; i < phi.size(); ++i) {
                const double t = p.r[i] / p.R();
                phi[i] = ((((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0]) * t;
            }
            if (std::abs(phi.back()) < 1e-3) continue;
            ++tested;
            CHECK(rayleigh_quotient(p, phi) >= sigma * (1.0 - 1e-4));
        }
    }
}

TEST_CASE("convergence: halving the step cuts the sigma1 error ~16x") {
    const double exact = 1.0 / std::sinh(1.0);
    const double e1 = std::abs(sigma1_ball(2, -1.0, 1.0, 128) - exact);
    const double e2 = std::abs(sigma1_ball(2, -1.0, 1.0, 256) - exact);
    const double ratio = e1 / e2;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(solve_profile(2, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_profile(2, 0.0, 1.0, 32), std::invalid_argument);
    CHECK_THROWS_AS(solve_profile(2, 4.0, 2.0), std::invalid_argument);  // R >= pi/sqrt(kappa)
    CHECK_THROWS_AS(solve_profile(2, -1.0, 1e6), std::range_error);
    CHECK_THROWS_AS(sigma1_ball(2, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("profile interpolation is smooth and accurate") {
    const RadialProfile p = solve_profile(2, -1.0, 2.0);
    for (double r : {1e-6, 5e-5, 0.37, 1.234, 1.999}) {
        CHECK(p.eval_F(r) == doctest::Approx(f_hyperbolic(r)).epsilon(1e-8));
        CHECK(p.eval_Fprime(r) == doctest::Approx(fprime_hyperbolic(r)).epsilon(1e-8));
    }
}
