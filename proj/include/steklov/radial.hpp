#pragma once

#include <span>
#include <utility>
#include <vector>

namespace steklov {

// Sampled solution of F'' + (n-1)(sn'/sn) F' - (n-1)/sn^2 F = 0, F(0)=0,
// F'(0)=1, on a uniform grid [eps, R], together with the comparison functions
//   G = (F^2)' + (n-1)(sn'/sn) F^2      (~ length)
//   H = (F')^2 + (n-1)/sn^2 F^2         (dimensionless).
struct RadialProfile {
    int n = 2;
    double kappa = 0.0;
    std::vector<double> r;       // eps = r[0] < ... < r.back() = R, uniform
    std::vector<double> F;       // > 0 past the first node
    std::vector<double> Fprime;  // > 0
    std::vector<double> G;
    std::vector<double> H;

    double R() const { return r.back(); }

    // Point evaluation: cubic Hermite between nodes (F' at the nodes; F'' from
    // the ODE), the series launch below the first node.
    double eval_F(double at) const;
    double eval_Fprime(double at) const;

    // G and H from (F, F') pointwise, never from differencing the arrays.
    double eval_G(double at) const;
    double eval_H(double at) const;
};

// Leading series coefficient of F = r + a3 r^3 + O(r^5) at the regular
// singular point: a3 = (n-1) kappa / (3 (n+2)).
double series_a3(int n, double kappa);

// Integrates the profile with classical RK4 on a uniform grid of `steps`
// intervals, launched from a series start at eps = 1e-4 R. Accepts any kappa
// (positive kappa requires R < pi/sqrt(kappa)); throws std::range_error when
// R sqrt(-kappa) would overflow, reporting the safe maximum.
RadialProfile solve_profile(int n, double kappa, double R, int steps = 4096);

// sigma_1 of the geodesic ball of radius R in M_kappa: F'(R)/F(R).
double sigma1_ball(int n, double kappa, double R, int steps = 4096);

// The same eigenvalue via the integral identity
//   sigma_1 = int_0^R H sn^{n-1} dr / int_0^R G sn^{n-1} dr.
double sigma1_via_GH(int n, double kappa, double R, int steps = 4096);

// int_0^R H sn^{n-1} / int_0^R G sn^{n-1} on an existing profile.
double gh_integral_ratio(const RadialProfile& profile);

// Q(phi) = int (phi'^2 + (n-1)/sn^2 phi^2) sn^{n-1} dr / (phi(R)^2 sn(R)^{n-1})
// for a trial function sampled on the profile grid with phi(eps) ~ 0.
double rayleigh_quotient(const RadialProfile& profile, std::span<const double> phi);

// Point values of (G, H) from a cached profile with R >= r (cache grows on
// demand; thread-safe).
std::pair<double, double> gh_values(int n, double kappa, double r);

}  // namespace steklov
