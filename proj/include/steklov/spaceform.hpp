#pragma once

#include <functional>

namespace steklov {

// Curvature data for one comparison setup: concrete ambient model curvature
// kappa0 sandwiched by the comparison bounds, K <= kappa0 <= kappa <= 0.
struct CurvatureSpec {
    int n = 2;
    double kappa0 = 0.0;
    double kappa = 0.0;
    double bigK = 0.0;

    void validate() const;
};

struct SpaceFormBall {
    int n = 2;
    double kappa = 0.0;
    double radius = 1.0;

    void validate() const;
};

// Generalized sine: solution of f'' + kappa f = 0, f(0)=0, f'(0)=1.
// A series branch keeps both functions continuous across kappa = 0.
double sn(double kappa, double t);
double sn_prime(double kappa, double t);
double sn_second(double kappa, double t);  // = -kappa * sn

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

// Adaptive Simpson quadrature to absolute/relative tolerance tol.
// Throws std::runtime_error with the achieved estimate if it cannot converge.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// Volume of the geodesic ball of radius r in the n-dimensional space form of
// curvature kappa: n * omega_n * int_0^r sn_kappa(t)^{n-1} dt.
double ball_volume(int n, double kappa, double r);

// Area of the geodesic sphere: n * omega_n * sn_kappa(r)^{n-1}.
double sphere_area(int n, double kappa, double r);

// Unique r with ball_volume(n, kappa, r) = V, to |vol - V| <= 1e-10 * V.
double radius_from_volume(int n, double kappa, double V);

// (sn_K(d) / sn_kappa(d))^{2n-2}; exactly 1 when K == kappa.
double bound_constant(int n, double kappa, double bigK, double d);
double bound_constant(const CurvatureSpec& spec, double d);

// Boundary area of the geodesic ball of volume t.
double isoperimetric_profile(int n, double kappa, double t);

}  // namespace steklov
