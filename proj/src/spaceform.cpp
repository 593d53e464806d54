#include "steklov/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace steklov {

namespace {

// |kappa| t^2 below this uses the Taylor branch of sn / sn'.
constexpr double kSeriesThreshold = 1e-6;

constexpr double kQuadratureTol = 1e-12;
constexpr int kMaxQuadratureDepth = 48;

}  // namespace

void CurvatureSpec::validate() const {
    if (n < 2) throw std::invalid_argument("CurvatureSpec: n must be >= 2");
    if (!(bigK <= kappa0 && kappa0 <= kappa && kappa <= 0.0))
        throw std::invalid_argument("CurvatureSpec: need K <= kappa0 <= kappa <= 0");
}

void SpaceFormBall::validate() const {
    if (n < 2) throw std::invalid_argument("SpaceFormBall: n must be >= 2");
    if (!(radius > 0.0)) throw std::invalid_argument("SpaceFormBall: radius must be positive");
    if (kappa > 0.0 && !(radius < std::numbers::pi / std::sqrt(kappa)))
        throw std::invalid_argument("SpaceFormBall: radius must be below pi/sqrt(kappa)");
}

double sn(double kappa, double t) {
    const double x = kappa * t * t;
    if (std::abs(x) < kSeriesThreshold) return t * (1.0 - x / 6.0 + x * x / 120.0);
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        return std::sin(s * t) / s;
    }
    const double s = std::sqrt(-kappa);
    return std::sinh(s * t) / s;
}

double sn_prime(double kappa, double t) {
    const double x = kappa * t * t;
    if (std::abs(x) < kSeriesThreshold) return 1.0 - x / 2.0 + x * x / 24.0;
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * t);
    return std::cosh(std::sqrt(-kappa) * t);
}

double sn_second(double kappa, double t) { return -kappa * sn(kappa, t); }

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double unresolved = 0.0;  // worst error estimate we had to accept

    double recurse(double a, double fa, double m, double fm, double b, double fb, double whole,
                   double tol, int depth) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double err = (left + right - whole) / 15.0;
        if (std::abs(err) <= tol) return left + right + err;
        if (depth <= 0) {
            unresolved = std::max(unresolved, std::abs(err));
            return left + right + err;
        }
        return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    SimpsonState state{f};
    const double eff_tol = std::max(tol, tol * std::abs(whole));
    const double result = state.recurse(a, fa, m, fm, b, fb, whole, eff_tol, kMaxQuadratureDepth);
    if (state.unresolved > std::max(tol, tol * std::abs(result))) {
        std::ostringstream msg;
        msg << "integrate: quadrature did not converge; achieved tolerance " << state.unresolved;
        throw std::runtime_error(msg.str());
    }
    return result;
}

double ball_volume(int n, double kappa, double r) {
    if (n < 2) throw std::invalid_argument("ball_volume: n must be >= 2");
    if (!(r > 0.0)) throw std::invalid_argument("ball_volume: r must be positive");
    const double coeff = n * unit_ball_volume(n);
    return coeff * integrate([=](double t) { return std::pow(sn(kappa, t), n - 1); }, 0.0, r,
                             kQuadratureTol);
}

double sphere_area(int n, double kappa, double r) {
    if (n < 2) throw std::invalid_argument("sphere_area: n must be >= 2");
    if (!(r > 0.0)) throw std::invalid_argument("sphere_area: r must be positive");
    return n * unit_ball_volume(n) * std::pow(sn(kappa, r), n - 1);
}

double radius_from_volume(int n, double kappa, double V) {
    if (!(V > 0.0)) throw std::domain_error("radius_from_volume: volume must be positive");
    if (kappa > 0.0) throw std::invalid_argument("radius_from_volume: kappa must be <= 0");

    // For kappa <= 0 the Euclidean radius is an upper bound for the bracket.
    double lo = 0.0;
    double hi = std::pow(V / unit_ball_volume(n), 1.0 / n) * (1.0 + 1e-12);
    auto vol = [&](double r) { return ball_volume(n, kappa, r); };

    // Bisection down to ~1e-3 relative width, then Newton with m' = sphere_area.
    int iters = 0;
    while ((hi - lo) > 1e-3 * hi && iters < 100) {
        const double mid = 0.5 * (lo + hi);
        (vol(mid) < V ? lo : hi) = mid;
        ++iters;
    }
    double r = 0.5 * (lo + hi);
    for (; iters < 100; ++iters) {
        const double f = vol(r) - V;
        if (std::abs(f) <= 1e-10 * V) return r;
        const double step = f / sphere_area(n, kappa, r);
        double next = r - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // keep inside the bracket
        (vol(next) < V ? lo : hi) = next;
        r = next;
    }
    if (std::abs(vol(r) - V) > 1e-10 * V)
        throw std::runtime_error("radius_from_volume: root refinement did not converge");
    return r;
}

double bound_constant(int n, double kappa, double bigK, double d) {
    if (n < 2) throw std::invalid_argument("bound_constant: n must be >= 2");
    if (!(d > 0.0)) throw std::invalid_argument("bound_constant: d must be positive");
    if (bigK > kappa) throw std::domain_error("bound_constant: need K <= kappa");
    if (bigK == kappa) return 1.0;
    return std::pow(sn(bigK, d) / sn(kappa, d), 2 * n - 2);
}

double bound_constant(const CurvatureSpec& spec, double d) {
    return bound_constant(spec.n, spec.kappa, spec.bigK, d);
}

double isoperimetric_profile(int n, double kappa, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("isoperimetric_profile: t must be positive");
    return sphere_area(n, kappa, radius_from_volume(n, kappa, t));
}

}  // namespace steklov
