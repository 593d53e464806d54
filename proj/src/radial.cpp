#include "steklov/radial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "steklov/spaceform.hpp"

namespace steklov {

namespace {

constexpr double kEpsFraction = 1e-4;   // series launch at eps = 1e-4 R
constexpr double kSubstepRatio = 0.05;  // local RK4 step <= 0.05 * r near the singular point

struct State {
    double F;
    double Fp;
};

State ode_rhs(int n, double kappa, double r, const State& y) {
    const double s = sn(kappa, r);
    const double sp = sn_prime(kappa, r);
    const double c = static_cast<double>(n - 1);
    return {y.Fp, -c * sp / s * y.Fp + c / (s * s) * y.F};
}

State rk4_step(int n, double kappa, double r, const State& y, double h) {
    const State k1 = ode_rhs(n, kappa, r, y);
    const State k2 = ode_rhs(n, kappa, r + 0.5 * h, {y.F + 0.5 * h * k1.F, y.Fp + 0.5 * h * k1.Fp});
    const State k3 = ode_rhs(n, kappa, r + 0.5 * h, {y.F + 0.5 * h * k2.F, y.Fp + 0.5 * h * k2.Fp});
    const State k4 = ode_rhs(n, kappa, r + h, {y.F + h * k3.F, y.Fp + h * k3.Fp});
    return {y.F + h / 6.0 * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F),
            y.Fp + h / 6.0 * (k1.Fp + 2.0 * k2.Fp + 2.0 * k3.Fp + k4.Fp)};
}

// Advance from r to target, substepping geometrically while the step would be
// large relative to r (the ODE has a regular singular point at 0).
State advance(int n, double kappa, double r, State y, double target) {
    while (r < target) {
        const double h = std::min(target - r, std::max(kSubstepRatio * r, 1e-300));
        y = rk4_step(n, kappa, r, y, h);
        r += h;
        if (r > target - 1e-15 * target) break;
    }
    return y;
}

double g_of(int n, double kappa, double r, double F, double Fp) {
    return 2.0 * F * Fp + (n - 1) * sn_prime(kappa, r) / sn(kappa, r) * F * F;
}

double h_of(int n, double kappa, double r, double F, double Fp) {
    const double q = F / sn(kappa, r);
    return Fp * Fp + (n - 1) * q * q;
}

// Composite Simpson over a uniform grid (even interval count).
double simpson_uniform(std::span<const double> vals, double h) {
    const size_t m = vals.size() - 1;
    double sum = vals.front() + vals.back();
    for (size_t i = 1; i < m; ++i) sum += vals[i] * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

double series_a3(int n, double kappa) { return (n - 1) * kappa / (3.0 * (n + 2)); }

RadialProfile solve_profile(int n, double kappa, double R, int steps) {
    if (n < 2) throw std::invalid_argument("solve_profile: n must be >= 2");
    if (!(R > 0.0)) throw std::invalid_argument("solve_profile: R must be positive");
    if (steps < 64) throw std::invalid_argument("solve_profile: steps must be >= 64");
    if (kappa > 0.0 && !(R < std::numbers::pi / std::sqrt(kappa)))
        throw std::invalid_argument("solve_profile: R must be below pi/sqrt(kappa) for kappa > 0");
    if (kappa < 0.0) {
        const double safe_max = 600.0 / ((n + 1) * std::sqrt(-kappa));
        if (R > safe_max) {
            std::ostringstream msg;
            msg << "solve_profile: R sqrt(-kappa) too large, safe maximum R = " << safe_max;
            throw std::range_error(msg.str());
        }
    }
    if (steps % 2 != 0) ++steps;  // keep Simpson applicable downstream

    RadialProfile p;
    p.n = n;
    p.kappa = kappa;
    p.r.resize(steps + 1);
    p.F.resize(steps + 1);
    p.Fprime.resize(steps + 1);
    p.G.resize(steps + 1);
    p.H.resize(steps + 1);

    const double eps = kEpsFraction * R;
    const double a3 = series_a3(n, kappa);
    State y{eps + a3 * eps * eps * eps, 1.0 + 3.0 * a3 * eps * eps};

    const double h = (R - eps) / steps;
    for (int i = 0; i <= steps; ++i) {
        const double ri = (i == steps) ? R : eps + i * h;
        if (i > 0) y = advance(n, kappa, p.r[i - 1], y, ri);
        p.r[i] = ri;
        p.F[i] = y.F;
        p.Fprime[i] = y.Fp;
        p.G[i] = g_of(n, kappa, ri, y.F, y.Fp);
        p.H[i] = h_of(n, kappa, ri, y.F, y.Fp);
        if (!(y.F > 0.0) || !(y.Fp > 0.0))
            throw std::runtime_error("solve_profile: integration lost positivity of F or F'");
    }
    return p;
}

namespace {

// Hermite basis on [0,1]: value interpolation from (f0, f0', f1, f1').
double hermite(double t, double f0, double d0, double f1, double d1, double h) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 +
           (t3 - t2) * h * d1;
}

double fsecond_from_ode(int n, double kappa, double r, double F, double Fp) {
    const double s = sn(kappa, r);
    return -(n - 1) * sn_prime(kappa, r) / s * Fp + (n - 1) / (s * s) * F;
}

}  // namespace

double RadialProfile::eval_F(double at) const {
    if (at <= r.front()) {
        const double a3 = series_a3(n, kappa);
        return at + a3 * at * at * at;
    }
    if (at >= r.back()) {
        if (at > r.back() * (1.0 + 1e-12))
            throw std::out_of_range("RadialProfile::eval_F: point beyond profile range");
        return F.back();
    }
    const double h = (r.back() - r.front()) / (r.size() - 1);
    const size_t i = std::min(r.size() - 2, static_cast<size_t>((at - r.front()) / h));
    const double t = (at - r[i]) / h;
    return hermite(t, F[i], Fprime[i], F[i + 1], Fprime[i + 1], h);
}

double RadialProfile::eval_Fprime(double at) const {
    if (at <= r.front()) {
        const double a3 = series_a3(n, kappa);
        return 1.0 + 3.0 * a3 * at * at;
    }
    if (at >= r.back()) {
        if (at > r.back() * (1.0 + 1e-12))
            throw std::out_of_range("RadialProfile::eval_Fprime: point beyond profile range");
        return Fprime.back();
    }
    const double h = (r.back() - r.front()) / (r.size() - 1);
    const size_t i = std::min(r.size() - 2, static_cast<size_t>((at - r.front()) / h));
    const double t = (at - r[i]) / h;
    const double d0 = fsecond_from_ode(n, kappa, r[i], F[i], Fprime[i]);
    const double d1 = fsecond_from_ode(n, kappa, r[i + 1], F[i + 1], Fprime[i + 1]);
    return hermite(t, Fprime[i], d0, Fprime[i + 1], d1, h);
}

double RadialProfile::eval_G(double at) const {
    return g_of(n, kappa, at, eval_F(at), eval_Fprime(at));
}

double RadialProfile::eval_H(double at) const {
    return h_of(n, kappa, at, eval_F(at), eval_Fprime(at));
}

double sigma1_ball(int n, double kappa, double R, int steps) {
    if (kappa > 0.0) throw std::invalid_argument("sigma1_ball: kappa must be <= 0");
    const RadialProfile p = solve_profile(n, kappa, R, steps);
    return p.Fprime.back() / p.F.back();
}

double gh_integral_ratio(const RadialProfile& p) {
    const size_t m = p.r.size();
    std::vector<double> hw(m), gw(m);
    for (size_t i = 0; i < m; ++i) {
        const double w = std::pow(sn(p.kappa, p.r[i]), p.n - 1);
        hw[i] = p.H[i] * w;
        gw[i] = p.G[i] * w;
    }
    const double h = (p.r.back() - p.r.front()) / (m - 1);
    // Leading-order contribution of the unsampled [0, eps] sliver:
    // H ~ n, G ~ (n+1) r, sn^{n-1} ~ r^{n-1}.
    const double eps = p.r.front();
    const double head_h = std::pow(eps, p.n);
    const double head_g = std::pow(eps, p.n + 1);
    return (simpson_uniform(hw, h) + head_h) / (simpson_uniform(gw, h) + head_g);
}

double sigma1_via_GH(int n, double kappa, double R, int steps) {
    if (kappa > 0.0) throw std::invalid_argument("sigma1_via_GH: kappa must be <= 0");
    return gh_integral_ratio(solve_profile(n, kappa, R, steps));
}

double rayleigh_quotient(const RadialProfile& p, std::span<const double> phi) {
    const size_t m = p.r.size();
    if (phi.size() != m)
        throw std::invalid_argument("rayleigh_quotient: phi must align with the profile grid");
    if (phi.back() == 0.0) throw std::domain_error("rayleigh_quotient: phi(R) must be nonzero");
    const double h = (p.r.back() - p.r.front()) / (m - 1);

    std::vector<double> integrand(m);
    for (size_t i = 0; i < m; ++i) {
        double dphi;
        if (i == 0)
            dphi = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * h);
        else if (i == m - 1)
            dphi = (3.0 * phi[m - 1] - 4.0 * phi[m - 2] + phi[m - 3]) / (2.0 * h);
        else
            dphi = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        const double s = sn(p.kappa, p.r[i]);
        integrand[i] = (dphi * dphi + (p.n - 1) / (s * s) * phi[i] * phi[i]) * std::pow(s, p.n - 1);
    }
    const double num = simpson_uniform(integrand, h);
    const double den = phi.back() * phi.back() * std::pow(sn(p.kappa, p.R()), p.n - 1);
    return num / den;
}

std::pair<double, double> gh_values(int n, double kappa, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("gh_values: r must be positive");
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::shared_ptr<const RadialProfile>> cache;

    std::shared_ptr<const RadialProfile> profile;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto& slot = cache[{n, kappa}];
        if (!slot || slot->R() < r)
            slot = std::make_shared<const RadialProfile>(solve_profile(n, kappa, 2.0 * r));
        profile = slot;
    }
    return {profile->eval_G(r), profile->eval_H(r)};
}

}  // namespace steklov
