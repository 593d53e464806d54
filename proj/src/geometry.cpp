#include "steklov/geometry.hpp"

#include <complex>
#include <stdexcept>

namespace steklov {

namespace {

std::complex<double> to_c(const Vec2& v) { return {v.x, v.y}; }
Vec2 to_v(const std::complex<double>& z) { return {z.real(), z.imag()}; }

}  // namespace

double conformal_factor(const Ambient& amb, const Vec2& x) {
    if (!amb.hyperbolic()) return 1.0;
    const double r2 = x.norm2();
    if (r2 >= 1.0) throw std::domain_error("conformal_factor: point outside the unit disk");
    return 2.0 / ((1.0 - r2) * std::sqrt(-amb.kappa0));
}

double ambient_distance(const Ambient& amb, const Vec2& a, const Vec2& b) {
    if (!amb.hyperbolic()) return (a - b).norm();
    const double da = 1.0 - a.norm2();
    const double db = 1.0 - b.norm2();
    if (da <= 0.0 || db <= 0.0) throw std::domain_error("ambient_distance: point outside the unit disk");
    const double q = 2.0 * (a - b).norm2() / (da * db);
    return std::acosh(1.0 + q) / std::sqrt(-amb.kappa0);
}

Vec2 mobius_to_origin(const Vec2& p, const Vec2& z) {
    const auto zp = to_c(z), pp = to_c(p);
    return to_v((zp - pp) / (1.0 - std::conj(pp) * zp));
}

Vec2 mobius_from_origin(const Vec2& p, const Vec2& w) {
    const auto wp = to_c(w), pp = to_c(p);
    return to_v((wp + pp) / (1.0 + std::conj(pp) * wp));
}

Vec2 geodesic_step(const Ambient& amb, const Vec2& p, const Vec2& dir, double s) {
    if (!amb.hyperbolic()) return p + dir * s;
    const double t = std::tanh(0.5 * s * std::sqrt(-amb.kappa0));
    return mobius_from_origin(p, dir * t);
}

double chart_radius(const Ambient& amb, double R) {
    if (!amb.hyperbolic()) return R;
    return std::tanh(0.5 * R * std::sqrt(-amb.kappa0));
}

}  // namespace steklov
