#pragma once

#include <cmath>

namespace steklov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

enum class Model { euclidean, poincare };

// Ambient 2D geometry: the Euclidean plane, or the hyperbolic plane of
// curvature kappa0 < 0 represented conformally on the unit disk with
// rho(x) = (2 / (1 - |x|^2)) / sqrt(-kappa0).
struct Ambient {
    Model model = Model::euclidean;
    double kappa0 = 0.0;

    bool hyperbolic() const { return model == Model::poincare; }
};

// Conformal length factor; 1 in the Euclidean ambient.
double conformal_factor(const Ambient& amb, const Vec2& x);

// Geodesic distance in the ambient metric.
double ambient_distance(const Ambient& amb, const Vec2& a, const Vec2& b);

// Moebius translation of the unit disk taking p to the origin, and its inverse.
Vec2 mobius_to_origin(const Vec2& p, const Vec2& z);
Vec2 mobius_from_origin(const Vec2& p, const Vec2& w);

// Walks geodesic distance s from p in the chart direction `dir` (unit vector
// in the conformal chart at p). Euclidean: p + s*dir.
Vec2 geodesic_step(const Ambient& amb, const Vec2& p, const Vec2& dir, double s);

// Chart radius of the geodesic circle of geodesic radius R about the origin.
double chart_radius(const Ambient& amb, double R);

}  // namespace steklov
