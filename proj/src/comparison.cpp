#include "steklov/comparison.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "steklov/spaceform.hpp"

namespace steklov {

namespace {

constexpr double kGaussOffset = 0.5 / 1.7320508075688772;  // 1/(2 sqrt 3)

struct BoundaryQuadPoint {
    Vec2 x;
    double weight;  // ambient length element
};

std::vector<BoundaryQuadPoint> boundary_quadrature(const TriMesh& mesh) {
    std::vector<BoundaryQuadPoint> pts;
    pts.reserve(2 * mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) {
        const Vec2 &a = mesh.vertices[e[0]], &b = mesh.vertices[e[1]];
        const double len = (b - a).norm();
        for (const double t : {0.5 - kGaussOffset, 0.5 + kGaussOffset}) {
            const Vec2 x = a + (b - a) * t;
            const double rho = mesh.ambient.hyperbolic() ? conformal_factor(mesh.ambient, x) : 1.0;
            pts.push_back({x, 0.5 * len * rho});
        }
    }
    return pts;
}

// chart direction at p toward x (unit), and the ambient distance
void direction_and_distance(const Ambient& amb, const Vec2& p, const Vec2& x, Vec2& dir,
                            double& dist) {
    if (!amb.hyperbolic()) {
        const Vec2 v = x - p;
        dist = v.norm();
        dir = dist > 0.0 ? v / dist : Vec2{0.0, 0.0};
        return;
    }
    const Vec2 y = mobius_to_origin(p, x);
    const double re = y.norm();
    dist = 2.0 * std::atanh(re) / std::sqrt(-amb.kappa0);
    dir = re > 0.0 ? y / re : Vec2{0.0, 0.0};
}

struct Residual {
    Vec2 X{0.0, 0.0};
    double weight_sum = 0.0;
};

Residual evaluate_X(const std::vector<BoundaryQuadPoint>& quad, const Ambient& amb, const Vec2& p,
                    const EtaTransfer& eta, const RadialProfile& profile) {
    Residual res;
    for (const auto& q : quad) {
        Vec2 dir;
        double r;
        direction_and_distance(amb, p, q.x, dir, r);
        if (!(r > 0.0)) continue;
        const double fv = profile.eval_F(eta(r));
        res.X += dir * (fv * q.weight);
        res.weight_sum += fv * q.weight;
    }
    return res;
}

}  // namespace

CenterOfMass center_of_mass(const TriMesh& mesh, const EtaTransfer& eta,
                            const RadialProfile& profile) {
    const auto quad = boundary_quadrature(mesh);
    const Ambient amb = mesh.ambient;
    const double d = domain_diameter(mesh);
    if (profile.R() < eta(d))
        throw std::invalid_argument("center_of_mass: profile does not cover eta(diam)");

    const double tol = 1e-8 * profile.eval_F(eta(d)) * ambient_perimeter(mesh);

    // Start at the area centroid (chart coordinates).
    Vec2 p{0.0, 0.0};
    {
        double area_sum = 0.0;
        for (size_t t = 0; t < mesh.triangles.size(); ++t) {
            const auto& tri = mesh.triangles[t];
            const double a = mesh.triangle_area(static_cast<int>(t));
            p += (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) * (a / 3.0);
            area_sum += a;
        }
        p = p / area_sum;
    }

    constexpr int kMaxIterations = 500;
    int iter = 0;
    Residual cur = evaluate_X(quad, amb, p, eta, profile);
    double best_res = cur.X.norm();
    Vec2 best_p = p;
    int stalls = 0;

    while (iter < kMaxIterations) {
        const double res_norm = cur.X.norm();
        if (res_norm <= tol) return {p, res_norm, tol, iter};
        if (res_norm < best_res) {
            best_res = res_norm;
            best_p = p;
        }
        ++iter;

        // Damped fixed-point step p <- exp_p(tau X / sum of weights), with
        // backtracking on |X|.
        bool accepted = false;
        double tau = 1.0;
        const Vec2 dir = cur.X / res_norm;
        for (int bt = 0; bt < 40; ++bt) {
            const double s = tau * res_norm / cur.weight_sum;
            const Vec2 cand = geodesic_step(amb, p, dir, s);
            if (!amb.hyperbolic() || cand.norm2() < 1.0) {
                const Residual r_cand = evaluate_X(quad, amb, cand, eta, profile);
                if (r_cand.X.norm() < res_norm) {
                    p = cand;
                    cur = r_cand;
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
        }
        if (accepted) continue;

        // Fixed point stalled: finite-difference Newton on X(p) = 0 in chart
        // coordinates.
        ++stalls;
        const double delta = 1e-7 * (1.0 + p.norm());
        const Residual xp = evaluate_X(quad, amb, {p.x + delta, p.y}, eta, profile);
        const Residual xm = evaluate_X(quad, amb, {p.x - delta, p.y}, eta, profile);
        const Residual yp = evaluate_X(quad, amb, {p.x, p.y + delta}, eta, profile);
        const Residual ym = evaluate_X(quad, amb, {p.x, p.y - delta}, eta, profile);
        const double j11 = (xp.X.x - xm.X.x) / (2 * delta), j12 = (yp.X.x - ym.X.x) / (2 * delta);
        const double j21 = (xp.X.y - xm.X.y) / (2 * delta), j22 = (yp.X.y - ym.X.y) / (2 * delta);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300 || stalls > 50) break;
        const Vec2 step{-(j22 * cur.X.x - j12 * cur.X.y) / det,
                        -(-j21 * cur.X.x + j11 * cur.X.y) / det};
        Vec2 cand = p + step;
        if (amb.hyperbolic() && cand.norm2() >= 1.0) cand = p + step * (0.1 / (step.norm() + 1e-300));
        const Residual r_cand = evaluate_X(quad, amb, cand, eta, profile);
        ++iter;
        if (r_cand.X.norm() < cur.X.norm()) {
            p = cand;
            cur = r_cand;
        } else {
            break;
        }
    }

    if (best_res <= tol) return {best_p, best_res, tol, iter};
    std::ostringstream msg;
    msg << "center_of_mass: no convergence in " << iter << " iterations; best residual "
        << best_res << " (tolerance " << tol << ")";
    throw std::runtime_error(msg.str());
}

namespace {

// Ambient 3-point (edge midpoint) quadrature of f over the mesh, with the
// per-point values computed in parallel and summed in a fixed order.
double mesh_integral(const TriMesh& mesh, const std::function<double(const Vec2&)>& f,
                     bool parallel) {
    const int nt = static_cast<int>(mesh.triangles.size());
    std::vector<double> contrib(nt);
#pragma omp parallel for schedule(static) if (parallel)
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        const double area = mesh.triangle_area(t);
        double sum = 0.0;
        for (const Vec2& m : {(a + b) * 0.5, (b + c) * 0.5, (c + a) * 0.5}) {
            double w = 1.0;
            if (mesh.ambient.hyperbolic()) {
                const double rho = conformal_factor(mesh.ambient, m);
                w = rho * rho;
            }
            sum += w * f(m);
        }
        contrib[t] = area * sum / 3.0;
    }
    double total = 0.0;
    for (int t = 0; t < nt; ++t) total += contrib[t];
    return total;
}

}  // namespace

namespace {

// Hyperbolic distance is quasiconvex along chart segments, so the vertex
// maximum bounds every quadrature point. Checked before any parallel region:
// profile evaluation must not throw inside one.
void require_profile_coverage(const TriMesh& mesh, const Vec2& p, const EtaTransfer& eta,
                              const RadialProfile& profile) {
    double rmax = 0.0;
    for (const Vec2& v : mesh.vertices)
        rmax = std::max(rmax, ambient_distance(mesh.ambient, p, v));
    if (profile.R() < eta(rmax))
        throw std::invalid_argument("profile does not cover eta over the mesh");
}

}  // namespace

double test_function_quotient(const TriMesh& mesh, const CenterOfMass& com, const EtaTransfer& eta,
                              const RadialProfile& profile, bool parallel) {
    if (com.residual > com.tolerance)
        throw std::invalid_argument("test_function_quotient: center of mass did not converge");
    const Ambient amb = mesh.ambient;
    const Vec2 p = com.point;
    require_profile_coverage(mesh, p, eta, profile);
    const double comparison_kappa = eta.target_kappa();

    auto integrand = [&](const Vec2& x) {
        const double r = ambient_distance(amb, p, x);
        if (r < 1e-14) return profile.eval_Fprime(0.0) * profile.eval_Fprime(0.0) + 1.0;
        const double e = eta(r);
        const double grad_term = profile.eval_Fprime(e) * eta.derivative(r);
        const double ratio = profile.eval_F(e) / sn(comparison_kappa, r);
        return grad_term * grad_term + ratio * ratio;  // n = 2, so n-1 = 1
    };
    const double num = mesh_integral(mesh, integrand, parallel);

    double den = 0.0;
    for (const auto& q : boundary_quadrature(mesh)) {
        const double r = ambient_distance(amb, p, q.x);
        const double fv = profile.eval_F(eta(r));
        den += q.weight * fv * fv;
    }
    return num / den;
}

double mesh_gh_ratio(const TriMesh& mesh, const CenterOfMass& com, const EtaTransfer& eta,
                     const RadialProfile& profile, bool parallel) {
    const Ambient amb = mesh.ambient;
    const Vec2 p = com.point;
    require_profile_coverage(mesh, p, eta, profile);
    const double num = mesh_integral(
        mesh, [&](const Vec2& x) { return profile.eval_H(eta(ambient_distance(amb, p, x))); },
        parallel);
    const double den = mesh_integral(
        mesh, [&](const Vec2& x) { return profile.eval_G(eta(ambient_distance(amb, p, x))); },
        parallel);
    return num / den;
}

WeightedSampleSet sample_radial_on_mesh(const TriMesh& mesh, const Vec2& pole,
                                        const std::function<double(double)>& f) {
    WeightedSampleSet set;
    set.samples.reserve(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 centroid =
            (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
        double measure = mesh.triangle_area(static_cast<int>(t));
        if (mesh.ambient.hyperbolic()) {
            const double rho = conformal_factor(mesh.ambient, centroid);
            measure *= rho * rho;
        }
        set.samples.push_back({f(ambient_distance(mesh.ambient, pole, centroid)), measure});
    }
    return set;
}

}  // namespace steklov
