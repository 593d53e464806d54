#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "steklov/spaceform.hpp"

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double polygon_signed_area(const std::vector<Vec2>& pts) {
    double a = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) a += pts[i].cross(pts[(i + 1) % pts.size()]);
    return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& pts) {
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    for (size_t i = 0; i < pts.size(); ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % pts.size()];
        const double w = p.cross(q);
        a += w;
        c += (p + q) * w;
    }
    return c / (3.0 * a);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q - p).cross(r - p);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

double PolarGeometry::radius(double theta) const {
    double r = c0;
    for (size_t k = 0; k < cos_coeffs.size(); ++k) r += cos_coeffs[k] * std::cos((k + 1) * theta);
    for (size_t k = 0; k < sin_coeffs.size(); ++k) r += sin_coeffs[k] * std::sin((k + 1) * theta);
    return r;
}

double PolarGeometry::radius_deriv(double theta) const {
    double d = 0.0;
    for (size_t k = 0; k < cos_coeffs.size(); ++k)
        d -= cos_coeffs[k] * (k + 1) * std::sin((k + 1) * theta);
    for (size_t k = 0; k < sin_coeffs.size(); ++k)
        d += sin_coeffs[k] * (k + 1) * std::cos((k + 1) * theta);
    return d;
}

void DomainSpec::validate() const {
    if (!(h > 0.0)) throw spec_error("DomainSpec: mesh h must be positive");
    if (ambient.model == Model::euclidean) {
        if (ambient.kappa0 != 0.0) throw spec_error("DomainSpec: euclidean ambient needs curvature 0");
    } else if (!(ambient.kappa0 < 0.0)) {
        throw spec_error("DomainSpec: poincare ambient needs curvature < 0");
    }
    if (!(bigK <= ambient.kappa0 && ambient.kappa0 <= kappa && kappa <= 0.0))
        throw spec_error("DomainSpec: need K <= kappa0 <= kappa <= 0");

    if (const auto* g = std::get_if<DiskGeometry>(&geometry)) {
        if (!(g->radius > 0.0)) throw geometry_error("disk: radius must be positive");
    } else if (const auto* g = std::get_if<EllipseGeometry>(&geometry)) {
        if (!(g->a > 0.0 && g->b > 0.0)) throw geometry_error("ellipse: semi-axes must be positive");
    } else if (const auto* g = std::get_if<AnnulusGeometry>(&geometry)) {
        if (!(g->r_in > 0.0 && g->r_in < g->r_out))
            throw geometry_error("annulus: need 0 < r_in < r_out");
    } else if (const auto* g = std::get_if<PolygonGeometry>(&geometry)) {
        if (g->vertices.size() < 3) throw geometry_error("polygon: need at least 3 vertices");
        const size_t m = g->vertices.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                if (j == i + 1 || (i == 0 && j == m - 1)) continue;  // adjacent edges share a vertex
                if (segments_intersect(g->vertices[i], g->vertices[(i + 1) % m], g->vertices[j],
                                       g->vertices[(j + 1) % m]))
                    throw geometry_error("polygon: boundary is self-intersecting");
            }
    } else if (const auto* g = std::get_if<PolarGeometry>(&geometry)) {
        for (int i = 0; i < 4096; ++i)
            if (!(g->radius(kTwoPi * i / 4096.0) > 0.0))
                throw geometry_error("polar: radius function must be strictly positive");
    }
}

DomainSpec DomainSpec::refined(int level) const {
    DomainSpec s = *this;
    s.h = h / std::pow(2.0, level);
    return s;
}

namespace {

// Closed CCW boundary sample with per-point parameter in [0, 1): smooth
// geometries by angle, polygons by arclength with corners always included.
struct BoundaryLoop {
    std::vector<Vec2> points;
    std::vector<double> params;
};

BoundaryLoop sample_curve(const std::function<Vec2(double)>& gamma, double h) {
    // Max speed over a scan fixes the uniform-parameter count.
    double vmax = 0.0;
    constexpr int kScan = 4096;
    Vec2 prev = gamma(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const Vec2 p = gamma(kTwoPi * i / kScan);
        vmax = std::max(vmax, (p - prev).norm() * kScan / kTwoPi);
        prev = p;
    }
    int n = std::max(8, static_cast<int>(std::ceil(vmax * kTwoPi / h)));
    n += n % 2;  // axis-symmetric sampling keeps antipodal pairs exact
    BoundaryLoop loop;
    loop.points.reserve(n);
    loop.params.reserve(n);
    for (int i = 0; i < n; ++i) {
        loop.points.push_back(gamma(kTwoPi * i / n));
        loop.params.push_back(static_cast<double>(i) / n);
    }
    return loop;
}

BoundaryLoop sample_polygon(const std::vector<Vec2>& corners, double h) {
    double perimeter = 0.0;
    const size_t m = corners.size();
    for (size_t i = 0; i < m; ++i) perimeter += (corners[(i + 1) % m] - corners[i]).norm();

    BoundaryLoop loop;
    double acc = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const Vec2 a = corners[i], b = corners[(i + 1) % m];
        const double len = (b - a).norm();
        const int segs = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int k = 0; k < segs; ++k) {
            const double t = static_cast<double>(k) / segs;
            loop.points.push_back(a + (b - a) * t);
            loop.params.push_back((acc + t * len) / perimeter);
        }
        acc += len;
    }
    return loop;
}

struct Ring {
    std::vector<int> ids;
    std::vector<double> params;
};

void zip_rings(const Ring& outer, const Ring& inner, std::vector<std::array<int, 3>>& tris) {
    const size_t na = outer.ids.size(), nb = inner.ids.size();
    auto pa = [&](size_t k) { return k < na ? outer.params[k] : outer.params[k - na] + 1.0; };
    auto pb = [&](size_t k) { return k < nb ? inner.params[k] : inner.params[k - nb] + 1.0; };
    size_t ia = 0, ib = 0;
    while (ia < na || ib < nb) {
        bool advance_outer;
        if (ia == na)
            advance_outer = false;
        else if (ib == nb)
            advance_outer = true;
        else
            advance_outer = pa(ia + 1) <= pb(ib + 1);
        if (advance_outer) {
            tris.push_back({outer.ids[ia % na], outer.ids[(ia + 1) % na], inner.ids[ib % nb]});
            ++ia;
        } else {
            tris.push_back({outer.ids[ia % na], inner.ids[(ib + 1) % nb], inner.ids[ib % nb]});
            ++ib;
        }
    }
}

// Every inner ring is the boundary loop scaled toward the star center, with
// the point count thinned proportionally.
Ring make_scaled_ring(const BoundaryLoop& loop, const Vec2& center, double t, int target_count,
                      std::vector<Vec2>& vertices) {
    const int n = static_cast<int>(loop.points.size());
    const int count = std::min(n, std::max(4, target_count));
    Ring ring;
    ring.ids.reserve(count);
    ring.params.reserve(count);
    for (int k = 0; k < count; ++k) {
        const int i = static_cast<int>(static_cast<long long>(k) * n / count);
        ring.ids.push_back(static_cast<int>(vertices.size()));
        ring.params.push_back(loop.params[i]);
        vertices.push_back(center + (loop.points[i] - center) * t);
    }
    return ring;
}

void laplacian_smooth(std::vector<Vec2>& vertices, const std::vector<std::array<int, 3>>& tris,
                      const std::vector<bool>& fixed, int iterations, double max_edge) {
    const size_t nv = vertices.size();
    std::vector<std::vector<int>> neighbors(nv);
    for (const auto& t : tris)
        for (int e = 0; e < 3; ++e) {
            neighbors[t[e]].push_back(t[(e + 1) % 3]);
            neighbors[t[e]].push_back(t[(e + 2) % 3]);
        }
    std::vector<std::vector<int>> incident(nv);
    for (size_t t = 0; t < tris.size(); ++t)
        for (int e = 0; e < 3; ++e) incident[tris[t][e]].push_back(static_cast<int>(t));

    auto area = [&](int t) {
        const Vec2 &a = vertices[tris[t][0]], &b = vertices[tris[t][1]], &c = vertices[tris[t][2]];
        return 0.5 * (b - a).cross(c - a);
    };
    auto vertex_ok = [&](size_t v) {
        for (int t : incident[v])
            if (area(t) <= 1e-13) return false;
        for (int w : neighbors[v])
            if ((vertices[w] - vertices[v]).norm() > max_edge) return false;
        return true;
    };

    for (int it = 0; it < iterations; ++it) {
        std::vector<Vec2> target(nv);
        for (size_t v = 0; v < nv; ++v) {
            if (fixed[v] || neighbors[v].empty()) {
                target[v] = vertices[v];
                continue;
            }
            Vec2 sum{0.0, 0.0};
            for (int w : neighbors[v]) sum += vertices[w];
            target[v] = sum / static_cast<double>(neighbors[v].size());
        }
        for (size_t v = 0; v < nv; ++v) {
            if (fixed[v]) continue;
            const Vec2 old = vertices[v];
            vertices[v] = old + (target[v] - old) * 0.5;
            if (!vertex_ok(v)) vertices[v] = old;  // keep areas positive and edges short
        }
    }
}

void finalize_boundary(TriMesh& mesh) {
    // Boundary edges are those appearing exactly once; orientation from the
    // owning triangle gives "domain on the left".
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            count[{std::min(a, b), std::max(a, b)}]++;
        }
    mesh.boundary_edges.clear();
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            if (count[{std::min(a, b), std::max(a, b)}] == 1)
                mesh.boundary_edges.push_back({a, b});
        }
    std::set<int> bset;
    for (const auto& e : mesh.boundary_edges) {
        bset.insert(e[0]);
        bset.insert(e[1]);
    }
    mesh.boundary_vertices.assign(bset.begin(), bset.end());
}

double max_edge_length(const TriMesh& mesh) {
    double worst = 0.0;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e)
            worst = std::max(worst,
                             (mesh.vertices[t[(e + 1) % 3]] - mesh.vertices[t[e]]).norm());
    return worst;
}

// One band-triangulated pass at internal spacing h_eff; zipper diagonals make
// the longest edge ~ sqrt(2) h_eff.
TriMesh build_disk_like_once(const BoundaryLoop& loop, const Vec2& center, double h_eff,
                             double h_limit, const Ambient& ambient) {
    TriMesh mesh;
    mesh.ambient = ambient;

    double dmax = 0.0;
    for (const Vec2& p : loop.points) dmax = std::max(dmax, (p - center).norm());
    const int layers = std::max(2, static_cast<int>(std::llround(dmax / h_eff)));
    const int n = static_cast<int>(loop.points.size());

    std::vector<Ring> rings;  // outermost first
    for (int j = layers; j >= 1; --j) {
        const double t = static_cast<double>(j) / layers;
        rings.push_back(make_scaled_ring(loop, center, t,
                                         static_cast<int>(std::llround(t * n)), mesh.vertices));
    }
    const int center_id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center);

    for (size_t j = 0; j + 1 < rings.size(); ++j) zip_rings(rings[j], rings[j + 1], mesh.triangles);
    const Ring& last = rings.back();
    for (size_t k = 0; k < last.ids.size(); ++k)
        mesh.triangles.push_back(
            {last.ids[k], last.ids[(k + 1) % last.ids.size()], center_id});

    std::vector<bool> fixed(mesh.vertices.size(), false);
    for (int id : rings.front().ids) fixed[id] = true;
    laplacian_smooth(mesh.vertices, mesh.triangles, fixed, 6, h_limit);

    finalize_boundary(mesh);
    mesh.validate();
    return mesh;
}

using LoopSampler = std::function<BoundaryLoop(double)>;

// Meshes at h/1.5 internally and retries finer until every edge is <= h.
TriMesh build_disk_like(const LoopSampler& sample, const Vec2* fixed_center, double h,
                        const Ambient& ambient) {
    double h_eff = h / 1.5;
    for (int attempt = 0; attempt < 4; ++attempt, h_eff *= 0.8) {
        const BoundaryLoop loop = sample(h_eff);
        Vec2 center{0.0, 0.0};
        if (fixed_center) {
            center = *fixed_center;
        } else {
            for (const Vec2& p : loop.points) center += p;
            center = center / static_cast<double>(loop.points.size());
        }
        TriMesh mesh = build_disk_like_once(loop, center, h_eff, h, ambient);
        if (max_edge_length(mesh) <= h) return mesh;
    }
    throw mesh_error("build_mesh: could not meet the target edge length");
}

TriMesh build_annulus(double chart_in, double chart_out, double h, const Ambient& ambient) {
    if (h >= chart_out - chart_in)
        throw resolution_error("annulus: mesh h too coarse to resolve the gap");
    double h_eff = h / 1.5;
    for (int attempt = 0; attempt < 4; ++attempt, h_eff *= 0.8) {
        TriMesh mesh;
        mesh.ambient = ambient;

        const int layers =
            std::max(2, static_cast<int>(std::llround((chart_out - chart_in) / h_eff)));
        std::vector<Ring> rings;
        for (int j = layers; j >= 0; --j) {
            const double r = chart_in + (chart_out - chart_in) * j / layers;
            int count = std::max(8, static_cast<int>(std::ceil(kTwoPi * r / h_eff)));
            count += count % 2;
            Ring ring;
            for (int k = 0; k < count; ++k) {
                const double theta = kTwoPi * k / count;
                ring.ids.push_back(static_cast<int>(mesh.vertices.size()));
                ring.params.push_back(static_cast<double>(k) / count);
                mesh.vertices.push_back({r * std::cos(theta), r * std::sin(theta)});
            }
            rings.push_back(std::move(ring));
        }
        for (size_t j = 0; j + 1 < rings.size(); ++j)
            zip_rings(rings[j], rings[j + 1], mesh.triangles);

        finalize_boundary(mesh);
        mesh.validate();
        if (max_edge_length(mesh) <= h) return mesh;
    }
    throw mesh_error("build_mesh: could not meet the target edge length");
}

}  // namespace

namespace {

void require_star_shaped(const BoundaryLoop& loop, const Vec2& c) {
    double prev = std::atan2(loop.points[0].y - c.y, loop.points[0].x - c.x);
    double winding = 0.0;
    for (size_t i = 1; i <= loop.points.size(); ++i) {
        const Vec2& p = loop.points[i % loop.points.size()];
        double a = std::atan2(p.y - c.y, p.x - c.x);
        double da = a - prev;
        while (da <= -std::numbers::pi) da += kTwoPi;
        while (da > std::numbers::pi) da -= kTwoPi;
        if (da <= 0.0)
            throw geometry_error("polygon: not star-shaped with respect to its centroid");
        winding += da;
        prev = a;
    }
    if (std::abs(winding - kTwoPi) > 1e-9)
        throw geometry_error("polygon: boundary winding is not one turn");
}

}  // namespace

TriMesh build_mesh(const DomainSpec& spec) {
    spec.validate();
    const Ambient& amb = spec.ambient;
    const bool hyp = amb.hyperbolic();
    const Vec2 origin{0.0, 0.0};

    TriMesh mesh;
    if (const auto* g = std::get_if<DiskGeometry>(&spec.geometry)) {
        const double rc = hyp ? chart_radius(amb, g->radius) : g->radius;
        auto gamma = [rc](double th) { return Vec2{rc * std::cos(th), rc * std::sin(th)}; };
        mesh = build_disk_like([&](double he) { return sample_curve(gamma, he); }, &origin,
                               spec.h, amb);
    } else if (const auto* g = std::get_if<EllipseGeometry>(&spec.geometry)) {
        auto gamma = [g](double th) { return Vec2{g->a * std::cos(th), g->b * std::sin(th)}; };
        mesh = build_disk_like([&](double he) { return sample_curve(gamma, he); }, &origin,
                               spec.h, amb);
    } else if (const auto* g = std::get_if<PolarGeometry>(&spec.geometry)) {
        auto gamma = [g](double th) {
            const double r = g->radius(th);
            return Vec2{r * std::cos(th), r * std::sin(th)};
        };
        mesh = build_disk_like([&](double he) { return sample_curve(gamma, he); }, &origin,
                               spec.h, amb);
    } else if (const auto* g = std::get_if<PolygonGeometry>(&spec.geometry)) {
        std::vector<Vec2> corners = g->vertices;
        if (polygon_signed_area(corners) < 0.0) std::reverse(corners.begin(), corners.end());
        const Vec2 c = polygon_centroid(corners);
        require_star_shaped(sample_polygon(corners, spec.h), c);
        mesh = build_disk_like([&](double he) { return sample_polygon(corners, he); }, &c, spec.h,
                               amb);
    } else if (const auto* g = std::get_if<AnnulusGeometry>(&spec.geometry)) {
        const double ri = hyp ? chart_radius(amb, g->r_in) : g->r_in;
        const double ro = hyp ? chart_radius(amb, g->r_out) : g->r_out;
        mesh = build_annulus(ri, ro, spec.h, amb);
    }

    if (hyp)
        for (const Vec2& v : mesh.vertices)
            if (v.norm2() >= 1.0)
                throw geometry_error("poincare ambient: geometry leaves the unit disk");
    return mesh;
}

double TriMesh::triangle_area(int t) const {
    const Vec2 &a = vertices[triangles[t][0]], &b = vertices[triangles[t][1]],
               &c = vertices[triangles[t][2]];
    return 0.5 * (b - a).cross(c - a);
}

int TriMesh::boundary_loop_count() const {
    std::map<int, int> next;
    for (const auto& e : boundary_edges) next[e[0]] = e[1];
    std::set<int> seen;
    int loops = 0;
    for (const auto& e : boundary_edges) {
        if (seen.count(e[0])) continue;
        ++loops;
        int v = e[0];
        while (!seen.count(v)) {
            seen.insert(v);
            auto it = next.find(v);
            if (it == next.end()) throw mesh_error("boundary edges do not form closed loops");
            v = it->second;
        }
    }
    return loops;
}

void TriMesh::validate() const {
    for (size_t t = 0; t < triangles.size(); ++t)
        if (!(triangle_area(static_cast<int>(t)) >= 1e-14)) {
            std::ostringstream msg;
            msg << "mesh: triangle " << t << " has non-positive area "
                << triangle_area(static_cast<int>(t));
            throw mesh_error(msg.str());
        }
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            count[{std::min(a, b), std::max(a, b)}]++;
        }
    for (const auto& [edge, c] : count)
        if (c > 2) throw mesh_error("mesh: non-manifold edge");
    for (const auto& e : boundary_edges)
        if (count[{std::min(e[0], e[1]), std::max(e[0], e[1])}] != 1)
            throw mesh_error("mesh: boundary edge shared by two triangles");
    (void)boundary_loop_count();  // throws if the loops do not close
    if (ambient.hyperbolic())
        for (const Vec2& v : vertices)
            if (v.norm2() >= 1.0) throw mesh_error("mesh: vertex outside the Poincare disk");
}

double domain_volume(const TriMesh& mesh) {
    double total = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const double area = mesh.triangle_area(static_cast<int>(t));
        if (!mesh.ambient.hyperbolic()) {
            total += area;
            continue;
        }
        const Vec2 &a = mesh.vertices[mesh.triangles[t][0]], &b = mesh.vertices[mesh.triangles[t][1]],
                   &c = mesh.vertices[mesh.triangles[t][2]];
        const Vec2 mab = (a + b) * 0.5, mbc = (b + c) * 0.5, mca = (c + a) * 0.5;
        double q = 0.0;
        for (const Vec2& m : {mab, mbc, mca}) {
            const double rho = conformal_factor(mesh.ambient, m);
            q += rho * rho;
        }
        total += area * q / 3.0;
    }
    return total;
}

double domain_diameter(const TriMesh& mesh) {
    if (mesh.boundary_vertices.size() < 2)
        throw mesh_error("domain_diameter: need at least two boundary vertices");
    double best = 0.0;
    const auto& bv = mesh.boundary_vertices;
    for (size_t i = 0; i < bv.size(); ++i)
        for (size_t j = i + 1; j < bv.size(); ++j)
            best = std::max(best,
                            ambient_distance(mesh.ambient, mesh.vertices[bv[i]], mesh.vertices[bv[j]]));
    return best;
}

double ambient_perimeter(const TriMesh& mesh) {
    double total = 0.0;
    for (const auto& e : mesh.boundary_edges) {
        const Vec2 &a = mesh.vertices[e[0]], &b = mesh.vertices[e[1]];
        const double len = (b - a).norm();
        if (!mesh.ambient.hyperbolic()) {
            total += len;
            continue;
        }
        const double g = 0.5 / std::sqrt(3.0);
        const Vec2 p1 = a + (b - a) * (0.5 - g), p2 = a + (b - a) * (0.5 + g);
        total += len * 0.5 * (conformal_factor(mesh.ambient, p1) + conformal_factor(mesh.ambient, p2));
    }
    return total;
}

}  // namespace steklov
