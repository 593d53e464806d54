#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

// Bad declarative input (geometry, resolution, JSON): CLI exit code 2.
struct spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct geometry_error : spec_error {
    using spec_error::spec_error;
};
struct resolution_error : spec_error {
    using spec_error::spec_error;
};
// Solver-side failures (degenerate mesh, factorization, eigen-iteration): exit code 3.
struct mesh_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DiskGeometry {
    double radius = 1.0;  // geodesic radius in the poincare ambient
};
struct EllipseGeometry {
    double a = 1.0;  // semi-axes (chart coordinates)
    double b = 1.0;
};
struct AnnulusGeometry {
    double r_in = 0.5;
    double r_out = 1.0;
};
struct PolygonGeometry {
    std::vector<Vec2> vertices;  // simple, star-shaped w.r.t. its centroid
};
struct PolarGeometry {
    double c0 = 1.0;  // radius(theta) = c0 + sum a_k cos(k theta) + b_k sin(k theta)
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double radius(double theta) const;
    double radius_deriv(double theta) const;
};

using Geometry =
    std::variant<DiskGeometry, EllipseGeometry, AnnulusGeometry, PolygonGeometry, PolarGeometry>;

// Declarative description of one test domain.
struct DomainSpec {
    std::string name;
    Geometry geometry;
    Ambient ambient;
    double kappa = 0.0;  // comparison curvatures, K <= kappa0 <= kappa <= 0
    double bigK = 0.0;
    double h = 0.1;  // target edge length (chart coordinates)

    void validate() const;
    DomainSpec refined(int level) const;  // h / 2^level, boundary resampled
};

// Conforming 2D triangulation. Triangles are counterclockwise; boundary edges
// are oriented with the domain on the left and each belongs to one triangle.
struct TriMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> boundary_edges;
    std::vector<int> boundary_vertices;  // ascending
    Ambient ambient;

    double triangle_area(int t) const;  // Euclidean (chart) area
    int boundary_loop_count() const;
    void validate() const;
};

TriMesh build_mesh(const DomainSpec& spec);

// Ambient volume: Euclidean triangle areas, or 3-point edge-midpoint
// quadrature of the conformal factor squared.
double domain_volume(const TriMesh& mesh);

// Max pairwise ambient distance over boundary vertices.
double domain_diameter(const TriMesh& mesh);

double ambient_perimeter(const TriMesh& mesh);

// Mesh wireframe; when a per-vertex field is given, triangles are filled with
// a linear color ramp and `levels` level-set polylines are drawn.
void write_mesh_svg(const TriMesh& mesh, const std::string& path,
                    const std::vector<double>* vertex_field = nullptr, int levels = 10);

}  // namespace steklov
