#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "steklov/mesh.hpp"

namespace steklov {

namespace {

// Blue -> white -> red ramp on [0, 1].
void ramp(double t, int& r, int& g, int& b) {
    t = std::clamp(t, 0.0, 1.0);
    if (t < 0.5) {
        const double u = 2.0 * t;
        r = static_cast<int>(255 * u);
        g = static_cast<int>(255 * u);
        b = 255;
    } else {
        const double u = 2.0 * (t - 0.5);
        r = 255;
        g = static_cast<int>(255 * (1.0 - u));
        b = static_cast<int>(255 * (1.0 - u));
    }
}

}  // namespace

void write_mesh_svg(const TriMesh& mesh, const std::string& path,
                    const std::vector<double>* field, int levels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mesh_svg: cannot open " + path);

    double xmin = std::numeric_limits<double>::max(), xmax = -xmin, ymin = xmin, ymax = xmax;
    for (const Vec2& v : mesh.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    const double scale = 800.0 / std::max(xmax - xmin + 2 * pad, ymax - ymin + 2 * pad);
    auto px = [&](const Vec2& v) { return (v.x - xmin + pad) * scale; };
    auto py = [&](const Vec2& v) { return (ymax + pad - v.y) * scale; };  // flip y

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\">\n";

    double fmin = 0.0, fmax = 1.0;
    if (field) {
        fmin = *std::min_element(field->begin(), field->end());
        fmax = *std::max_element(field->begin(), field->end());
        if (fmax - fmin < 1e-300) fmax = fmin + 1.0;
    }

    for (const auto& t : mesh.triangles) {
        out << "<path d=\"M " << px(mesh.vertices[t[0]]) << ' ' << py(mesh.vertices[t[0]]) << " L "
            << px(mesh.vertices[t[1]]) << ' ' << py(mesh.vertices[t[1]]) << " L "
            << px(mesh.vertices[t[2]]) << ' ' << py(mesh.vertices[t[2]]) << " Z\"";
        if (field) {
            const double avg =
                ((*field)[t[0]] + (*field)[t[1]] + (*field)[t[2]]) / 3.0;
            int r, g, b;
            ramp((avg - fmin) / (fmax - fmin), r, g, b);
            out << " fill=\"rgb(" << r << ',' << g << ',' << b << ")\"";
        } else {
            out << " fill=\"none\"";
        }
        out << " stroke=\"#777\" stroke-width=\"0.4\"/>\n";
    }

    // Level sets: linear interpolation along triangle edges.
    if (field && levels > 0) {
        for (int l = 1; l <= levels; ++l) {
            const double c = fmin + (fmax - fmin) * l / (levels + 1);
            for (const auto& t : mesh.triangles) {
                Vec2 pts[2];
                int np = 0;
                for (int e = 0; e < 3 && np < 2; ++e) {
                    const int a = t[e], b = t[(e + 1) % 3];
                    const double fa = (*field)[a], fb = (*field)[b];
                    if ((fa - c) * (fb - c) < 0.0) {
                        const double s = (c - fa) / (fb - fa);
                        pts[np++] = mesh.vertices[a] + (mesh.vertices[b] - mesh.vertices[a]) * s;
                    }
                }
                if (np == 2)
                    out << "<line x1=\"" << px(pts[0]) << "\" y1=\"" << py(pts[0]) << "\" x2=\""
                        << px(pts[1]) << "\" y2=\"" << py(pts[1])
                        << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
            }
        }
    }

    for (const auto& e : mesh.boundary_edges)
        out << "<line x1=\"" << px(mesh.vertices[e[0]]) << "\" y1=\"" << py(mesh.vertices[e[0]])
            << "\" x2=\"" << px(mesh.vertices[e[1]]) << "\" y2=\"" << py(mesh.vertices[e[1]])
            << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";

    out << "</svg>\n";
}

}  // namespace steklov
