#include "steklov/fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steklov {

namespace {

void element_stiffness(const TriMesh& mesh, int t, double ke[3][3]) {
    const auto& tri = mesh.triangles[t];
    const Vec2 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
    const double area2 = (b - a).cross(c - a);
    // grad(lambda_i) = perp(opposite edge) / (2 A)
    const Vec2 g[3] = {{(b.y - c.y) / area2, (c.x - b.x) / area2},
                       {(c.y - a.y) / area2, (a.x - c.x) / area2},
                       {(a.y - b.y) / area2, (b.x - a.x) / area2}};
    const double area = 0.5 * area2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ke[i][j] = area * g[i].dot(g[j]);
}

}  // namespace

Eigen::SparseMatrix<double> stiffness_matrix(const TriMesh& mesh, bool parallel) {
    const int nv = static_cast<int>(mesh.vertices.size());
    const int nt = static_cast<int>(mesh.triangles.size());

    // Degeneracy check stays outside the (possibly parallel) assembly loop.
    for (int t = 0; t < nt; ++t)
        if (!(mesh.triangle_area(t) > 1e-14)) {
            std::ostringstream msg;
            msg << "stiffness assembly: degenerate triangle " << t;
            throw mesh_error(msg.str());
        }

    std::vector<Eigen::Triplet<double>> triplets(9 * static_cast<size_t>(nt));

#pragma omp parallel for schedule(static) if (parallel)
    for (int t = 0; t < nt; ++t) {
        double ke[3][3];
        element_stiffness(mesh, t, ke);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                triplets[9 * static_cast<size_t>(t) + 3 * i + j] =
                    Eigen::Triplet<double>(tri[i], tri[j], ke[i][j]);
    }

    Eigen::SparseMatrix<double> K(nv, nv);
    K.setFromTriplets(triplets.begin(), triplets.end());
    return K;
}

Eigen::SparseMatrix<double> boundary_mass_matrix(const TriMesh& mesh) {
    const auto& bv = mesh.boundary_vertices;
    const int nb = static_cast<int>(bv.size());
    std::vector<int> local(mesh.vertices.size(), -1);
    for (int i = 0; i < nb; ++i) local[bv[i]] = i;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(4 * mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) {
        const Vec2 &a = mesh.vertices[e[0]], &b = mesh.vertices[e[1]];
        double len = (b - a).norm();
        if (mesh.ambient.hyperbolic()) {
            const double g = 0.5 / std::sqrt(3.0);
            const Vec2 p1 = a + (b - a) * (0.5 - g), p2 = a + (b - a) * (0.5 + g);
            len *= 0.5 * (conformal_factor(mesh.ambient, p1) + conformal_factor(mesh.ambient, p2));
        }
        const int i = local[e[0]], j = local[e[1]];
        triplets.emplace_back(i, i, len / 3.0);
        triplets.emplace_back(j, j, len / 3.0);
        triplets.emplace_back(i, j, len / 6.0);
        triplets.emplace_back(j, i, len / 6.0);
    }
    Eigen::SparseMatrix<double> M(nb, nb);
    M.setFromTriplets(triplets.begin(), triplets.end());
    return M;
}

namespace {

// Shared boundary reduction: index split, interior factorization and the
// Schur complement, reused by the spectrum solve for harmonic extension.
struct BoundaryReduction {
    std::vector<int> boundary;             // sorted global ids
    std::vector<int> interior;             // sorted global ids
    Eigen::SparseMatrix<double> K_ib;      // ni x nb
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> interior_solver;
    Eigen::MatrixXd S;                     // nb x nb
    bool has_interior = false;

    BoundaryReduction(const Eigen::SparseMatrix<double>& K, const std::vector<int>& boundary_ids,
                      bool parallel) {
        const int nv = static_cast<int>(K.rows());
        boundary = boundary_ids;
        std::sort(boundary.begin(), boundary.end());
        std::vector<int> tag(nv, -1);
        for (size_t i = 0; i < boundary.size(); ++i) tag[boundary[i]] = static_cast<int>(i);
        for (int v = 0; v < nv; ++v)
            if (tag[v] < 0) interior.push_back(v);
        std::vector<int> itag(nv, -1);
        for (size_t i = 0; i < interior.size(); ++i) itag[interior[i]] = static_cast<int>(i);

        const int nb = static_cast<int>(boundary.size());
        const int ni = static_cast<int>(interior.size());
        has_interior = ni > 0;

        std::vector<Eigen::Triplet<double>> t_bb, t_ib, t_ii;
        for (int col = 0; col < K.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
                const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
                const bool rb = tag[r] >= 0, cb = tag[c] >= 0;
                if (rb && cb)
                    t_bb.emplace_back(tag[r], tag[c], it.value());
                else if (!rb && cb)
                    t_ib.emplace_back(itag[r], tag[c], it.value());
                else if (!rb && !cb)
                    t_ii.emplace_back(itag[r], itag[c], it.value());
            }
        Eigen::SparseMatrix<double> K_bb(nb, nb), K_ii(ni, ni);
        K_bb.setFromTriplets(t_bb.begin(), t_bb.end());
        K_ib.resize(ni, nb);
        K_ib.setFromTriplets(t_ib.begin(), t_ib.end());
        K_ii.setFromTriplets(t_ii.begin(), t_ii.end());

        S = Eigen::MatrixXd(K_bb);
        if (!has_interior) return;

        interior_solver.compute(K_ii);
        if (interior_solver.info() != Eigen::Success)
            throw mesh_error("dtn_schur: interior factorization failed (mesh quality)");

        // One interior solve per boundary vertex; columns are independent.
        Eigen::MatrixXd correction(nb, nb);
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (int c = 0; c < nb; ++c) {
            const Eigen::VectorXd rhs = K_ib.col(c);
            const Eigen::VectorXd x = interior_solver.solve(rhs);
            correction.col(c) = K_ib.transpose() * x;
        }
        S -= correction;
    }

    Eigen::VectorXd extend(const Eigen::VectorXd& phi_b) const {
        Eigen::VectorXd full(boundary.size() + interior.size());
        for (size_t i = 0; i < boundary.size(); ++i) full[boundary[i]] = phi_b[i];
        if (has_interior) {
            const Eigen::VectorXd u = -interior_solver.solve(K_ib * phi_b);
            for (size_t i = 0; i < interior.size(); ++i) full[interior[i]] = u[i];
        }
        return full;
    }
};

}  // namespace

Eigen::MatrixXd dtn_schur(const Eigen::SparseMatrix<double>& K,
                          const std::vector<int>& boundary_vertices, bool parallel) {
    return BoundaryReduction(K, boundary_vertices, parallel).S;
}

SteklovSpectrum steklov_spectrum(const TriMesh& mesh, int k, bool parallel) {
    if (k < 1) throw std::invalid_argument("steklov_spectrum: k must be >= 1");
    const int nb = static_cast<int>(mesh.boundary_vertices.size());
    if (k + 1 > nb) throw std::invalid_argument("steklov_spectrum: k+1 exceeds boundary size");

    const Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, parallel);
    const Eigen::SparseMatrix<double> M = boundary_mass_matrix(mesh);
    BoundaryReduction red(K, mesh.boundary_vertices, parallel);

    const Eigen::MatrixXd Md(M);
    Eigen::LLT<Eigen::MatrixXd> llt(Md);
    if (llt.info() != Eigen::Success)
        throw mesh_error("steklov_spectrum: boundary mass is not positive-definite");

    // L^{-1} S L^{-T}: same spectrum, standard symmetric problem.
    Eigen::MatrixXd A = llt.matrixL().solve(red.S);
    A = llt.matrixL().solve(A.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("steklov_spectrum: eigen-iteration failed to converge");

    SteklovSpectrum out;
    out.boundary_vertices = red.boundary;
    out.eigenvalues.resize(k + 1);
    out.boundary_vectors.resize(nb, k + 1);
    out.extensions.resize(static_cast<int>(mesh.vertices.size()), k + 1);
    for (int i = 0; i <= k; ++i) {
        out.eigenvalues[i] = es.eigenvalues()[i];
        const Eigen::VectorXd phi = llt.matrixU().solve(es.eigenvectors().col(i));
        out.boundary_vectors.col(i) = phi;
        out.extensions.col(i) = red.extend(phi);
    }

    // sigma1: smallest eigenvalue whose eigenvector integrates to ~zero on
    // the boundary.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(nb);
    const double ones_norm = std::sqrt(ones.dot(Md * ones));
    out.sigma1_index = 1;
    for (int i = 1; i <= k; ++i) {
        const Eigen::VectorXd phi = out.boundary_vectors.col(i);
        const double mean = std::abs(ones.dot(Md * phi)) / (ones_norm * std::sqrt(phi.dot(Md * phi)));
        if (mean < 1e-6) {
            out.sigma1_index = i;
            break;
        }
    }
    return out;
}

SteklovSpectrum steklov_spectrum(const DomainSpec& spec, int k, bool parallel) {
    return steklov_spectrum(build_mesh(spec), k, parallel);
}

}  // namespace steklov
