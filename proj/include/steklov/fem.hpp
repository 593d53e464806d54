#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "steklov/mesh.hpp"

namespace steklov {

// P1 stiffness with Euclidean element geometry in both ambients: the 2D
// Dirichlet energy is conformally invariant, so the Poincare-model stiffness
// equals the Euclidean one. Kernel = constants.
// The parallel variant assembles per-element triplets into fixed slots, so
// its result is identical to the serial one.
Eigen::SparseMatrix<double> stiffness_matrix(const TriMesh& mesh, bool parallel = false);

// Consistent 1D P1 boundary mass, (len/6)[[2,1],[1,2]] per boundary edge with
// ambient edge length (2-point Gauss of the conformal factor when hyperbolic).
// Indexed by mesh.boundary_vertices order.
Eigen::SparseMatrix<double> boundary_mass_matrix(const TriMesh& mesh);

// Boundary Schur complement S = K_bb - K_bi K_ii^{-1} K_ib (discrete
// Dirichlet-to-Neumann map); one sparse solve per boundary vertex.
Eigen::MatrixXd dtn_schur(const Eigen::SparseMatrix<double>& K,
                          const std::vector<int>& boundary_vertices, bool parallel = false);

struct SteklovSpectrum {
    std::vector<double> eigenvalues;   // ascending, k+1 entries
    Eigen::MatrixXd boundary_vectors;  // nb x (k+1), orthonormal in the boundary mass
    Eigen::MatrixXd extensions;        // nv x (k+1), discrete harmonic extensions
    std::vector<int> boundary_vertices;
    int sigma1_index = 1;  // first eigenvector with ~zero boundary-mass mean

    double sigma0() const { return eigenvalues.front(); }
    double sigma1() const { return eigenvalues[sigma1_index]; }
};

// Solves S phi = sigma M_b phi by Cholesky reduction of M_b to a dense
// symmetric eigenproblem and keeps the k+1 smallest pairs.
SteklovSpectrum steklov_spectrum(const TriMesh& mesh, int k, bool parallel = false);
SteklovSpectrum steklov_spectrum(const DomainSpec& spec, int k, bool parallel = false);

}  // namespace steklov
