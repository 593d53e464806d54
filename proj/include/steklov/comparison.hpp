#pragma once

#include "steklov/mesh.hpp"
#include "steklov/radial.hpp"
#include "steklov/symmetrize.hpp"

namespace steklov {

struct CenterOfMass {
    Vec2 point;
    double residual = 0.0;
    double tolerance = 0.0;
    int iterations = 0;
};

// Zero of X(p) = int_{dOmega} F(eta(r_p)) * exp_p^{-1}(x)/r_p dA, found by a
// damped fixed-point iteration with a finite-difference Newton fallback.
// Requires the profile to cover eta(diam + step slack).
CenterOfMass center_of_mass(const TriMesh& mesh, const EtaTransfer& eta,
                            const RadialProfile& profile);

// Upper-bound quotient for sigma_1(Omega) built from the radial test
// functions: element-midpoint quadrature over the mesh against boundary-edge
// Gauss quadrature.
double test_function_quotient(const TriMesh& mesh, const CenterOfMass& com, const EtaTransfer& eta,
                              const RadialProfile& profile, bool parallel = false);

// int_Omega H(eta(r_p)) dmu / int_Omega G(eta(r_p)) dmu in the ambient metric.
double mesh_gh_ratio(const TriMesh& mesh, const CenterOfMass& com, const EtaTransfer& eta,
                     const RadialProfile& profile, bool parallel = false);

// Per-element ambient measures and point values of a radial integrand,
// packaged for the rearrangement machinery.
WeightedSampleSet sample_radial_on_mesh(const TriMesh& mesh, const Vec2& pole,
                                        const std::function<double(double)>& f);

}  // namespace steklov
