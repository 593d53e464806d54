#include "steklov/verify.hpp"

#include <algorithm>
#include <cmath>

#include "steklov/fem.hpp"
#include "steklov/radial.hpp"
#include "steklov/spaceform.hpp"

namespace steklov {

VerificationReport verify_domain(const DomainSpec& spec, int refinements, bool deterministic) {
    spec.validate();
    if (refinements < 1) throw std::invalid_argument("verify_domain: refinements must be >= 1");
    const bool parallel = !deterministic;

    VerificationReport rep;
    rep.name = spec.name;
    rep.spec = spec;

    TriMesh finest;
    for (int level = 0; level < refinements; ++level) {
        const DomainSpec level_spec = spec.refined(level);
        TriMesh mesh = build_mesh(level_spec);
        const SteklovSpectrum spectrum = steklov_spectrum(mesh, 2, parallel);
        rep.levels.push_back(
            {level_spec.h, static_cast<int>(mesh.vertices.size()), spectrum.sigma1()});
        if (level == refinements - 1) finest = std::move(mesh);
    }

    rep.sigma1_finest = rep.levels.back().sigma1;
    if (refinements >= 2) {
        const double s_fine = rep.levels[refinements - 1].sigma1;
        const double s_coarse = rep.levels[refinements - 2].sigma1;
        rep.sigma1_fem = s_fine + (s_fine - s_coarse) / 3.0;  // second-order extrapolation
        rep.sigma1_error_estimate = std::abs(s_fine - s_coarse) / 3.0;
    } else {
        rep.sigma1_fem = rep.sigma1_finest;
        rep.sigma1_error_estimate = 0.0;
    }
    rep.mesh_h = rep.levels.back().h;
    rep.mesh_vertices = rep.levels.back().vertices;

    rep.volume = domain_volume(finest);
    rep.diameter = domain_diameter(finest);
    rep.ball_radius_star = radius_from_volume(2, spec.kappa, rep.volume);
    rep.sigma1_star = sigma1_ball(2, spec.kappa, rep.ball_radius_star);
    rep.constant_C = bound_constant(2, spec.kappa, spec.bigK, rep.diameter);
    rep.bound = rep.constant_C * rep.sigma1_star;
    rep.ratio = rep.sigma1_fem / rep.bound;

    // Chain diagnostics on the finest mesh. One profile serves the eta-pulled
    // integrals; the ball integrals use their own profile ending exactly at R*.
    const EtaTransfer eta(2, spec.ambient.kappa0, spec.kappa);
    const double reach = 1.25 * std::max(eta(1.05 * rep.diameter), rep.ball_radius_star);
    const RadialProfile profile = solve_profile(2, spec.kappa, reach);
    const CenterOfMass com = center_of_mass(finest, eta, profile);
    rep.center_of_mass_point = com.point;
    rep.center_of_mass_residual = com.residual;

    rep.chain.q41 = test_function_quotient(finest, com, eta, profile, parallel);
    rep.chain.q42 = rep.constant_C * mesh_gh_ratio(finest, com, eta, profile, parallel);
    const RadialProfile star_profile = solve_profile(2, spec.kappa, rep.ball_radius_star);
    rep.chain.q43 = rep.constant_C * gh_integral_ratio(star_profile);

    rep.slack = std::max(1e-3, 3.0 * rep.sigma1_error_estimate / rep.sigma1_fem);
    rep.pass = rep.sigma1_fem <= rep.bound * (1.0 + rep.slack);
    rep.chain_ok = rep.sigma1_fem <= rep.chain.q41 * (1.0 + rep.slack) &&
                   rep.chain.q41 <= rep.chain.q42 * (1.0 + rep.slack) &&
                   rep.chain.q42 <= rep.chain.q43 * (1.0 + rep.slack) &&
                   std::abs(rep.chain.q43 - rep.bound) <= rep.slack * rep.chain.q43;
    return rep;
}

}  // namespace steklov
