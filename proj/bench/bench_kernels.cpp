// Serial reference vs OpenMP kernels: P1 assembly, the boundary Schur
// complement, and the chain quadratures. Prints timings, speedup, and the
// worst relative deviation between the two paths.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>

#include "steklov/comparison.hpp"
#include "steklov/fem.hpp"
#include "steklov/mesh.hpp"
#include "steklov/radial.hpp"
#include "steklov/symmetrize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace steklov;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double rel_diff(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    return denom > 0.0 ? std::abs(a - b) / denom : 0.0;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const double h = quick ? 0.04 : 0.012;

    DomainSpec spec;
    spec.geometry = DiskGeometry{1.0};
    spec.ambient = {Model::euclidean, 0.0};
    spec.h = h;
    const TriMesh mesh = build_mesh(spec);
    std::cout << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
              << " triangles, " << mesh.boundary_vertices.size() << " boundary vertices\n";
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n\n";
#else
    std::cout << "built without openmp; both paths run serial\n\n";
#endif

    double worst = 0.0;

    Eigen::SparseMatrix<double> K_serial, K_par;
    const double t_asm_s = time_ms([&] { K_serial = stiffness_matrix(mesh, false); });
    const double t_asm_p = time_ms([&] { K_par = stiffness_matrix(mesh, true); });
    double asm_dev = 0.0;
    for (int c = 0; c < K_serial.outerSize(); ++c) {
        Eigen::SparseMatrix<double>::InnerIterator it_s(K_serial, c), it_p(K_par, c);
        for (; it_s && it_p; ++it_s, ++it_p) asm_dev = std::max(asm_dev, rel_diff(it_s.value(), it_p.value()));
    }
    worst = std::max(worst, asm_dev);
    std::cout << "stiffness assembly : serial " << t_asm_s << " ms, omp " << t_asm_p
              << " ms, speedup " << t_asm_s / t_asm_p << ", max rel dev " << asm_dev << '\n';

    Eigen::MatrixXd S_serial, S_par;
    const double t_dtn_s = time_ms([&] { S_serial = dtn_schur(K_serial, mesh.boundary_vertices, false); });
    const double t_dtn_p = time_ms([&] { S_par = dtn_schur(K_serial, mesh.boundary_vertices, true); });
    const double dtn_dev = (S_serial - S_par).cwiseAbs().maxCoeff() / S_serial.cwiseAbs().maxCoeff();
    worst = std::max(worst, dtn_dev);
    std::cout << "dtn schur          : serial " << t_dtn_s << " ms, omp " << t_dtn_p
              << " ms, speedup " << t_dtn_s / t_dtn_p << ", max rel dev " << dtn_dev << '\n';

    const EtaTransfer eta(2, -1.0, 0.0);
    const RadialProfile profile = solve_profile(2, 0.0, 8.0);
    const CenterOfMass com{{0.0, 0.0}, 0.0, 1.0, 0};
    double q_serial = 0.0, q_par = 0.0;
    const double t_q_s = time_ms([&] { q_serial = test_function_quotient(mesh, com, eta, profile, false); });
    const double t_q_p = time_ms([&] { q_par = test_function_quotient(mesh, com, eta, profile, true); });
    const double q_dev = rel_diff(q_serial, q_par);
    worst = std::max(worst, q_dev);
    std::cout << "chain quadrature   : serial " << t_q_s << " ms, omp " << t_q_p
              << " ms, speedup " << t_q_s / t_q_p << ", max rel dev " << q_dev << '\n';

    std::cout << "\nworst relative deviation: " << worst << '\n';
    if (worst > 1e-12) {
        std::cout << "FAIL: parallel kernels deviate beyond 1e-12\n";
        return 1;
    }
    std::cout << "OK: parallel kernels match the serial reference within 1e-12\n";
    return 0;
}
