#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "steklov/fem.hpp"
#include "steklov/radial.hpp"
#include "steklov/spaceform.hpp"
#include "steklov/verify.hpp"

namespace {

std::string real12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_ball(int n, double kappa, double radius) {
    if (kappa > 0.0 || radius <= 0.0 || n < 2) {
        std::cerr << "ball: need n >= 2, kappa <= 0, radius > 0\n";
        return 2;
    }
    const double direct = steklov::sigma1_ball(n, kappa, radius);
    const double via_gh = steklov::sigma1_via_GH(n, kappa, radius);
    std::cout << "sigma1_ball    = " << real12(direct) << '\n';
    std::cout << "sigma1_via_GH  = " << real12(via_gh) << '\n';
    std::cout << "difference     = " << real12(direct - via_gh) << '\n';
    std::cout << "{\"n\": " << n << ", \"kappa\": " << real12(kappa) << ", \"radius\": "
              << real12(radius) << ", \"sigma1_ball\": " << real12(direct)
              << ", \"sigma1_via_GH\": " << real12(via_gh) << "}\n";
    return 0;
}

int run_bound(int n, double kappa, double bigK, double d) {
    if (bigK > kappa || kappa > 0.0 || d <= 0.0 || n < 2) {
        std::cerr << "bound: need n >= 2, K <= kappa <= 0, d > 0\n";
        return 2;
    }
    const double c = steklov::bound_constant(n, kappa, bigK, d);
    std::cout << "C = " << real12(c) << '\n';
    std::cout << "{\"n\": " << n << ", \"kappa\": " << real12(kappa) << ", \"K\": " << real12(bigK)
              << ", \"d\": " << real12(d) << ", \"C\": " << real12(c) << "}\n";
    return 0;
}

int run_verify(const std::string& spec_path, const std::string& out_path, int refinements,
               bool deterministic) {
    steklov::DomainSpec spec;
    try {
        spec = steklov::load_domain_spec(spec_path);
    } catch (const steklov::spec_error& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return 2;
    }
    steklov::VerificationReport report;
    try {
        report = steklov::verify_domain(spec, refinements, deterministic);
    } catch (const steklov::spec_error& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verify: solver failure: " << e.what() << '\n';
        return 3;
    }
    if (!out_path.empty()) steklov::write_report_json(report, out_path);
    std::cout << report.name << ": sigma1_fem = " << real12(report.sigma1_fem)
              << ", bound = " << real12(report.bound) << ", ratio = " << real12(report.ratio)
              << ", " << (report.pass ? "PASS" : "FAIL") << '\n';
    return report.pass ? 0 : 1;
}

int run_corpus(const std::string& dir, const std::string& csv_path, int refinements,
               bool parallel) {
    std::vector<steklov::CorpusRow> rows;
    try {
        rows = steklov::run_corpus(dir, refinements, parallel);
    } catch (const steklov::spec_error& e) {
        std::cerr << "corpus: " << e.what() << '\n';
        return 2;
    }
    if (!csv_path.empty()) steklov::write_corpus_csv(rows, csv_path);
    bool all_pass = true;
    for (const auto& row : rows) {
        const bool ok = row.ok && row.report.pass;
        all_pass = all_pass && ok;
        std::cout << row.name << ": "
                  << (row.ok ? (row.report.pass ? "PASS" : "FAIL") : ("ERROR " + row.error))
                  << '\n';
    }
    return all_pass ? 0 : 1;
}

int run_mesh(const std::string& spec_path, const std::string& svg_path, int eigenfunction) {
    steklov::DomainSpec spec;
    try {
        spec = steklov::load_domain_spec(spec_path);
    } catch (const steklov::spec_error& e) {
        std::cerr << "mesh: " << e.what() << '\n';
        return 2;
    }
    try {
        const steklov::TriMesh mesh = steklov::build_mesh(spec);
        if (eigenfunction >= 0) {
            const auto spectrum = steklov::steklov_spectrum(mesh, std::max(1, eigenfunction));
            std::vector<double> field(mesh.vertices.size());
            for (size_t v = 0; v < field.size(); ++v)
                field[v] = spectrum.extensions(static_cast<int>(v), eigenfunction);
            steklov::write_mesh_svg(mesh, svg_path, &field);
        } else {
            steklov::write_mesh_svg(mesh, svg_path);
        }
        std::cout << "wrote " << svg_path << " (" << mesh.vertices.size() << " vertices, "
                  << mesh.triangles.size() << " triangles)\n";
    } catch (const steklov::spec_error& e) {
        std::cerr << "mesh: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mesh: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov eigenvalue bounds on space forms: solvers and verification"};
    app.require_subcommand(1);

    int n = 2;
    double kappa = 0.0, bigK = 0.0, radius = 1.0, d = 1.0;
    std::string spec_path, out_path, dir, csv_path, svg_path;
    int refinements = 3;
    bool deterministic = false, parallel = false;
    int eigenfunction = -1;

    auto* ball = app.add_subcommand("ball", "sigma1 of a geodesic ball, two routes");
    ball->add_option("--n", n, "dimension")->required();
    ball->add_option("--kappa", kappa, "curvature (<= 0)")->required();
    ball->add_option("--radius", radius, "geodesic radius")->required();

    auto* bound = app.add_subcommand("bound", "Theorem constant (sn_K(d)/sn_kappa(d))^{2n-2}");
    bound->add_option("--n", n, "dimension")->required();
    bound->add_option("--kappa", kappa, "upper sectional bound (<= 0)")->required();
    bound->add_option("--K", bigK, "lower Ricci bound (<= kappa)")->required();
    bound->add_option("--d", d, "diameter")->required();

    auto* verify = app.add_subcommand("verify", "verify the eigenvalue bound on one domain");
    verify->add_option("--spec", spec_path, "domain spec (JSON)")->required();
    verify->add_option("--out", out_path, "report output path (JSON)");
    verify->add_option("--refinements", refinements, "number of mesh levels");
    verify->add_flag("--deterministic", deterministic, "single-threaded, fixed summation order");

    auto* corpus = app.add_subcommand("corpus", "verify a directory of domain specs");
    corpus->add_option("--dir", dir, "directory of spec JSON files")->required();
    corpus->add_option("--csv", csv_path, "aggregate CSV output path");
    corpus->add_option("--refinements", refinements, "number of mesh levels");
    corpus->add_flag("--parallel", parallel, "run corpus entries concurrently");

    auto* mesh = app.add_subcommand("mesh", "triangulate a domain and export SVG");
    mesh->add_option("--spec", spec_path, "domain spec (JSON)")->required();
    mesh->add_option("--svg", svg_path, "SVG output path")->required();
    mesh->add_option("--eigenfunction", eigenfunction,
                     "color by eigenfunction k with level sets (k >= 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ball->parsed()) return run_ball(n, kappa, radius);
        if (bound->parsed()) return run_bound(n, kappa, bigK, d);
        if (verify->parsed()) return run_verify(spec_path, out_path, refinements, deterministic);
        if (corpus->parsed()) return run_corpus(dir, csv_path, refinements, parallel);
        if (mesh->parsed()) return run_mesh(spec_path, svg_path, eigenfunction);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
