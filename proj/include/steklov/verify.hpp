#pragma once

#include <string>
#include <vector>

#include "steklov/comparison.hpp"
#include "steklov/mesh.hpp"

namespace steklov {

struct ChainDiagnostics {
    double q41 = 0.0;  // Prop 4.1 test-function quotient
    double q42 = 0.0;  // C * mesh integrals of H(eta(r_p)) / G(eta(r_p))
    double q43 = 0.0;  // C * ball integrals of H / G  (= C * sigma1_star)
};

struct RefinementLevel {
    double h = 0.0;
    int vertices = 0;
    double sigma1 = 0.0;
};

struct VerificationReport {
    std::string name;
    DomainSpec spec;

    double sigma1_fem = 0.0;  // Richardson-extrapolated
    double sigma1_finest = 0.0;
    double sigma1_error_estimate = 0.0;
    std::vector<RefinementLevel> levels;

    double volume = 0.0;
    double diameter = 0.0;
    double ball_radius_star = 0.0;
    double sigma1_star = 0.0;
    double constant_C = 1.0;
    double bound = 0.0;  // C * sigma1_star
    double ratio = 0.0;  // sigma1_fem / bound

    ChainDiagnostics chain;
    bool chain_ok = false;

    Vec2 center_of_mass_point;
    double center_of_mass_residual = 0.0;

    double mesh_h = 0.0;
    int mesh_vertices = 0;

    double slack = 0.0;  // max(1e-3, 3 * relative mesh error estimate)
    bool pass = false;

    // diam(closure) via the boundary-vertex maximum; recorded explicitly.
    std::string diameter_convention = "boundary-vertex maximum (closure)";
};

// Runs the FEM solve at `refinements` successive mesh levels, extrapolates
// sigma1, and assembles the full Theorem-1.1 report with chain diagnostics.
VerificationReport verify_domain(const DomainSpec& spec, int refinements = 3,
                                 bool deterministic = true);

// --- JSON / CSV -----------------------------------------------------------

DomainSpec parse_domain_spec(const std::string& json_text);
DomainSpec load_domain_spec(const std::string& path);
std::string domain_spec_to_json(const DomainSpec& spec);

// Stable field order, reals printed with 12 significant digits, schema "1".
std::string report_to_json(const VerificationReport& report);
void write_report_json(const VerificationReport& report, const std::string& path);

// format is "json" or "csv" (csv: the corpus header plus one row).
void emit_report(const VerificationReport& report, const std::string& format,
                 const std::string& path);

struct CorpusRow {
    std::string name;
    bool ok = false;        // report computed (may still fail the inequality)
    std::string error;      // nonempty when the run errored out
    VerificationReport report;
};

std::vector<CorpusRow> run_corpus(const std::string& dir, int refinements, bool parallel);
std::string corpus_csv(const std::vector<CorpusRow>& rows);
void write_corpus_csv(const std::vector<CorpusRow>& rows, const std::string& path);

}  // namespace steklov
