#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "steklov/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steklov {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// nlohmann's dump() prints shortest-round-trip doubles; reports pin reals to
// 12 significant digits instead, so serialization is hand-rolled.
void dump(const ordered_json& j, std::ostream& out, int indent) {
    const std::string pad(2 * indent, ' ');
    const std::string pad_in(2 * (indent + 1), ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out << pad_in << ordered_json(it.key()).dump() << ": ";
                dump(it.value(), out, indent + 1);
                if (i + 1 < j.size()) out << ',';
                out << '\n';
            }
            out << pad << '}';
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out << pad_in;
                dump(j[i], out, indent + 1);
                if (i + 1 < j.size()) out << ',';
                out << '\n';
            }
            out << pad << ']';
            return;
        }
        case ordered_json::value_t::number_float:
            out << format_real(j.get<double>());
            return;
        default:
            out << j.dump();
            return;
    }
}

std::string dump_top(const ordered_json& j) {
    std::ostringstream out;
    dump(j, out, 0);
    out << '\n';
    return out.str();
}

ordered_json geometry_to_json(const Geometry& g) {
    ordered_json j;
    if (const auto* d = std::get_if<DiskGeometry>(&g)) {
        j["type"] = "disk";
        j["radius"] = d->radius;
    } else if (const auto* e = std::get_if<EllipseGeometry>(&g)) {
        j["type"] = "ellipse";
        j["a"] = e->a;
        j["b"] = e->b;
    } else if (const auto* a = std::get_if<AnnulusGeometry>(&g)) {
        j["type"] = "annulus";
        j["r_in"] = a->r_in;
        j["r_out"] = a->r_out;
    } else if (const auto* p = std::get_if<PolygonGeometry>(&g)) {
        j["type"] = "polygon";
        auto& verts = j["vertices"] = ordered_json::array();
        for (const Vec2& v : p->vertices) verts.push_back({v.x, v.y});
    } else if (const auto* p = std::get_if<PolarGeometry>(&g)) {
        j["type"] = "polar";
        j["c0"] = p->c0;
        j["cos"] = p->cos_coeffs;
        j["sin"] = p->sin_coeffs;
    }
    return j;
}

Geometry geometry_from_json(const ordered_json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") return DiskGeometry{j.at("radius").get<double>()};
    if (type == "ellipse") return EllipseGeometry{j.at("a").get<double>(), j.at("b").get<double>()};
    if (type == "annulus")
        return AnnulusGeometry{j.at("r_in").get<double>(), j.at("r_out").get<double>()};
    if (type == "polygon") {
        PolygonGeometry g;
        for (const auto& v : j.at("vertices"))
            g.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        return g;
    }
    if (type == "polar") {
        PolarGeometry g;
        g.c0 = j.at("c0").get<double>();
        if (j.contains("cos")) g.cos_coeffs = j.at("cos").get<std::vector<double>>();
        if (j.contains("sin")) g.sin_coeffs = j.at("sin").get<std::vector<double>>();
        return g;
    }
    throw spec_error("DomainSpec: unknown geometry type '" + type + "'");
}

ordered_json spec_to_json_obj(const DomainSpec& spec) {
    ordered_json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["geometry"] = geometry_to_json(spec.geometry);
    j["ambient"] = {{"model", spec.ambient.hyperbolic() ? "poincare" : "euclidean"},
                    {"curvature", spec.ambient.kappa0}};
    j["comparison"] = {{"kappa", spec.kappa}, {"K", spec.bigK}};
    j["mesh"] = {{"h", spec.h}};
    return j;
}

}  // namespace

DomainSpec parse_domain_spec(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("DomainSpec: JSON parse error: ") + e.what());
    }
    try {
        DomainSpec spec;
        if (j.contains("name")) spec.name = j.at("name").get<std::string>();
        spec.geometry = geometry_from_json(j.at("geometry"));
        const auto& amb = j.at("ambient");
        const std::string model = amb.at("model").get<std::string>();
        if (model == "euclidean")
            spec.ambient = {Model::euclidean, 0.0};
        else if (model == "poincare")
            spec.ambient = {Model::poincare, amb.at("curvature").get<double>()};
        else
            throw spec_error("DomainSpec: unknown ambient model '" + model + "'");
        if (amb.contains("curvature") && model == "euclidean" &&
            amb.at("curvature").get<double>() != 0.0)
            throw spec_error("DomainSpec: euclidean ambient needs curvature 0");
        if (j.contains("comparison")) {
            spec.kappa = j.at("comparison").at("kappa").get<double>();
            spec.bigK = j.at("comparison").at("K").get<double>();
        } else {
            spec.kappa = spec.bigK = spec.ambient.kappa0;  // sharp Brock-Weinstock default
        }
        spec.h = j.at("mesh").at("h").get<double>();
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("DomainSpec: missing or mistyped field: ") + e.what());
    }
}

DomainSpec load_domain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_error("DomainSpec: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    DomainSpec spec = parse_domain_spec(buf.str());
    if (spec.name.empty()) spec.name = std::filesystem::path(path).stem().string();
    return spec;
}

std::string domain_spec_to_json(const DomainSpec& spec) { return dump_top(spec_to_json_obj(spec)); }

std::string report_to_json(const VerificationReport& rep) {
    ordered_json j;
    j["schema_version"] = "1";
    j["name"] = rep.name;
    j["spec"] = spec_to_json_obj(rep.spec);
    j["sigma1_fem"] = rep.sigma1_fem;
    j["sigma1_finest"] = rep.sigma1_finest;
    j["sigma1_error_estimate"] = rep.sigma1_error_estimate;
    j["volume"] = rep.volume;
    j["diameter"] = rep.diameter;
    j["diameter_convention"] = rep.diameter_convention;
    j["ball_radius_star"] = rep.ball_radius_star;
    j["sigma1_star"] = rep.sigma1_star;
    j["constant_C"] = rep.constant_C;
    j["bound"] = rep.bound;
    j["ratio"] = rep.ratio;
    j["chain"] = {{"q41", rep.chain.q41}, {"q42", rep.chain.q42}, {"q43", rep.chain.q43}};
    j["chain_ok"] = rep.chain_ok;
    j["center_of_mass"] = {{"x", rep.center_of_mass_point.x},
                           {"y", rep.center_of_mass_point.y},
                           {"residual", rep.center_of_mass_residual}};
    j["mesh"] = {{"h", rep.mesh_h}, {"vertices", rep.mesh_vertices}};
    auto& levels = j["levels"] = ordered_json::array();
    for (const auto& l : rep.levels)
        levels.push_back({{"h", l.h}, {"vertices", l.vertices}, {"sigma1", l.sigma1}});
    j["slack"] = rep.slack;
    j["pass"] = rep.pass;
    return dump_top(j);
}

void write_report_json(const VerificationReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report_json: cannot open " + path);
    out << report_to_json(rep);
    if (!out) throw std::runtime_error("write_report_json: write failed for " + path);
}

std::vector<CorpusRow> run_corpus(const std::string& dir, int refinements, bool parallel) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw spec_error("corpus: not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw spec_error("corpus: no .json specs in " + dir);

    std::vector<CorpusRow> rows(paths.size());
    const int count = static_cast<int>(paths.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < count; ++i) {
        rows[i].name = std::filesystem::path(paths[i]).stem().string();
        try {
            const DomainSpec spec = load_domain_spec(paths[i]);
            rows[i].report = verify_domain(spec, refinements, /*deterministic=*/!parallel);
            rows[i].ok = true;
        } catch (const std::exception& e) {
            rows[i].ok = false;
            rows[i].error = e.what();
        }
    }
    return rows;
}

std::string corpus_csv(const std::vector<CorpusRow>& rows) {
    std::ostringstream out;
    out << "name,sigma1_fem,sigma1_star,C,ratio,q41,q42,q43,pass,error\n";
    for (const auto& row : rows) {
        out << row.name << ',';
        if (row.ok) {
            const auto& r = row.report;
            out << format_real(r.sigma1_fem) << ',' << format_real(r.sigma1_star) << ','
                << format_real(r.constant_C) << ',' << format_real(r.ratio) << ','
                << format_real(r.chain.q41) << ',' << format_real(r.chain.q42) << ','
                << format_real(r.chain.q43) << ',' << (r.pass ? "true" : "false") << ',';
        } else {
            out << ",,,,,,,false,";
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << msg;
        }
        out << '\n';
    }
    return out.str();
}

void write_corpus_csv(const std::vector<CorpusRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_corpus_csv: cannot open " + path);
    out << corpus_csv(rows);
}

void emit_report(const VerificationReport& report, const std::string& format,
                 const std::string& path) {
    if (format == "json") {
        write_report_json(report, path);
    } else if (format == "csv") {
        CorpusRow row;
        row.name = report.name;
        row.ok = true;
        row.report = report;
        write_corpus_csv({row}, path);
    } else {
        throw std::invalid_argument("emit_report: unknown format '" + format + "'");
    }
}

}  // namespace steklov
