#include "wolff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "wolff/errors.hpp"

namespace wolff {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

double require_real(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError("expected number at " + path);
    return j.get<double>();
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError("expected object at " + path);
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError("missing field " + path + "." + key);
    return *it;
}

const json& require_array(const json& j, const std::string& key, const std::string& path) {
    const json& f = require_field(j, key, path);
    if (!f.is_array()) throw SchemaError("expected array at " + path + "." + key);
    return f;
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string packing_to_json(const Packing& packing) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"shrink\": " << format_real(packing.shrink()) << ",\n";
    out << "  \"tolerance\": " << format_real(packing.tolerance()) << ",\n";
    out << "  \"discs\": [";
    const auto& discs = packing.discs();
    for (std::size_t i = 0; i < discs.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "    { \"re\": " << format_real(discs[i].center.real())
            << ", \"im\": " << format_real(discs[i].center.imag())
            << ", \"r\": " << format_real(discs[i].radius) << " }";
    }
    out << (discs.empty() ? "],\n" : "\n  ],\n");
    out << "  \"residual_area\": " << format_real(packing.residual_area()) << "\n";
    out << "}\n";
    return out.str();
}

Packing packing_from_json(const std::string& text) {
    json j = parse(text);
    double shrink = require_real(require_field(j, "shrink", "$"), "$.shrink");
    double tolerance = require_real(require_field(j, "tolerance", "$"), "$.tolerance");
    const json& discs_json = require_array(j, "discs", "$");

    std::vector<Disc> discs;
    discs.reserve(discs_json.size());
    std::size_t i = 0;
    for (const json& dj : discs_json) {
        std::string path = "$.discs[" + std::to_string(i) + "]";
        double re = require_real(require_field(dj, "re", path), path + ".re");
        double im = require_real(require_field(dj, "im", path), path + ".im");
        double r = require_real(require_field(dj, "r", path), path + ".r");
        discs.push_back(Disc{Complex(re, im), r});
        ++i;
    }
    double residual = require_real(require_field(j, "residual_area", "$"), "$.residual_area");

    Packing packing(0.0, 0.0);
    try {
        packing = Packing::from_discs(discs, shrink, tolerance);
    } catch (const std::invalid_argument& e) {
        throw InvariantError(e.what());
    }
    if (std::abs(packing.residual_area() - residual) > 1e-12 * std::numbers::pi) {
        throw InvariantError(
            "residual_area field does not match pi - pi * sum r^2 of the disc list");
    }
    return packing;
}

std::string measure_to_json(const AnnihilatingMeasure& measure) {
    std::ostringstream out;
    out << "{\n  \"atoms\": [";
    for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
        const Atom& a = measure.atoms[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    { \"re\": " << format_real(a.point.real())
            << ", \"im\": " << format_real(a.point.imag())
            << ", \"weight\": " << format_real(a.weight) << " }";
    }
    out << (measure.atoms.empty() ? "],\n" : "\n  ],\n");
    out << "  \"residual_area\": " << format_real(measure.residual_area) << "\n";
    out << "}\n";
    return out.str();
}

AnnihilatingMeasure measure_from_json(const std::string& text, MeasureValidation mode) {
    json j = parse(text);
    const json& atoms_json = require_array(j, "atoms", "$");

    AnnihilatingMeasure m;
    m.atoms.reserve(atoms_json.size());
    std::size_t i = 0;
    for (const json& aj : atoms_json) {
        std::string path = "$.atoms[" + std::to_string(i) + "]";
        double re = require_real(require_field(aj, "re", path), path + ".re");
        double im = require_real(require_field(aj, "im", path), path + ".im");
        double w = require_real(require_field(aj, "weight", path), path + ".weight");
        m.atoms.push_back(Atom{Complex(re, im), w});
        ++i;
    }
    m.residual_area = require_real(require_field(j, "residual_area", "$"), "$.residual_area");

    try {
        validate_measure(m, mode == MeasureValidation::full);
    } catch (const DegenerateInput& e) {
        throw InvariantError(std::string("measure-consistency: ") + e.what());
    }
    return m;
}

std::string measure_to_csv(const AnnihilatingMeasure& measure) {
    std::ostringstream out;
    out << "n,re,im,weight\n";
    for (std::size_t n = 0; n < measure.atoms.size(); ++n) {
        const Atom& a = measure.atoms[n];
        out << (n + 1) << "," << format_real(a.point.real()) << ","
            << format_real(a.point.imag()) << "," << format_real(a.weight) << "\n";
    }
    return out.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const VerificationReport& r = reports[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "  { \"identity\": \"" << to_string(r.kind) << "\""
            << ", \"descriptor\": \"" << r.descriptor << "\""
            << ", \"n\": " << r.truncation
            << ", \"deviation\": " << format_real(r.deviation)
            << ", \"bound\": " << format_real(r.bound)
            << ", \"pass\": " << (r.pass ? "true" : "false") << " }";
    }
    out << (reports.empty() ? "]\n" : "\n]\n");
    return out.str();
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "identity,descriptor,n,deviation,bound,ratio\n";
    for (const VerificationReport& r : reports) {
        double ratio = r.bound > 0.0 ? r.deviation / r.bound
                                     : (r.deviation > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        out << to_string(r.kind) << ",\"" << r.descriptor << "\"," << r.truncation
            << "," << format_real(r.deviation) << "," << format_real(r.bound) << ","
            << format_real(ratio) << "\n";
    }
    return out.str();
}

namespace {

// Emits the certificate object with every line prefixed by `indent`, without
// a trailing newline, so it can be nested inside other documents.
std::string certificate_json_body(const IndependenceCertificate& cert,
                                  const std::string& indent);

}  // namespace

std::string certificate_to_json(const IndependenceCertificate& cert) {
    return certificate_json_body(cert, "") + "\n";
}

namespace {

std::string certificate_json_body(const IndependenceCertificate& cert,
                                  const std::string& indent) {
    std::ostringstream out;
    out << "{\n" << indent << "  \"points\": [";
    for (std::size_t i = 0; i < cert.problem.points.size(); ++i) {
        const Complex& p = cert.problem.points[i];
        out << (i == 0 ? "\n" : ",\n");
        out << indent << "    { \"re\": " << format_real(p.real()) << ", \"im\": "
            << format_real(p.imag()) << " }";
    }
    out << "\n" << indent << "  ],\n";
    out << indent << "  \"degree_cap\": " << cert.problem.degree_cap << ",\n";
    out << indent << "  \"optimal_value\": " << format_real(cert.optimal_value) << ",\n";
    out << indent << "  \"lower_bracket\": " << format_real(cert.lower_bracket) << ",\n";
    out << indent << "  \"upper_bracket\": " << format_real(cert.upper_bracket) << ",\n";
    out << indent << "  \"weights\": [";
    for (std::size_t i = 0; i < cert.optimal_weights.size(); ++i) {
        const Complex& w = cert.optimal_weights[i];
        out << (i == 0 ? "\n" : ",\n");
        out << indent << "    { \"re\": " << format_real(w.real()) << ", \"im\": "
            << format_real(w.imag()) << " }";
    }
    out << "\n" << indent << "  ],\n";
    out << indent << "  \"solver\": { \"method\": \"" << cert.solver.method << "\""
        << ", \"lp_iterations\": " << cert.solver.lp_iterations
        << ", \"outer_iterations\": " << cert.solver.outer_iterations
        << ", \"starts\": " << cert.solver.starts
        << ", \"polygon_cos\": " << format_real(cert.solver.polygon_cos) << " }\n";
    out << indent << "}";
    return out.str();
}

}  // namespace

std::string contrast_to_json(const ContrastReport& report) {
    std::ostringstream out;
    out << "{\n  \"segment\": " << certificate_json_body(report.segment, "  ") << ",\n";
    out << "  \"wolff_prefix\": " << certificate_json_body(report.wolff_prefix, "  ") << ",\n";
    out << "  \"ratio\": " << format_real(report.ratio) << "\n}\n";
    return out.str();
}

std::vector<Complex> points_from_csv(const std::string& text) {
    std::vector<Complex> points;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.find_first_not_of("reim, \r") == std::string::npos) continue;
        double re = 0.0, im = 0.0;
        int got = std::sscanf(line.c_str(), "%lf,%lf", &re, &im);
        if (got == 1) {
            im = 0.0;
        } else if (got != 2) {
            throw ParseError("points CSV line " + std::to_string(lineno) +
                             ": expected 're,im' or 're'");
        }
        points.push_back(Complex(re, im));
    }
    return points;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path);
    out << content;
}

}  // namespace wolff
