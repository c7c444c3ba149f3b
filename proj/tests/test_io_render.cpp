#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wolff/errors.hpp"
#include "wolff/io.hpp"
#include "wolff/measure.hpp"
#include "wolff/packing.hpp"
#include "wolff/render.hpp"

using namespace wolff;

namespace {

// Minimal XML well-formedness scan: tags balance, attributes are quoted,
// no stray '<' or '>'. Enough to catch structural emitter bugs.
bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '>') return false;
        if (c != '<') {
            ++i;
            continue;
        }
        std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;  // declaration/comment
        bool closing = tag[0] == '/';
        bool self_closing = tag.back() == '/';
        std::string body = tag.substr(closing ? 1 : 0);
        if (self_closing) body.pop_back();
        std::string name = body.substr(0, body.find_first_of(" \t\n"));
        if (name.empty()) return false;
        // Attribute values must be double-quoted and paired.
        int quotes = 0;
        for (char b : body) quotes += b == '"';
        if (quotes % 2 != 0) return false;
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
    }
    return stack.empty();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("packing JSON round-trips byte-identically") {
    Packing p = pack_greedy(StopRule::after_discs(20), 0.9, 1e-4);
    std::string first = packing_to_json(p);
    Packing loaded = packing_from_json(first);
    std::string second = packing_to_json(loaded);
    CHECK(first == second);
    CHECK(loaded.residual_area() == p.residual_area());
    CHECK(loaded.shrink() == p.shrink());
    REQUIRE(loaded.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(loaded.discs()[i].center == p.discs()[i].center);
        CHECK(loaded.discs()[i].radius == p.discs()[i].radius);
    }
}

TEST_CASE("measure JSON round-trips byte-identically, CSV lists every atom") {
    Packing p = pack_greedy(StopRule::after_discs(15), 0.9, 1e-4);
    AnnihilatingMeasure m = wolff_measure(p);
    std::string first = measure_to_json(m);
    AnnihilatingMeasure loaded = measure_from_json(first);
    CHECK(measure_to_json(loaded) == first);

    std::string csv = measure_to_csv(m);
    CHECK(count_occurrences(csv, "\n") == m.atoms.size() + 1);  // header + rows
    CHECK(csv.rfind("n,re,im,weight\n", 0) == 0);
}

TEST_CASE("17-digit decimal serialization is lossless") {
    for (double v : {std::numbers::pi, 1.0 / 3.0, 0.1, 1e-300, 123456.789e20,
                     -std::numbers::sqrt2}) {
        std::string s = format_real(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("malformed JSON, schema violations and invariant violations are distinct") {
    CHECK_THROWS_AS(packing_from_json("not json at all {"), ParseError);
    CHECK_THROWS_AS(packing_from_json("{\"shrink\": 0.9}"), SchemaError);
    CHECK_THROWS_AS(packing_from_json(
                        "{\"shrink\": 0.9, \"tolerance\": 1e-6, "
                        "\"discs\": [{\"re\": 0.0, \"im\": 0.0}], "
                        "\"residual_area\": 3.0}"),
                    SchemaError);

    // Overlapping discs: the error names the offending pair.
    std::string overlapping =
        "{\"shrink\": 0.9, \"tolerance\": 1e-6, \"discs\": ["
        "{\"re\": 0.0, \"im\": 0.0, \"r\": 0.4},"
        "{\"re\": 0.1, \"im\": 0.0, \"r\": 0.4}],"
        "\"residual_area\": 2.0}";
    try {
        packing_from_json(overlapping);
        FAIL("expected InvariantError");
    } catch (const InvariantError& e) {
        std::string what = e.what();
        CHECK(what.find("0") != std::string::npos);
        CHECK(what.find("1") != std::string::npos);
        CHECK(what.find("overlap") != std::string::npos);
    }

    // Residual field inconsistent with the disc list.
    std::string bad_ledger =
        "{\"shrink\": 0.9, \"tolerance\": 1e-6, \"discs\": ["
        "{\"re\": 0.0, \"im\": 0.0, \"r\": 0.4}],"
        "\"residual_area\": 1.0}";
    CHECK_THROWS_AS(packing_from_json(bad_ledger), InvariantError);
}

TEST_CASE("measure loader: leading-atom and ledger checks") {
    Packing p = Packing::from_discs({Disc{{0.3, 0.0}, 0.2}}, 0.9, 1e-6);
    AnnihilatingMeasure m = wolff_measure(p);
    std::string good = measure_to_json(m);

    // Tampered leading atom: rejected in every mode.
    std::string bad_head = good;
    auto pos = bad_head.find("-3.14");
    REQUIRE(pos != std::string::npos);
    bad_head.replace(pos, 5, "-3.15");
    CHECK_THROWS_AS(measure_from_json(bad_head), InvariantError);
    CHECK_THROWS_AS(measure_from_json(bad_head, MeasureValidation::structural),
                    InvariantError);

    // Tampered disc weight: full validation rejects (ledger), structural
    // validation admits it so verification can flag the broken identity.
    AnnihilatingMeasure tampered = m;
    tampered.atoms[1].weight *= 1.01;
    std::string bad_weight = measure_to_json(tampered);
    CHECK_THROWS_AS(measure_from_json(bad_weight), InvariantError);
    CHECK_NOTHROW(measure_from_json(bad_weight, MeasureValidation::structural));
}

TEST_CASE("points CSV accepts pairs, bare reals and a header") {
    auto pts = points_from_csv("re,im\n0.5,0.25\n-0.125\n0,1\n");
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == Complex(0.5, 0.25));
    CHECK(pts[1] == Complex(-0.125, 0.0));
    CHECK(pts[2] == Complex(0.0, 1.0));
    CHECK_THROWS_AS(points_from_csv("0.5,0.25\nnot a number\n"), ParseError);
}

TEST_CASE("packing SVG: unit circle plus one circle per disc, well-formed") {
    RenderSpec spec;
    spec.size_px = 400;

    Packing empty(0.9, 1e-6);
    std::string svg_empty = render_packing(empty, spec);
    CHECK(count_occurrences(svg_empty, "<circle") == 1);
    CHECK(xml_well_formed(svg_empty));

    Packing p = pack_greedy(StopRule::after_discs(3), 0.9, 1e-4);
    std::string svg3 = render_packing(p, spec);
    CHECK(count_occurrences(svg3, "<circle") == 4);
    CHECK(xml_well_formed(svg3));

    Packing desk = pack_greedy(StopRule::after_discs(60), 0.9, 1e-4);
    spec.color_by_index = true;
    spec.annotate_residual = true;
    std::string svg_desk = render_packing(desk, spec);
    CHECK(count_occurrences(svg_desk, "<circle") == desk.size() + 1);
    CHECK(xml_well_formed(svg_desk));

    // Deterministic bytes.
    CHECK(render_packing(desk, spec) == svg_desk);

    RenderSpec tiny;
    tiny.size_px = 32;
    CHECK_THROWS_AS(render_packing(p, tiny), std::invalid_argument);
}

TEST_CASE("convergence plot: slope annotation and input validation") {
    // Hand check on three points: value = n^-2 exactly, slope -2.
    std::vector<SeriesPoint> series = {{1.0, 1.0}, {10.0, 0.01}, {100.0, 0.0001}};
    CHECK(fit_loglog_slope(series) == doctest::Approx(-2.0).epsilon(1e-12));

    RenderSpec spec;
    spec.size_px = 400;
    std::string svg = render_convergence(series, spec);
    CHECK(xml_well_formed(svg));
    CHECK(svg.find("slope=-2.00") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    std::string single = render_convergence({{5.0, 0.5}}, spec);
    CHECK(xml_well_formed(single));
    CHECK(single.find("<circle") != std::string::npos);  // degenerate marker

    CHECK_THROWS_AS(render_convergence({}, spec), std::invalid_argument);
    CHECK_THROWS_AS(render_convergence({{2.0, 1.0}, {1.0, 0.5}}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(render_convergence({{1.0, 1.0}, {1.0, 0.5}}, spec),
                    std::invalid_argument);
}

TEST_CASE("series CSV round-trip") {
    std::vector<SeriesPoint> series = {{1.0, 0.5}, {2.0, 0.25}, {3.0, 0.125}};
    std::string csv = series_to_csv(series);
    auto loaded = series_from_csv(csv);
    REQUIRE(loaded.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(loaded[i].n == series[i].n);
        CHECK(loaded[i].value == series[i].value);
    }
}

TEST_CASE("loaded packings re-validate module invariants") {
    Packing p = pack_greedy(StopRule::after_discs(12), 0.9, 1e-4);
    Packing loaded = packing_from_json(packing_to_json(p));
    const auto& discs = loaded.discs();
    for (std::size_t i = 0; i < discs.size(); ++i) {
        CHECK(std::abs(discs[i].center) + discs[i].radius < 1.0);
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            CHECK(std::abs(discs[i].center - discs[j].center) >
                  discs[i].radius + discs[j].radius);
        }
    }
}

TEST_CASE("verification reports serialize to JSON and CSV") {
    std::vector<VerificationReport> reports;
    reports.push_back(make_report(IdentityKind::moment, "k=0", 10, 1e-13, 0.0));
    reports.push_back(make_report(IdentityKind::cauchy, "z=2", 10, 0.001, 0.01));
    std::string json = reports_to_json(reports);
    CHECK(json.find("\"identity\": \"moment\"") != std::string::npos);
    CHECK(json.find("\"pass\": true") != std::string::npos);
    std::string csv = reports_to_csv(reports);
    CHECK(csv.rfind("identity,", 0) == 0);
    CHECK(count_occurrences(csv, "\n") == 3);
}
