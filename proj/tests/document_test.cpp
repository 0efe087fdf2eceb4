#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "smallpoly/constructions.hpp"
#include "smallpoly/document.hpp"
#include "smallpoly/svg.hpp"

using namespace smallpoly;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("polygon documents round-trip byte-identically") {
    for (const auto& report : {build_dn(16), reinhardt_polygon(3, 12), regular_small_ngon(9)}) {
        const PolygonDocument doc = make_document(report);
        const std::string once = to_json_string(doc);
        const PolygonDocument parsed = parse_document_json(once);
        const std::string twice = to_json_string(parsed);
        CHECK(once == twice);
    }
}

TEST_CASE("json vertices keep full double precision") {
    const PolygonDocument doc = make_document(build_dn(32));
    const PolygonDocument parsed = parse_document_json(to_json_string(doc));
    REQUIRE(parsed.vertices.size() == doc.vertices.size());
    for (std::size_t i = 0; i < doc.vertices.size(); ++i) {
        CHECK(parsed.vertices[i].x == doc.vertices[i].x);
        CHECK(parsed.vertices[i].y == doc.vertices[i].y);
    }
    CHECK(parsed.perimeter == doc.perimeter);
    CHECK(parsed.graph_edges == doc.graph_edges);
}

TEST_CASE("csv vertices keep full double precision") {
    const auto verts = build_dn(16).polygon.vertices;
    const auto parsed = parse_vertex_csv(to_vertex_csv(verts));
    REQUIRE(parsed.size() == verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        CHECK(parsed[i].x == verts[i].x);
        CHECK(parsed[i].y == verts[i].y);
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_document_json(""), std::runtime_error);
    CHECK_THROWS_AS(parse_document_json("{\"family\": \"dn\"}"), std::runtime_error);
    CHECK_THROWS_AS(parse_document_json("not json"), std::runtime_error);
    CHECK_THROWS_AS(parse_vertex_csv("only-one-column\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_vertex_csv(""), std::runtime_error);
}

TEST_CASE("optimization results serialize with full fields") {
    const auto r = solve_bn_star(8);
    const std::string json = to_json_string(r, 0);
    CHECK(json.find("\"problem\": \"bn-star\"") != std::string::npos);
    CHECK(json.find("\"converged\": true") != std::string::npos);
    CHECK(json.find("\"objective\": 3.12114713") != std::string::npos);
}

TEST_CASE("svg renders dashed boundary and solid graph edges") {
    const PolygonDocument doc = make_document(build_dn(16));
    std::ostringstream os;
    write_svg(doc, os);
    const std::string svg = os.str();
    CHECK(count_occurrences(svg, "class=\"boundary\"") == 16);
    CHECK(count_occurrences(svg, "class=\"diameter\"") == 16);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("svg of the regular small square shows its two diagonals") {
    const PolygonDocument doc = make_document(regular_small_ngon(4));
    std::ostringstream os;
    write_svg(doc, os);
    CHECK(count_occurrences(os.str(), "class=\"diameter\"") == 2);
    CHECK(count_occurrences(os.str(), "class=\"boundary\"") == 4);
}
