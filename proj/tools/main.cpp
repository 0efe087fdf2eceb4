// smallpoly command line: construct, measure, optimize, table, render.
//
// Exit codes: 0 ok, 2 usage or precondition error, 3 construction failure,
// 4 solver non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smallpoly/analysis.hpp"
#include "smallpoly/constructions.hpp"
#include "smallpoly/document.hpp"
#include "smallpoly/optimize.hpp"
#include "smallpoly/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitNoConvergence = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void print_summary(const std::string& family, int n, double L, double W, double diam) {
    std::printf("%s %d %.10f %.10f %.10f\n", family.c_str(), n, L, W, diam);
}

int run_construct(const std::string& family, int n, int m, const std::string& out,
                  const std::string& format) {
    smallpoly::ConstructionReport report;
    if (family == "regular") {
        report = smallpoly::regular_small_ngon(n);
    } else if (family == "reinhardt") {
        if (m <= 0) throw std::domain_error("reinhardt requires --m");
        report = smallpoly::reinhardt_polygon(m, n);
    } else if (family == "dn") {
        report = smallpoly::build_dn(n);
    } else {
        throw std::domain_error("unknown family '" + family + "'");
    }
    if (!out.empty()) {
        const smallpoly::PolygonDocument doc = smallpoly::make_document(report);
        write_file(out, format == "csv" ? smallpoly::to_vertex_csv(doc.vertices)
                                        : smallpoly::to_json_string(doc));
    }
    print_summary(smallpoly::to_string(report.family), static_cast<int>(report.polygon.size()),
                  report.metrics.perimeter, report.metrics.width, report.metrics.diameter);
    return kExitOk;
}

int run_measure(const std::string& path) {
    const std::string text = read_file(path);
    std::string family = "polygon";
    smallpoly::Polygon poly;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const smallpoly::PolygonDocument doc = smallpoly::parse_document_json(text);
        family = doc.family;
        poly.vertices = doc.vertices;
    } else {
        poly.vertices = smallpoly::parse_vertex_csv(text);
    }
    const smallpoly::Metrics metrics = smallpoly::measure(poly);
    print_summary(family, static_cast<int>(poly.size()), metrics.perimeter, metrics.width,
                  metrics.diameter);
    return kExitOk;
}

int run_optimize(const std::string& problem, int n, const std::string& out,
                 std::uint64_t seed) {
    smallpoly::SolverOptions opt;
    opt.seed = seed;
    smallpoly::OptimizationResult result;
    if (problem == "dn-star") {
        result = smallpoly::solve_dn_star(n, opt);
    } else if (problem == "bn-star") {
        result = smallpoly::solve_bn_star(n, opt);
    } else {
        throw std::domain_error("unknown problem '" + problem + "'");
    }
    const std::string json = smallpoly::to_json_string(result, seed);
    if (out.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        write_file(out, json);
        std::printf("%s %d %.10f closure=%.3e %s\n", smallpoly::to_string(result.problem),
                    result.n, result.objective, result.residual_closure,
                    result.converged ? "converged" : "not-converged");
    }
    return result.converged ? kExitOk : kExitNoConvergence;
}

std::string format_cell(double value, smallpoly::ColumnKind kind) {
    char buf[40];
    switch (kind) {
        case smallpoly::ColumnKind::Integer:
            std::snprintf(buf, sizeof buf, "%d", static_cast<int>(value));
            break;
        case smallpoly::ColumnKind::Ratio:
            std::snprintf(buf, sizeof buf, "%.4f", value);
            break;
        default:
            std::snprintf(buf, sizeof buf, "%.10f", value);
    }
    return buf;
}

int run_table(int which, bool csv) {
    const smallpoly::TableData table = smallpoly::make_table(which);
    const std::size_t ncols = table.columns.size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : table.rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < ncols; ++c) {
            line.push_back(format_cell(row[c], table.columns[c].kind));
        }
        cells.push_back(std::move(line));
    }
    if (csv) {
        for (std::size_t c = 0; c < ncols; ++c) {
            std::printf("%s%s", table.columns[c].header.c_str(), c + 1 < ncols ? "," : "\n");
        }
        for (const auto& line : cells) {
            for (std::size_t c = 0; c < ncols; ++c) {
                std::printf("%s%s", line[c].c_str(), c + 1 < ncols ? "," : "\n");
            }
        }
        return kExitOk;
    }
    std::vector<std::size_t> widths(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
        widths[c] = table.columns[c].header.size();
        for (const auto& line : cells) widths[c] = std::max(widths[c], line[c].size());
    }
    std::printf("# %s\n", table.title.c_str());
    for (std::size_t c = 0; c < ncols; ++c) {
        std::printf("%*s%s", static_cast<int>(widths[c]), table.columns[c].header.c_str(),
                    c + 1 < ncols ? "  " : "\n");
    }
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < ncols; ++c) {
            std::printf("%*s%s", static_cast<int>(widths[c]), line[c].c_str(),
                        c + 1 < ncols ? "  " : "\n");
        }
    }
    return kExitOk;
}

int run_render(const std::string& in, const std::string& out) {
    const std::string text = read_file(in);
    const smallpoly::PolygonDocument doc = smallpoly::parse_document_json(text);
    if (doc.vertices.size() < 3) throw std::runtime_error("document has too few vertices");
    std::ostringstream svg;
    smallpoly::write_svg(doc, svg);
    write_file(out, svg.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex small polygon constructions, measures, and optimization"};
    app.require_subcommand(1);

    std::string family, problem, out, in_path, format = "json";
    int n = 0, m = 0, which = 0;
    std::uint64_t seed = 0;
    bool csv = false;

    auto* construct = app.add_subcommand("construct", "build a polygon family member");
    construct->add_option("--family", family, "regular | reinhardt | dn")->required();
    construct->add_option("--n", n, "vertex count")->required();
    construct->add_option("--m", m, "odd base gon for reinhardt");
    construct->add_option("--out", out, "output path");
    construct->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* measure = app.add_subcommand("measure", "recompute metrics from a polygon file");
    measure->add_option("input", in_path, "polygon document (json) or vertex csv")->required();

    auto* optimize = app.add_subcommand("optimize", "maximize perimeter over turning angles");
    optimize->add_option("--problem", problem, "dn-star | bn-star")->required();
    optimize->add_option("--n", n, "vertex count")->required();
    optimize->add_option("--out", out, "output path for the result json");
    optimize->add_option("--seed", seed, "multistart seed (default 0)");

    auto* table = app.add_subcommand("table", "print a reference table");
    table->add_option("which", which, "1 perimeters | 2 widths | 3 optimized | 4 angles")
        ->required();
    table->add_flag("--csv", csv, "emit csv instead of aligned text");

    auto* render = app.add_subcommand("render", "render a polygon document to svg");
    render->add_option("input", in_path, "polygon document (json)")->required();
    render->add_option("--out", out, "output svg path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*construct) return run_construct(family, n, m, out, format);
        if (*measure) return run_measure(in_path);
        if (*optimize) return run_optimize(problem, n, out, seed);
        if (*table) return run_table(which, csv);
        if (*render) return run_render(in_path, out);
    } catch (const smallpoly::ConstructionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConstruction;
    } catch (const smallpoly::InfeasibleAnglesError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConstruction;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
