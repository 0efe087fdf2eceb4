// End-to-end checks of the command line binary. Each case shells out to the
// built executable and inspects exit codes, stdout, and produced files.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using Catch::Approx;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "smallpoly_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_file = scratch_dir() / "stdout.txt";
    const std::string cmd = std::string(SMALLPOLY_CLI_PATH) + " " + args + " > " +
                            out_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    std::string w;
    while (is >> w) t.push_back(w);
    return t;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("construct prints the summary metrics") {
    const RunResult r = run_cli("construct --family dn --n 16");
    REQUIRE(r.exit_code == 0);
    const auto t = tokens(r.out);
    REQUIRE(t.size() == 5);
    CHECK(t[0] == "dn");
    CHECK(t[1] == "16");
    CHECK(std::stod(t[2]) == Approx(3.136548).margin(5e-7));
    CHECK(std::stod(t[3]) == Approx(0.995107).margin(5e-7));
    CHECK(std::stod(t[4]) == Approx(1.0).margin(1e-12));
}

TEST_CASE("construct handles the reinhardt family") {
    const RunResult r = run_cli("construct --family reinhardt --m 3 --n 6");
    REQUIRE(r.exit_code == 0);
    const auto t = tokens(r.out);
    REQUIRE(t.size() == 5);
    CHECK(std::stod(t[2]) == Approx(3.105829).margin(5e-7));
}

TEST_CASE("construct rejects invalid vertex counts") {
    CHECK(run_cli("construct --family dn --n 12").exit_code == 2);
    CHECK(run_cli("construct --family regular --n 2").exit_code == 2);
    CHECK(run_cli("construct --family reinhardt --m 4 --n 8").exit_code == 2);
    CHECK(run_cli("construct --family nope --n 8").exit_code == 2);
}

TEST_CASE("construct output is deterministic and re-measures identically") {
    const fs::path a = scratch_dir() / "dn16_a.json";
    const fs::path b = scratch_dir() / "dn16_b.json";
    const RunResult ra = run_cli("construct --family dn --n 16 --out " + a.string());
    const RunResult rb = run_cli("construct --family dn --n 16 --out " + b.string());
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);
    CHECK(read_file(a) == read_file(b));

    const RunResult m = run_cli("measure " + a.string());
    REQUIRE(m.exit_code == 0);
    const auto t_construct = tokens(ra.out);
    const auto t_measure = tokens(m.out);
    REQUIRE(t_measure.size() == 5);
    for (int i : {2, 3, 4}) {
        CHECK(std::abs(std::stod(t_construct[i]) - std::stod(t_measure[i])) <= 1e-12);
    }
}

TEST_CASE("csv output feeds measure") {
    const fs::path p = scratch_dir() / "r36.csv";
    const RunResult c =
        run_cli("construct --family reinhardt --m 3 --n 6 --format csv --out " + p.string());
    REQUIRE(c.exit_code == 0);
    const RunResult m = run_cli("measure " + p.string());
    REQUIRE(m.exit_code == 0);
    const auto t = tokens(m.out);
    CHECK(t[0] == "polygon");
    CHECK(std::stod(t[2]) == Approx(3.105829).margin(5e-7));
}

TEST_CASE("optimize writes a result document and converges") {
    const fs::path p = scratch_dir() / "dn16_star.json";
    const RunResult r = run_cli("optimize --problem dn-star --n 16 --out " + p.string());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(p));
    CHECK(j.at("objective").get<double>() == Approx(3.1365477165).margin(1e-8));
    CHECK(j.at("converged").get<bool>());
    CHECK(j.at("alphas").size() == 6);
    CHECK(j.at("residual_closure").get<double>() <= 1e-10);
}

TEST_CASE("optimize bn-star matches the octagon value") {
    const RunResult r = run_cli("optimize --problem bn-star --n 8");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("objective").get<double>() == Approx(3.1211471340).margin(1e-8));
}

TEST_CASE("optimize rejects out-of-domain n") {
    CHECK(run_cli("optimize --problem dn-star --n 8").exit_code == 2);
    CHECK(run_cli("optimize --problem bn-star --n 6").exit_code == 2);
}

TEST_CASE("optimize output is deterministic for a fixed seed") {
    const fs::path a = scratch_dir() / "opt_a.json";
    const fs::path b = scratch_dir() / "opt_b.json";
    REQUIRE(run_cli("optimize --problem bn-star --n 16 --seed 3 --out " + a.string())
                .exit_code == 0);
    REQUIRE(run_cli("optimize --problem bn-star --n 16 --seed 3 --out " + b.string())
                .exit_code == 0);
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("table one prints the documented row") {
    const RunResult r = run_cli("table 1");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    bool found = false;
    while (std::getline(is, line)) {
        const auto t = tokens(line);
        if (t.size() == 6 && t[0] == "16") {
            found = true;
            CHECK(t[1] == "3.1214451523");
            CHECK(t[2] == "3.1365427675");
            CHECK(t[3] == "3.1365475080");
            CHECK(t[4] == "3.1365484905");
            CHECK(t[5] == "0.8283");
        }
    }
    CHECK(found);
}

TEST_CASE("table two includes the n = 256 row") {
    const RunResult r = run_cli("table 2");
    REQUIRE(r.exit_code == 0);
    bool found = false;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        const auto t = tokens(line);
        if (!t.empty() && t[0] == "256") found = true;
    }
    CHECK(found);
}

TEST_CASE("table four emits six angle columns in csv mode") {
    const RunResult r = run_cli("table 4 --csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string header;
    REQUIRE(std::getline(is, header));
    int commas = 0;
    for (char ch : header) commas += ch == ',';
    CHECK(commas == 7);  // n, i, six angles
    std::string row;
    REQUIRE(std::getline(is, row));
    const auto first_angle = row.substr(row.find(',', row.find(',') + 1) + 1);
    CHECK(std::stod(first_angle) == Approx(0.198316).margin(1e-4));
}

TEST_CASE("table rejects unknown ids") {
    CHECK(run_cli("table 9").exit_code == 2);
}

TEST_CASE("render produces countable svg lines") {
    const fs::path doc = scratch_dir() / "dn16_render.json";
    REQUIRE(run_cli("construct --family dn --n 16 --out " + doc.string()).exit_code == 0);
    const fs::path svg = scratch_dir() / "dn16.svg";
    REQUIRE(run_cli("render " + doc.string() + " --out " + svg.string()).exit_code == 0);
    const std::string text = read_file(svg);
    int dashed = 0, solid = 0;
    for (std::size_t pos = text.find("<line"); pos != std::string::npos;
         pos = text.find("<line", pos + 1)) {
        const std::string slice = text.substr(pos, text.find('\n', pos) - pos);
        if (slice.find("boundary") != std::string::npos) ++dashed;
        if (slice.find("diameter") != std::string::npos) ++solid;
    }
    CHECK(dashed == 16);
    CHECK(solid == 16);
}

TEST_CASE("render of the regular square shows two diagonals") {
    const fs::path doc = scratch_dir() / "r4.json";
    REQUIRE(run_cli("construct --family regular --n 4 --out " + doc.string()).exit_code == 0);
    const fs::path svg = scratch_dir() / "r4.svg";
    REQUIRE(run_cli("render " + doc.string() + " --out " + svg.string()).exit_code == 0);
    const std::string text = read_file(svg);
    int solid = 0;
    for (std::size_t pos = text.find("class=\"diameter\""); pos != std::string::npos;
         pos = text.find("class=\"diameter\"", pos + 1)) {
        ++solid;
    }
    CHECK(solid == 2);
}

TEST_CASE("render rejects malformed input") {
    const fs::path empty = scratch_dir() / "empty.json";
    std::ofstream(empty).close();
    CHECK(run_cli("render " + empty.string() + " --out " +
                  (scratch_dir() / "x.svg").string())
              .exit_code == 2);
    CHECK(run_cli("render /nonexistent.json --out " + (scratch_dir() / "y.svg").string())
              .exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("construct --family dn").exit_code == 2);
    CHECK(run_cli("bogus-verb").exit_code == 2);
}
