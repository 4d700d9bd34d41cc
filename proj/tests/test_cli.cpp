#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "loewner/io.hpp"
#include "loewner/loops.hpp"

using namespace loewner;
using nlohmann::json;

namespace {

const double PI = 3.14159265358979323846;

std::string work_dir()
{
    static std::string dir = [] {
        auto p = std::filesystem::temp_directory_path()
                 / ("lpot_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p.string();
    }();
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    const char* bin = std::getenv("LPOT_BIN");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    const std::string cap = work_dir() + "/cap" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(bin) + " " + args + " > " + cap + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(cap);
    return r;
}

std::string write_fixture(const std::string& name, const std::string& text)
{
    const std::string path = work_dir() + "/" + name;
    write_text_file(path, text);
    return path;
}

std::string circle_config()
{
    static std::string path = write_fixture("circle.json", config_to_json(make_circle_pair(0.8)));
    return path;
}

std::string bumpy_config()
{
    static std::string path = [] {
        std::vector<cpx> c(9, cpx(0.0));
        c[5] = 1.0;
        c[2] = 0.025;
        c[8] = 0.025;
        TwoLoopConfig cfg(Loop::circle(cpx(0.0), std::exp(-2.0 * PI)), Loop(c));
        return write_fixture("bumpy.json", config_to_json(cfg));
    }();
    return path;
}

// parsed CSV column, skipping the header row
std::vector<std::vector<double>> parse_csv(const std::string& text)
{
    std::vector<std::vector<double>> rows;
    std::size_t pos = text.find('\n');
    REQUIRE(pos != std::string::npos);
    while (pos + 1 < text.size()) {
        const std::size_t end = text.find('\n', pos + 1);
        REQUIRE(end != std::string::npos);
        std::string line = text.substr(pos + 1, end - pos - 1);
        std::vector<double> row;
        std::size_t c = 0;
        while (c <= line.size()) {
            const std::size_t comma = line.find(',', c);
            const std::string cell =
                line.substr(c, comma == std::string::npos ? std::string::npos : comma - c);
            row.push_back(std::stod(cell));
            if (comma == std::string::npos) break;
            c = comma + 1;
        }
        rows.push_back(row);
        pos = end;
    }
    return rows;
}

}  // namespace

TEST_CASE("uniformize echoes the modulus and reports the residual")
{
    RunResult r = run_cli("uniformize " + circle_config());
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["tau"].get<double>() - 0.8) < 1e-9);
    CHECK(j["boundary_residual"].get<double>() < 1e-8);

    RunResult rb = run_cli("uniformize " + bumpy_config() + " --tol 1e-8");
    REQUIRE(rb.code == 0);
    json jb = json::parse(rb.out);
    CHECK(jb["boundary_residual"].get<double>() < 1e-8);
    CHECK(std::isfinite(jb["tau"].get<double>()));
    CHECK(jb["f1"]["kind"] == "interior-disk");
    CHECK(jb["fA"]["kind"] == "annulus");
    CHECK(jb["f2"]["kind"] == "exterior-disk");
}

TEST_CASE("bad inputs exit with code 2 and a message")
{
    const std::string bad = write_fixture("bad.json", "{nope\n");
    RunResult r = run_cli("uniformize " + bad);
    CHECK(r.code == 2);
    CHECK(r.out.find("malformed") != std::string::npos);

    CHECK(run_cli("potential " + work_dir() + "/does_not_exist.json").code == 2);
    CHECK(run_cli("scan-tau circles --range 5:1").code == 2);
    CHECK(run_cli("scan-tau circles --range nonsense").code == 2);
    CHECK(run_cli("scan-tau circles --grid 1").code == 2);
    CHECK(run_cli("scan-tau criterion").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);

    const std::string bogus = write_fixture("bogus_triv.json", "{\"kind\":\"bogus\",\"c\":1.0}\n");
    CHECK(run_cli("criterion " + bogus).code == 2);
    const std::string zero = write_fixture("zero_triv.json", "{\"kind\":\"zeta\",\"c\":0.0}\n");
    CHECK(run_cli("criterion " + zero).code == 2);

    // two unit-size circles side by side intersect: geometric rejection
    std::string overlap = write_fixture(
        "overlap.json",
        "{\"gamma1\": {\"coeffs\": [[0,0],[0,0],[1,0]], \"degree\": 1},"
        " \"gamma2\": {\"coeffs\": [[0,0],[0.5,0],[1.2,0]], \"degree\": 1}}\n");
    RunResult ro = run_cli("uniformize " + overlap);
    CHECK(ro.code == 2);
    CHECK(!ro.out.empty());
}

TEST_CASE("scan-tau circles normalizes at 1 and decreases")
{
    RunResult r = run_cli("scan-tau circles --range 0.5:1.5 --grid 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("tau,normalized_potential\n", 0) == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == 1.0);
    CHECK(rows[1][1] == 0.0);

    RunResult rs = run_cli("scan-tau circles --range 0.05:5 --grid 25");
    REQUIRE(rs.code == 0);
    auto scan = parse_csv(rs.out);
    REQUIRE(scan.size() == 25);
    for (std::size_t i = 1; i < scan.size(); ++i) {
        CHECK(scan[i][0] > scan[i - 1][0]);
        CHECK(scan[i][1] < scan[i - 1][1]);
    }
}

TEST_CASE("scan-tau criterion emits the q parametrized curve")
{
    const std::string triv = write_fixture(
        "char_triv.json", "{\"kind\": \"characters\", \"c\": 0.3, \"weights\": [[0.005, 1]]}\n");
    RunResult r = run_cli("scan-tau criterion " + triv + " --range 0.5:6 --grid 23");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("q,log_g\n", 0) == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 23);
    std::size_t imin = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i][0] > 0.0);
        CHECK(rows[i][0] < 1.0);
        if (i > 0) CHECK(rows[i][0] > rows[i - 1][0]);  // q increases with tau
        if (rows[i][1] < rows[imin][1]) imin = i;
    }
    // the documented pair has its minimum strictly inside the scan
    CHECK(imin > 0);
    CHECK(imin + 1 < rows.size());
}

TEST_CASE("potential reports both routes and the grunsky gap")
{
    RunResult r = run_cli("potential " + circle_config() + " --route both");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["difference"].get<double>()) < 1e-10);
    CHECK(std::abs(j["preschwarzian"]["total"].get<double>()
                   - j["lk"]["total"].get<double>())
          < 1e-10);
    CHECK(std::abs(j["grunsky_gap"].get<double>()) < 1e-8);

    RunResult rb = run_cli("potential " + bumpy_config());
    REQUIRE(rb.code == 0);
    json jb = json::parse(rb.out);
    CHECK(jb["grunsky_gap"].get<double>() < 1e-6);
    CHECK(jb["grunsky_gap"].get<double>() > -1e-8);
    CHECK(std::abs(jb["difference"].get<double>()) < 1e-10);
    const json& p = jb["preschwarzian"];
    CHECK(std::abs(p["circle_term"].get<double>() + (p["I1"].get<double>()
                   + p["IA"].get<double>() + p["I2"].get<double>()) / (12.0 * PI)
                   - p["log_ratio_term"].get<double>() / 3.0 - p["total"].get<double>())
          < 1e-14);

    RunResult rone = run_cli("potential " + circle_config() + " --route lk");
    REQUIRE(rone.code == 0);
    json jo = json::parse(rone.out);
    CHECK(!jo.contains("preschwarzian"));
    CHECK(!jo.contains("difference"));
}

TEST_CASE("seeded transformations leave the potential invariant")
{
    RunResult base = run_cli("potential " + circle_config());
    REQUIRE(base.code == 0);
    const double t0 = json::parse(base.out)["preschwarzian"]["total"].get<double>();
    for (unsigned seed : {3u, 11u}) {
        RunResult r = run_cli("potential " + circle_config() + " --seed "
                              + std::to_string(seed));
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(std::abs(j["preschwarzian"]["total"].get<double>() - t0) < 1e-4);
    }
}

TEST_CASE("identical invocations give byte-identical output")
{
    const std::string o1 = work_dir() + "/det1.csv", o2 = work_dir() + "/det2.csv";
    REQUIRE(run_cli("scan-tau circles --grid 40 --out " + o1).code == 0);
    REQUIRE(run_cli("scan-tau circles --grid 40 --out " + o2).code == 0);
    CHECK(read_text_file(o1) == read_text_file(o2));

    const std::string p1 = work_dir() + "/det1.json", p2 = work_dir() + "/det2.json";
    REQUIRE(run_cli("potential " + bumpy_config() + " --seed 7 --out " + p1).code == 0);
    REQUIRE(run_cli("potential " + bumpy_config() + " --seed 7 --out " + p2).code == 0);
    const std::string t1 = read_text_file(p1);
    CHECK(t1 == read_text_file(p2));
    CHECK(!t1.empty());
}

TEST_CASE("criterion command classifies trivializations")
{
    const std::string triv = write_fixture(
        "char_triv2.json", "{\"kind\": \"characters\", \"c\": 0.3, \"weights\": [[0.005, 1]]}\n");
    RunResult r = run_cli("criterion " + triv);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["classification"] == "interior-minimum");
    CHECK(j["kind"] == "characters");
    CHECK(std::abs(j["tau_star"].get<double>() - 2.1488213160183252) < 1e-5);
    CHECK(j["scan"].size() == 64);

    const std::string zeta = write_fixture("zeta_triv.json", "{\"kind\":\"zeta\",\"c\":1.0}\n");
    RunResult rz = run_cli("criterion " + zeta + " --grid 32");
    REQUIRE(rz.code == 0);
    json jz = json::parse(rz.out);
    CHECK(jz["classification"] == "infimum-at-infinity");
    CHECK(jz["tau_star"].is_null());
    CHECK(jz["scan"].size() == 32);
}

TEST_CASE("variation-check pairs the documented bump with the Schwarzian")
{
    RunResult r = run_cli("variation-check " + bumpy_config());
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["rel_err"].get<double>() < 0.05);
    CHECK(std::abs(j["fd"].get<double>()) > 1e-6);
    CHECK(std::abs(j["rhs"].get<double>()) > 1e-6);
    CHECK(j["eps"].get<double>() == 1e-3);
    CHECK(j["bump"]["radius"].get<double>() == 0.5);
}
