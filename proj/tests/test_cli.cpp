#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mho/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = mho::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("mho_cli_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

const std::vector<std::string> kReferenceOrbit = {"--x0", "0.479", "0", "--p0", "0", "1.290805"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_CASE("identical invocations write byte-identical files") {
    TempDir dir;
    const std::vector<std::vector<std::string>> configs = {
        with({"orbit", "--periods", "2", "--samples", "50"}, kReferenceOrbit),
        {"segment", "--samples", "33"},
        {"spectrum", "--levels", "5"},
        {"density-compare", "--levels", "2", "--points", "40"},
        {"wavefunction", "--n", "2", "--space", "momentum", "--points", "30"},
        {"apsidal", "--energy", "1", "--sweep", "5"},
    };
    for (const auto& config : configs) {
        for (const std::string format : {"csv", "json"}) {
            CAPTURE(config.front());
            CAPTURE(format);
            const auto a = dir.path / ("a." + format), b = dir.path / ("b." + format);
            REQUIRE(run(with(config, {"--format", format, "--out", a.string()})).code == 0);
            REQUIRE(run(with(config, {"--format", format, "--out", b.string()})).code == 0);
            const std::string text = slurp(a);
            CHECK(!text.empty());
            CHECK(text == slurp(b));
            CHECK(text.find('\r') == std::string::npos);
        }
    }
}

TEST_CASE("csv layout") {
    const auto r = run({"segment", "--samples", "5"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,x,p");
    CHECK(lines[1] == "0,-1,0");
    CHECK(lines[2] == "1,0,0.5");
    CHECK(lines[3] == "2,1,0");
    CHECK(lines[4] == "3,0,0.5");
    CHECK(lines[5] == "4,-1,0");
    CHECK(r.err.find("# period = 4.0") != std::string::npos);

    const auto classify = run(with({"classify"}, kReferenceOrbit));
    REQUIRE(classify.code == 0);
    const auto rows = split_lines(classify.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "energy,angular_momentum,lambda,type,r_min,r_max,r_minus");
    CHECK(rows[1].find(",annulus,") != std::string::npos);
    // 17 significant digits for doubles
    CHECK(rows[1].find("0.61829559499999998") != std::string::npos);
}

TEST_CASE("json schema") {
    const auto r = run({"spectrum", "--levels", "3", "--format", "json", "--hbar", "2"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc.contains("meta"));
    REQUIRE(doc.contains("data"));
    const auto& meta = doc["meta"];
    CHECK(meta["command"] == "spectrum");
    CHECK(meta["version"] == mho::cli::kSchemaVersion);
    CHECK(meta["params"]["c"] == 1.0);
    CHECK(meta["params"]["kappa2"] == 1.0);
    CHECK(meta["params"]["hbar"] == 2.0);
    CHECK(meta["tolerances"]["tol"] == 1e-12);
    REQUIRE(doc["data"].size() == 3);
    CHECK(doc["data"][0]["n"] == 1);
    const double e1_unit = 1.855757081489239;
    CHECK(doc["data"][0]["energy"].get<double>() == doctest::Approx(e1_unit * std::cbrt(4.0)).epsilon(1e-14));
    // Keys come out in column order.
    CHECK(doc["data"][0].begin().key() == "n");
}

TEST_CASE("natural units and tolerance override") {
    const auto natural = run({"spectrum", "--levels", "1", "--natural"});
    const auto unit = run({"spectrum", "--levels", "1"});
    REQUIRE(natural.code == 0);
    CHECK(natural.out == unit.out);
    CHECK(run({"spectrum", "--natural", "--c", "2"}).code == 2);

    const auto doc = json::parse(run({"virial", "--levels", "1", "--format", "json", "--tol", "1e-6"}).out);
    CHECK(doc["meta"]["tolerances"]["tol"] == 1e-6);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"spectrum", "--bogus"}).code == 2);
    CHECK(run({"spectrum", "--levels", "0"}).code == 2);
    CHECK(run({"spectrum", "--c", "-1"}).code == 2);
    CHECK(run({"spectrum", "--format", "xml"}).code == 2);
    CHECK(run({"spectrum", "--tol", "0"}).code == 2);
    CHECK(run({"orbit", "--energy", "1"}).code == 2);
    CHECK(run({"classify", "--energy", "1", "--lambda", "1.5"}).code == 2);
    CHECK(run({"trajectory", "--energy", "1", "--lambda", "0"}).code == 2);
    CHECK(run({"spectrum", "--gnuplot"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    // Numerical failures: an unattainable ODE tolerance and a zero-momentum start.
    const auto strict = run(with({"orbit", "--tol", "1e-30", "--samples", "2"}, kReferenceOrbit));
    CHECK(strict.code == 3);
    CHECK(strict.err.find("numerical failure") != std::string::npos);
    CHECK(run({"orbit", "--x0", "1", "0", "--p0", "0", "0"}).code != 0);
}

TEST_CASE("command results") {
    const auto orbit = run(with({"orbit", "--periods", "1", "--samples", "3", "--format", "json"}, kReferenceOrbit));
    REQUIRE(orbit.code == 0);
    const auto doc = json::parse(orbit.out);
    const auto& s = doc["meta"]["summary"];
    CHECK(s["type"] == "annulus");
    CHECK(s["radial_period"].get<double>() == doctest::Approx(3.45013745976585).epsilon(1e-12));
    CHECK(s["max_energy_drift"].get<double>() <= 1e-10);
    CHECK(doc["data"].back()["r"].get<double>() == doctest::Approx(0.479).epsilon(1e-9));

    const auto apsidal = json::parse(run({"apsidal", "--x0", "0.479", "0", "--p0", "0", "1.290805", "--format", "json",
                                          "--periodicity-tol", "1e-5"})
                                         .out);
    CHECK(apsidal["data"][0]["numerator"] == 13);
    CHECK(apsidal["data"][0]["denominator"] == 23);

    const auto traj = json::parse(
        run({"trajectory", "--energy", "1", "--lambda", "0.5", "--points", "5", "--method", "quadrature", "--format",
             "json"})
            .out);
    CHECK(traj["data"].size() == 5);
    CHECK(traj["data"][0]["phi"] == 0.0);

    const auto virial = json::parse(run({"virial", "--levels", "2", "--format", "json"}).out);
    REQUIRE(virial["data"].size() == 2);
    CHECK(virial["data"][0]["kinetic_over_energy"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(virial["data"][1]["n"] == 2);

    const auto wf = json::parse(run({"wavefunction", "--points", "10", "--format", "json"}).out);
    CHECK(wf["data"].size() == 10);
}

TEST_CASE("gnuplot companion script") {
    TempDir dir;
    const auto data = dir.path / "segment.csv";
    REQUIRE(run({"segment", "--out", data.string(), "--gnuplot"}).code == 0);
    const auto script = dir.path / "segment.gp";
    REQUIRE(fs::exists(script));
    const std::string text = slurp(script);
    CHECK(text.find("'segment.csv'") != std::string::npos);
    CHECK(text.find("set datafile separator ','") != std::string::npos);
    CHECK(split_lines(slurp(data)).size() == 402);
}
