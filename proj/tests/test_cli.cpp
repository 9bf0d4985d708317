#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lemniscate");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = lemniscate::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("lemniscate_cli_test_" + name);
}

}  // namespace

TEST_CASE("expand: classical Taylor with both methods") {
    const auto r = run({"expand", "--f", "exp(z)", "--points", "0:1", "--N", "6", "--mode", "taylor", "--method", "both"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mode"] == "taylor");
    CHECK(doc["N"] == 6);
    CHECK(doc["points"][0]["multiplicity"] == 1);
    double factorial = 1.0;
    for (int n = 0; n < 6; ++n) {
        if (n > 0) factorial *= n;
        CHECK(doc["a"][n][0][0][0].get<double>() == doctest::Approx(1.0 / factorial).epsilon(1e-12));
        CHECK(std::abs(doc["a"][n][0][0][1].get<double>()) < 1e-12);
    }
    CHECK(doc["cross_check_max_abs_diff"].get<double>() < 1e-12);
    CHECK(doc["region"]["kind"] == "lemniscate");
    CHECK(doc["region"]["r"] == "inf");
}

TEST_CASE("expand: Laurent termination") {
    const auto r = run({"expand", "--f", "1/((z-1)*(z+1))", "--points", "1:1,-1:1", "--mode", "laurent"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& b = doc["b"];
    CHECK(b[0][0][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b[0][1][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 1; n < b.size(); ++n) {
        for (const auto& focus : b[n]) CHECK(std::hypot(focus[0][0].get<double>(), focus[0][1].get<double>()) < 1e-11);
    }
    for (const auto& block : doc["a"]) {
        for (const auto& focus : block) CHECK(std::hypot(focus[0][0].get<double>(), focus[0][1].get<double>()) < 1e-11);
    }
    CHECK(doc["region"]["kind"] == "annulus");
}

TEST_CASE("expand: Taylor-Laurent tensors and split validation") {
    const auto r = run({"expand", "--f", "1/(z+1)", "--points", "1,-1", "--mode", "taylor-laurent", "--split", "1",
                        "--N", "3"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["split"] == 1);
    CHECK(doc["a"].size() == 3);
    CHECK(doc["b"][0].size() == 1);
    CHECK(doc["c"][0].size() == 1);
    CHECK(doc["region"]["kind"] == "taylor-laurent");

    CHECK(run({"expand", "--f", "1/(z+1)", "--points", "1,-1", "--mode", "taylor-laurent"}).code == 2);
    CHECK(run({"expand", "--f", "1/(z+1)", "--points", "1,-1", "--split", "1"}).code == 2);
    CHECK(run({"expand", "--f", "1/(z+1)", "--points", "1,-1", "--mode", "taylor-laurent", "--split", "2"}).code == 2);
}

TEST_CASE("expand: output is deterministic and --out silences stdout") {
    const std::vector<std::string> args = {"expand", "--f", "sin(z)/(z-4)", "--points", "1,-1,i", "--N", "4",
                                           "--method", "both"};
    const auto first = run(args);
    const auto second = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    const auto path = scratch("expand.json");
    auto with_out = args;
    with_out.push_back("--out");
    with_out.push_back(path.string());
    const auto r = run(with_out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(path) == first.out);
    std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
    const auto bad_points = run({"expand", "--f", "exp(z)", "--points", "1:x"});
    CHECK(bad_points.code == 2);
    CHECK_FALSE(bad_points.err.empty());
    CHECK(bad_points.out.empty());
    CHECK(run({"expand", "--f", "exp(", "--points", "0"}).code == 2);
    CHECK(run({"expand", "--f", "exp(z)"}).code == 2);
    CHECK(run({"expand", "--f", "exp(z)", "--points", "0", "--method", "simpson"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"expand", "--f", "exp(z)", "--points", "0", "--singularity", "1:pole:0"}).code == 2);
    // no circle about the centroid separates these foci from the poles
    CHECK(run({"expand", "--f", "1/((z-1)*(z+1))", "--points", "2,3*i", "--method", "cauchy"}).code == 3);
    CHECK(run({"expand", "--f", "exp(z)", "--points", "0", "--method", "cauchy", "--N", "40", "--max-nodes",
               "16"}).code == 4);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("region: CSV, sidecar and default resolution") {
    const auto csv = scratch("region.csv");
    const auto side = scratch("region.json");
    const auto r = run({"region", "--f", "1/(z-3)", "--points", "1,-1", "--out", csv.string(), "--sidecar",
                        side.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto rows = csv_rows(slurp(csv));
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"component_id", "x", "y"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 3);
        const double x = std::stod(rows[i][1]), y = std::stod(rows[i][2]);
        const double level = std::hypot(x - 1.0, y) * std::hypot(x + 1.0, y);
        CHECK(std::abs(level - 8.0) <= 0.05 * 8.0);
    }
    const auto doc = nlohmann::json::parse(slurp(side));
    CHECK(doc["r"].get<double>() == doctest::Approx(8.0));
    CHECK(doc["component_count"] == 1);
    CHECK(doc["resolution"] == 512);
    CHECK(doc.contains("r1"));
    CHECK(doc.contains("r2"));
    CHECK(doc.contains("delta"));
    std::filesystem::remove(csv);
    std::filesystem::remove(side);
}

TEST_CASE("region: annulus sidecar") {
    const auto side = scratch("annulus.json");
    const auto r = run({"region", "--f", "1/((z-1)*(z+1)*(z-3))", "--points", "1,-1", "--mode", "laurent",
                        "--delta", "0.1", "--resolution", "128", "--sidecar", side.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("component_id,x,y\n", 0) == 0);
    const auto doc = nlohmann::json::parse(slurp(side));
    CHECK(doc["r1"].get<double>() == doctest::Approx(8.0));
    CHECK(doc["r2"].get<double>() > 0.0);
    CHECK(doc["delta"].get<double>() == doctest::Approx(0.1));
    CHECK(doc["component_count"] == 3);
    std::filesystem::remove(side);
}

TEST_CASE("region: entire function needs a clip box") {
    const auto r = run({"region", "--f", "exp(z)", "--points", "0"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
    const auto clipped = run({"region", "--f", "exp(z)", "--points", "0", "--clip", "-2", "-2", "2", "2"});
    CHECK(clipped.code == 0);
    CHECK(clipped.out == "component_id,x,y\n");
}

TEST_CASE("converge: remainder table") {
    const auto r = run({"converge", "--f", "1/(3-z)", "--points", "1,-1", "--N", "8", "--probe", "0", "--probe", "1",
                        "--probe", "3*i"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 3 * 8);
    CHECK(rows[0] == std::vector<std::string>{"z_re", "z_im", "N", "abs_remainder", "predicted_ratio"});
    for (int N = 1; N <= 8; ++N) {
        const auto& inside = rows[N];
        CHECK(std::stoi(inside[2]) == N);
        CHECK(std::stod(inside[4]) == doctest::Approx(0.125));
        // r_N(0) = f(0) (P(0)/P(3))^N with P(0)/P(3) = -1/8
        CHECK(std::stod(inside[3]) == doctest::Approx(std::pow(0.125, N) / 3.0).epsilon(1e-8));

        const auto& focus = rows[8 + N];
        CHECK(std::stod(focus[3]) <= 1e-12);
        CHECK(std::stod(focus[4]) == 0.0);

        const auto& outside = rows[16 + N];
        CHECK(std::stod(outside[4]) > 1.0);
        if (N > 1) CHECK(std::stod(outside[3]) >= std::stod(rows[16 + N - 1][3]));
    }
    CHECK(run({"converge", "--f", "1/(3-z)", "--points", "1,-1"}).code == 2);
}

TEST_CASE("verify: pass and fail reports") {
    const auto good = run({"verify", "--f", "1/((z-1)*(z+1)^2)", "--points", "0:2,1:1", "--N", "7"});
    CHECK(good.code == 0);
    CHECK(good.out.find("verify: PASS") != std::string::npos);
    CHECK(good.out.find("FAIL") == std::string::npos);

    const auto laurent = run({"verify", "--f", "exp(z)/((z-1)*(z+1))", "--points", "1,-1", "--mode", "laurent"});
    CHECK(laurent.code == 0);
    CHECK(laurent.out.find("b: cauchy vs derivative") != std::string::npos);

    // an unreachable agreement tolerance must be reported as a failure
    const auto strict = run({"verify", "--f", "exp(z)/(z-3)", "--points", "1,-1,i", "--N", "7", "--check-tol", "0"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("verify: FAIL") != std::string::npos);
}
