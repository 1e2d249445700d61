#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "phidim/constructions.hpp"
#include "phidim/errors.hpp"
#include "phidim/report.hpp"

using namespace phidim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("construction report serializes its trail and tables") {
    ConstructionReport rep;
    rep.name = "unit";
    rep.schedule.log_r.assign(5, std::log(0.5));
    rep.trail = {{1, 5, "base", 0.5}};
    rep.constants["c"] = 2.5;
    rep.targets["dim"] = 1.0 / 3.0;
    rep.notes.push_back("informational");

    auto doc = nlohmann::json::parse(to_json(rep));
    CHECK(doc["name"] == "unit");
    CHECK(doc["levels"] == 5);
    CHECK(doc["trail"].size() == 1);
    CHECK(doc["trail"][0]["rule"] == "base");
    CHECK(doc["constants"]["c"] == 2.5);
    CHECK(doc["targets"]["dim"].get<double>() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(doc["notes"][0] == "informational");
}

TEST_CASE("estimate json thins long partial vectors") {
    DimEstimate est;
    est.value = 0.6309;
    est.k_star = 100;
    est.n_star = 7;
    est.pairs_scanned = 4096;
    est.partials.assign(1000, 0.5);
    ScanWindow w{100, 1099, 64};
    auto doc = nlohmann::json::parse(to_json(est, w));
    CHECK(doc["value"].get<double>() == doctest::Approx(0.6309));
    CHECK(doc["window"]["K"] == 1099);
    CHECK(doc["partials"].size() <= 256);
    CHECK(doc["partials_stride"] == 4);
    CHECK(doc["mode"] == "upper");
}

TEST_CASE("csv tables carry headers and shortest round-trip numbers") {
    LevelStats stats;
    stats.log_s = {0.0, -std::log(3.0)};
    auto csv = level_stats_csv(stats);
    CHECK(csv.substr(0, 11) == "n,log_s,s\n0");
    CHECK(csv.find("0.3333333333333333") != std::string::npos);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(csv.find("\r") == std::string::npos);

    std::vector<BetaRow> rows{{3, 2, 1, 0.5, true}, {4, 2, 1, 0.25, false}};
    auto bcsv = beta_surface_csv(rows);
    CHECK(bcsv.find("k,n,phi_k,beta,admissible\n") == 0);
    CHECK(bcsv.find("3,2,1,0.5,1\n") != std::string::npos);
    CHECK(bcsv.find("4,2,1,0.25,0\n") != std::string::npos);

    std::vector<ViolationRow> empty;
    CHECK(violations_csv(empty) == "z,R,r,lhs,rhs\n");
}

TEST_CASE("atomic writes land complete files and reject bad paths") {
    std::string path = "report_test_scratch.json";
    write_text_file(path, "{\"a\":1}\n");
    CHECK(slurp(path) == "{\"a\":1}\n");
    write_text_file(path, "{\"a\":2}\n");
    CHECK(slurp(path) == "{\"a\":2}\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_file("no_such_dir/x.json", "x"), ConfigError);
}
