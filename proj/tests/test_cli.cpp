#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "cli.hpp"

namespace fs = std::filesystem;
using heatcontent::cli::run;
using nlohmann::json;

namespace {

const fs::path kShapes = fs::path(HEATCONTENT_SOURCE_DIR) / "shapes";

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("heatcontent-test-" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& p) const { return (dir / p).string(); }
};

struct Run {
    int code;
    std::string out, err;
};

Run exec(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = run(args, o, e);
    return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string shape(const char* name) { return (kShapes / name).string(); }

}  // namespace

TEST_CASE("compute writes a 24-row curve and manifest") {
    Scratch s("compute");
    const auto r = exec({"compute", shape("unit-disk.json"), "--tmin", "1e-4", "--tmax", "1e-1", "--out", s / "a"});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(s / "a/curve.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);
    const auto m = json::parse(slurp(s / "a/manifest.json"));
    CHECK(m["command"] == "compute");
    CHECK(m["shape"]["kind"] == "ball");
    CHECK(m["grid"]["times"].size() == 24);
    CHECK(m["outputs"][0] == "curve.csv");
}

TEST_CASE("compute rejects bad input") {
    Scratch s("bad");
    CHECK(exec({"compute", shape("unit-disk.json"), "--method", "exact", "--out", s / "x"}).code == 2);
    std::ofstream(s / "bad.json") << R"({"kind":"ball","m":2,"radius":1})";
    const auto r = exec({"compute", s / "bad.json", "--out", s / "y"});
    CHECK(r.code == 2);
    CHECK(r.err.find("center") != std::string::npos);
    CHECK(exec({"compute"}).code == 2);
    CHECK(exec({"frobnicate"}).code == 2);
}

TEST_CASE("compute is deterministic per seed") {
    Scratch s("det");
    const std::vector<std::string> base = {"compute", shape("unit-square.json"), "--method", "mc", "--samples", "65536",
                                           "--seed", "7", "--points", "4"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", s / "a"});
    b.insert(b.end(), {"--out", s / "b", "--jobs", "3"});
    REQUIRE(exec(a).code == 0);
    REQUIRE(exec(b).code == 0);
    CHECK(slurp(s / "a/curve.csv") == slurp(s / "b/curve.csv"));
}

TEST_CASE("infinite horn rows carry inf") {
    Scratch s("inf");
    REQUIRE(exec({"compute", shape("horn-0.4.json"), "--points", "3", "--out", s / "h"}).code == 0);
    CHECK(slurp(s / "h/curve.csv").find(",inf,") != std::string::npos);
}

TEST_CASE("verify") {
    Scratch s("verify");
    const auto disk = exec({"verify", shape("unit-disk.json"), "--samples", "65536", "--out", s / "d"});
    CHECK(disk.code == 0);
    CHECK(disk.out.find("0 failures") != std::string::npos);
    const auto box = exec({"verify", shape("unit-square.json"), "--suite", "main", "--out", s / "b"});
    CHECK(box.code == 0);
    CHECK(box.out.find("skipped") != std::string::npos);
    const auto horn = exec({"verify", shape("horn-0.4.json"), "--suite", "mu", "--out", s / "h"});
    CHECK(horn.code == 0);
    std::istringstream lines(slurp(s / "h/reports.jsonl"));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        const auto j = json::parse(line);
        CHECK(j["measured"] == "inf");
        CHECK(j["upper"] == "inf");
        CHECK(j["pass"] == true);
        ++n;
    }
    CHECK(n == 8);
}

TEST_CASE("fit") {
    Scratch s("fit");
    const auto sq = exec({"fit", shape("unit-disk.json"), "--model", "sqrt", "--out", s / "a"});
    REQUIRE(sq.code == 0);
    CHECK(sq.out.find("3.544907702") != std::string::npos);
    const auto horn = exec({"fit", shape("horn-0.75.json"), "--model", "horn", "--points", "6", "--out", s / "b"});
    REQUIRE(horn.code == 0);
    CHECK(horn.out.find("-0.1666666667") != std::string::npos);
    CHECK(exec({"fit", shape("unit-square.json"), "--model", "h3", "--out", s / "c"}).code == 2);
    REQUIRE(exec({"compute", shape("unit-disk.json"), "--quantity", "F", "--out", s / "d"}).code == 0);
    CHECK(exec({"fit", shape("unit-disk.json"), "--curve", s / "d/curve.csv", "--quantity", "F", "--tmin", "1", "--tmax",
                "2", "--out", s / "e"})
              .code == 2);
}

TEST_CASE("sweep") {
    Scratch s("sweep");
    std::ofstream(s / "empty.config") << R"({"entries": []})";
    const auto e = exec({"sweep", s / "empty.config", "--out", s / "e"});
    CHECK(e.code == 0);
    CHECK(json::parse(slurp(s / "e/summary.json"))["entries"].empty());

    std::ofstream(s / "broken.config") << R"({"entries": [{"name": "x"}]})";
    CHECK(exec({"sweep", s / "broken.config", "--out", s / "b"}).code == 2);
    CHECK_FALSE(fs::exists(s / "b"));

    std::ofstream(s / "mixed.config") << json{
        {"entries",
         {{{"name", "good"}, {"command", "compute"}, {"shape", shape("unit-disk.json")}, {"args", {"--points", "3"}}},
          {{"name", "bad"}, {"command", "compute"}, {"shape", {{"kind", "ball"}, {"m", 2}}}, {"args", json::array()}},
          {{"name", "also-good"},
           {"command", "fit"},
           {"shape", {{"kind", "box"}, {"m", 1}, {"lengths", {1.0}}}},
           {"args", {"--model", "sqrt"}}}}}}
                                                .dump();
    const auto m = exec({"sweep", s / "mixed.config", "--out", s / "m"});
    CHECK(m.code == 1);
    const auto summary = json::parse(slurp(s / "m/summary.json"));
    CHECK(summary["entries"][0]["status"] == "ok");
    CHECK(summary["entries"][1]["status"] == "error");
    CHECK(summary["entries"][2]["status"] == "ok");
    CHECK(fs::exists(s / "m/good/curve.csv"));
}

TEST_CASE("rerun reproduces outputs") {
    Scratch s("rerun");
    REQUIRE(exec({"compute", shape("two-disk.json"), "--samples", "16384", "--seed", "3", "--points", "3", "--out",
                  s / "a"})
                .code == 0);
    REQUIRE(exec({"rerun", s / "a/manifest.json", "--out", s / "b"}).code == 0);
    CHECK(slurp(s / "a/curve.csv") == slurp(s / "b/curve.csv"));
}
