#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dephasing/cli.hpp"
#include "dephasing/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dephasing::cli;

namespace {

struct Sandbox {
  fs::path root;
  Sandbox() {
    root = fs::temp_directory_path() / ("dfsim_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(root);
  }
  ~Sandbox() { fs::remove_all(root); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(root / name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dfsim");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kCollective = R"({"K":2,"N":1,"g":[[["1","1"]],[["1","1"]]]})";
const char* kSingle = R"({"K":1,"N":1,"g":[["2"]]})";
const char* kUniform1 = R"({"N":1,"terms":[{"n":0,"re":0.7071067811865476,"im":0},{"n":1,"re":0.7071067811865476,"im":0}]})";

std::vector<std::string> csv_column(const std::string& csv, std::size_t col) {
  std::vector<std::string> out;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t c = 0; c <= col; ++c) std::getline(cells, cell, ',');
    out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse_pairs") {
    auto p = parse_pairs("1:2,b11:b00", 2);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == std::pair<std::uint64_t, std::uint64_t>{1, 2});
    CHECK(p[1] == std::pair<std::uint64_t, std::uint64_t>{3, 0});
    CHECK_THROWS_AS(parse_pairs("4:1", 2), PairRangeError);
    CHECK_THROWS_AS(parse_pairs("b101:b000", 2), PairRangeError);
    CHECK_THROWS_AS(parse_pairs("1-2", 2), dephasing::ParseError);
    CHECK_THROWS_AS(parse_pairs("x:1", 2), dephasing::ParseError);
  }

  TEST_CASE("analyze collective matrix") {
    Sandbox box;
    auto matrix = box.write("m.json", kCollective);
    auto r = invoke({"analyze", "--matrix", matrix, "--out", (box.root / "report.json").string()});
    REQUIRE(r.code == kOk);
    auto report = json::parse(box.read("report.json"));
    CHECK(report["classes"][0]["members"] == json::array({1, 2}));
    CHECK(report["classes"][1]["members"] == json::array({0}));
    CHECK(report["classes"][2]["members"] == json::array({3}));
    CHECK(report["collective"] == true);
    CHECK(report["conjugation"] == json::parse("[[0,0],[1,2],[2,1]]"));

    // Byte-identical on repeat.
    auto again = invoke({"analyze", "--matrix", matrix});
    CHECK(again.out == box.read("report.json"));
  }

  TEST_CASE("analyze exit codes") {
    Sandbox box;
    CHECK(invoke({"analyze", "--matrix", box.write("bad.json", "{oops")}).code == kParseError);
    CHECK(invoke({"analyze", "--matrix", box.write("big.json", R"({"K":30,"N":1,"g":[]})")}).code == kLimitExceeded);
    CHECK(invoke({"analyze", "--matrix", (box.root / "missing.json").string()}).code == kParseError);
    CHECK(invoke({"analyze"}).code == kParseError);
    auto r = invoke({"analyze", "--matrix", box.write("rows.json", R"({"K":2,"N":1,"g":[["1"]]})")});
    CHECK(r.code == kParseError);
    CHECK(r.err.find("row count") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }

  TEST_CASE("simulate reproduces cos(2t)") {
    Sandbox box;
    auto matrix = box.write("m.json", kSingle);
    auto env = box.write("env.json", kUniform1);
    auto outdir = (box.root / "run").string();

    // t_max = pi/2, four steps: |cos 2t| = 1, sqrt(2)/2, 0, sqrt(2)/2, 1
    auto r = invoke({"simulate", "--matrix", matrix, "--env", env, "--pairs", "0:1", "--t-max",
                     "1.5707963267948966", "--t-steps", "4", "--out", outdir});
    REQUIRE(r.code == kOk);
    auto abs_r = csv_column(box.read("run/rate_0_1.csv"), 3);
    const double h = std::sqrt(2.0) / 2;
    const double expected_half[] = {1, h, 0, h, 1};
    REQUIRE(abs_r.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(std::stod(abs_r[i]) - expected_half[i]) <= 1e-12);

    // t_max = pi: the grid lands on 2t = 0, pi/2, pi, 3pi/2, 2pi.
    r = invoke({"simulate", "--matrix", matrix, "--env", env, "--pairs", "0:1", "--t-max", "3.141592653589793",
                "--t-steps", "4", "--out", outdir});
    REQUIRE(r.code == kOk);
    abs_r = csv_column(box.read("run/rate_0_1.csv"), 3);
    const double expected_full[] = {1, 0, 1, 0, 1};
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(std::stod(abs_r[i]) - expected_full[i]) <= 1e-12);

    auto summary = json::parse(box.read("run/summary.json"));
    CHECK(summary["pairs"][0]["dfs"] == false);
  }

  TEST_CASE("simulate marks same-class pairs and picks default pairs") {
    Sandbox box;
    auto matrix = box.write("m.json", R"({"K":3,"N":1,"g":[["1"],["1"],["1"]]})");
    auto env = box.write("env.json", kUniform1);
    auto outdir = (box.root / "run").string();
    auto r = invoke({"simulate", "--matrix", matrix, "--env", env, "--out", outdir});
    REQUIRE(r.code == kOk);
    auto summary = json::parse(box.read("run/summary.json"));
    // Largest class is a weight class of size 3 -> three pairs.
    REQUIRE(summary["pairs"].size() == 3);
    for (const auto& p : summary["pairs"]) {
      CHECK(p["dfs"] == true);
      CHECK(p["min_abs_r"].get<double>() == 1.0);
    }
    CHECK(std::abs(summary["purity_t_max"].get<double>() - 1.0) < 1e-12);
    CHECK(fs::exists(box.root / "run" / summary["pairs"][0]["csv"].get<std::string>()));
  }

  TEST_CASE("default pairs are capped") {
    Sandbox box;
    auto matrix = box.write("m.json", R"({"K":5,"N":1,"g":[["0"],["0"],["0"],["0"],["0"]]})");
    auto env = box.write("env.json", kUniform1);
    auto r = invoke({"simulate", "--matrix", matrix, "--env", env, "--t-steps", "2", "--out", (box.root / "run").string()});
    REQUIRE(r.code == kOk);
    CHECK(json::parse(box.read("run/summary.json"))["pairs"].size() == kMaxDefaultPairs);
  }

  TEST_CASE("simulate errors") {
    Sandbox box;
    auto matrix = box.write("m.json", kSingle);
    auto env = box.write("env.json", kUniform1);
    CHECK(invoke({"simulate", "--matrix", matrix, "--env", env, "--pairs", "0:2", "--out", box.root.string()}).code ==
          kPairOutOfRange);
    CHECK(invoke({"simulate", "--matrix", matrix, "--pairs", "0:1"}).code == kParseError);
    auto env2 = box.write("env2.json", R"({"N":2,"terms":[{"n":0,"re":1,"im":0}]})");
    CHECK(invoke({"simulate", "--matrix", matrix, "--env", env2, "--out", box.root.string()}).code == kParseError);
    CHECK(invoke({"simulate", "--matrix", matrix, "--env", env, "--t-max", "-1"}).code == kParseError);
  }

  TEST_CASE("classify") {
    Sandbox box;
    auto opposite = box.write("o.json", R"({"K":2,"N":2,"g":[["1","2"],["-1","-2"]]})");
    auto r = invoke({"classify", "--matrix", opposite, "--pairs", "b11:b00"});
    REQUIRE(r.code == kOk);
    auto doc = json::parse(r.out);
    CHECK(doc["pairs"][0]["case"] == "EqualSigns");
    CHECK(doc["pairs"][0]["required_symmetry"] == "RowsOpposite(1,2)");
    CHECK(doc["pairs"][0]["satisfied"] == true);
    CHECK(doc["pairs"][0]["preserved"] == true);

    auto differ = box.write("d.json", R"({"K":2,"N":2,"g":[["1","2"],["1","3"]]})");
    doc = json::parse(invoke({"classify", "--matrix", differ, "--pairs", "b01:b10"}).out);
    CHECK(doc["pairs"][0]["case"] == "OppositeSigns");
    CHECK(doc["pairs"][0]["required_symmetry"] == "RowsEqual(1,2)");
    CHECK(doc["pairs"][0]["satisfied"] == false);
    CHECK(doc["pairs"][0]["preserved"] == false);

    auto zero = box.write("z.json", R"({"K":3,"N":1,"g":[["0"],["0"],["0"]]})");
    doc = json::parse(invoke({"classify", "--matrix", zero, "--pairs", "b111:b000"}).out);
    CHECK(doc["pairs"][0]["case"] == "TooFar");
    CHECK(doc["pairs"][0]["required_symmetry"].is_null());
    CHECK(doc["pairs"][0]["preserved"] == true);

    CHECK(invoke({"classify", "--matrix", zero}).code == kParseError);
    CHECK(invoke({"classify", "--matrix", zero, "--pairs", "9:1"}).code == kPairOutOfRange);
  }

  TEST_CASE("verify") {
    Sandbox box;
    auto r = invoke({"verify", "--matrix", box.write("m.json", R"({"K":3,"N":2,"g":[["1","1/2"],["1","1/2"],["1","1/2"]]})")});
    CHECK(r.code == kOk);
    CHECK(r.out.find("PASS collective_structure") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    auto big = box.write("big.json", R"({"K":8,"N":1,"g":[["1"],["1"],["1"],["1"],["1"],["1"],["1"],["1"]]})");
    CHECK(invoke({"verify", "--matrix", big}).code == kLimitExceeded);
  }
}
