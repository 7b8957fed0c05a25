#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpp/cli.hpp"

using dpp::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "dpp");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("variance for the Bergman case") {
  const auto o = call({"variance", "--nu", "1", "--m", "0", "--r", "0.5"});
  REQUIRE(o.code == dpp::cli::kExitOk);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"r", "value", "error_estimate", "route"});
  CHECK(std::stod(rows[1][1]) == doctest::Approx(4.0 / 15.0).epsilon(1e-9));
  CHECK(rows[1][3] == "int1");
}

TEST_CASE("Euclidean variance by both routes") {
  const auto o = call({"variance", "--euclidean", "--n", "0", "--r", "1", "--route", "both"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][3] == "shirai");
  CHECK(rows[2][3] == "geometric");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(std::stod(rows[2][1])).epsilon(1e-6));
}

TEST_CASE("validation failures exit with 2") {
  const auto o = call({"variance", "--nu", "0.4", "--r", "0.5"});
  CHECK(o.code == dpp::cli::kExitValidation);
  CHECK(o.err.find("nu > 1/2") != std::string::npos);
  CHECK(o.out.empty());
  CHECK(call({"variance", "--nu", "1", "--r", "1.5"}).code == 2);
  CHECK(call({"variance", "--nu", "2", "--m", "1", "--r", "0.5", "--route", "series"}).code == 2);
  CHECK(call({"variance", "--nu", "1", "--r", "0.5", "--rel-tol", "-1"}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"distribution", "--nu", "1", "--r", "0.5", "--s", "-1.5"}).code == 2);
}

TEST_CASE("numerical failures exit with 3") {
  const auto o = call({"variance", "--nu", "1", "--r", "0.5", "--rel-tol", "1e-15", "--abs-tol",
                       "1e-300", "--max-subdivisions", "2"});
  CHECK(o.code == dpp::cli::kExitNumerical);
}

TEST_CASE("CSV output is byte-stable") {
  const std::vector<std::string> args{"variance", "--nu", "2.5", "--m", "1", "--r", "0.3,0.6,0.9",
                                      "--route", "both"};
  const auto a = call(args), b = call(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(parse_csv(a.out).size() == 7);
  const auto d1 = call({"distribution", "--nu", "1.5", "--r", "0.7", "--samples", "2000"});
  const auto d2 = call({"distribution", "--nu", "1.5", "--r", "0.7", "--samples", "2000",
                        "--threads", "3"});
  CHECK(d1.out == d2.out);
}

TEST_CASE("asymptotics table ends with the limit row") {
  const auto o = call({"asymptotics", "--nu", "1", "--m", "0"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"r", "scaled_variance", "constant", "ratio"});
  CHECK(rows[4][0] == "limit");
  CHECK(std::stod(rows[4][1]) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(o.err.empty());
}

TEST_CASE("distribution JSON") {
  const auto o = call({"distribution", "--nu", "1", "--r", "0.5", "--s", "-0.5,0.25",
                       "--moments", "3", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["variance"].get<double>() == doctest::Approx(4.0 / 15.0).epsilon(1e-11));
  CHECK(doc["generating_function"].size() == 2);
  for (const auto& g : doc["generating_function"]) {
    CHECK(g["product"].get<double>() == doctest::Approx(g["pmf_expectation"].get<double>()).epsilon(1e-12));
    CHECK(g["paper_route"] == "GenFun");
  }
  CHECK(doc["binomial_moments"][2]["paper_route"] == "BinMom");
}

TEST_CASE("variance JSON names the route") {
  const auto o = call({"variance", "--nu", "2", "--r", "0.5", "--route", "all", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["paper_route"] == "Int1");
  CHECK(doc["rows"][1]["paper_route"] == "Int3");
  CHECK(doc["rows"][2]["paper_route"] == "BinMom");
}

TEST_CASE("contraction table columns") {
  const auto o = call({"contraction", "--m", "0", "--R", "4,8"});
  REQUIRE(o.code == 0);
  const auto rows = parse_csv(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "R");
  CHECK(rows[0].size() == 6);
}

TEST_CASE("output files go through a rename") {
  const auto dir = std::filesystem::temp_directory_path() / "dpp_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto target = dir / "v.csv";
  CHECK(call({"variance", "--nu", "1", "--r", "0.5", "--output", target.string()}).code == 0);
  std::ifstream in(target);
  std::string header;
  std::getline(in, header);
  CHECK(header == "r,value,error_estimate,route");

  const auto bad = dir / "bad.csv";
  CHECK(call({"variance", "--nu", "0.4", "--r", "0.5", "--output", bad.string()}).code == 2);
  CHECK(!std::filesystem::exists(bad));

  ::setenv(dpp::cli::kOutputDirEnv, dir.c_str(), 1);
  const auto o = call({"asymptotics", "--nu", "2", "--m", "1", "--format", "json"});
  ::unsetenv(dpp::cli::kOutputDirEnv);
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  CHECK(std::filesystem::exists(dir / "asymptotics.json"));
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(dpp::cli::format_double(0.1) == "0.10000000000000001");
  CHECK(dpp::cli::format_double(1.0) == "1");
}
