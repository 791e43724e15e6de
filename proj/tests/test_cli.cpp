#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "magbilap/cli.hpp"

using namespace magbilap;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string instance(const std::string& name) { return std::string(MAGBILAP_DATA_DIR) + "/instances/" + name + ".json"; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("check exit codes follow the verdict") {
  const auto ok = run({"check", instance("half_line_unit")});
  CHECK(ok.code == kExitOk);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["report"]["verdict"] == "satisfied");
  CHECK(doc["manifest"]["tool"] == "magbilap");
  CHECK(doc["manifest"]["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK_FALSE(doc["manifest"].contains("timestamp"));
  CHECK(run({"check", instance("tree_kappa1.5_alpha0")}).code == kExitNotSatisfied);
  CHECK(run({"check", "/nonexistent/instance.json"}).code == kExitNoInput);
  CHECK(run({"check", write_temp("magbilap_bad.json", "{oops")}).code == kExitUsage);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::string> verify = {"verify", "--suite", "product_rule", "--seed", "3", "--trials", "20"};
  const auto a = run(verify), b = run(verify);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(run({"check", instance("half_line_sqrt")}).out == run({"check", instance("half_line_sqrt")}).out);
  const std::vector<std::string> probe = {"probe", "--builder", "half_line_unit", "--nu", "1", "--shoot-horizon", "60", "--horizons", "20,40"};
  const auto p = run(probe);
  CHECK(p.code == kExitOk);
  CHECK(p.out == run(probe).out);
}

TEST_CASE("apply evaluates operators and enforces the margin") {
  const auto path = write_temp("magbilap_delta.json", R"({"0": [1, 0]})");
  const auto r = run({"apply", "--builder", "half_line_unit", "--horizon", "6", "--op", "bilaplacian",
                      "--amplitudes", path});
  REQUIRE(r.code == kExitOk);
  const auto amps = nlohmann::json::parse(r.out)["amplitudes"];
  CHECK(amps["0"][0] == 2.0);
  CHECK(amps["1"][0] == -3.0);
  CHECK(amps["2"][0] == 1.0);
  CHECK(amps.size() == 3);

  const auto edge = write_temp("magbilap_edge.json", R"({"6": [1, 0]})");
  CHECK(run({"apply", "--builder", "half_line_unit", "--horizon", "6", "--op", "laplacian", "--amplitudes", edge})
            .code == kExitUnavailable);
}

TEST_CASE("graph validation failures exit with the data code") {
  const auto bad = write_temp("magbilap_graph.json", R"({"root": "a", "mu_floor": 1,
    "vertices": [{"id": "a", "mu": 1}, {"id": "b", "mu": 1}], "edges": []})");
  const auto amps = write_temp("magbilap_zero.json", R"({})");
  CHECK(run({"apply", "--graph", bad, "--op", "laplacian", "--amplitudes", amps}).code == kExitData);
}

TEST_CASE("export writes Matrix Market with a sidecar") {
  const auto out = (std::filesystem::temp_directory_path() / "magbilap_h.mtx").string();
  const auto r = run({"export", "--builder", "half_line_unit", "--n", "6", "--boundary", "dirichlet", "--out", out});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "%%MatrixMarket matrix coordinate complex general");
  std::ifstream side(out + ".json");
  REQUIRE(side.good());
  CHECK(nlohmann::json::parse(side)["hermitian"] == true);
}

TEST_CASE("stats and usage errors") {
  const auto r = run({"stats", "--builder", "half_line_unit", "--n-max", "4"});
  REQUIRE(r.code == kExitOk);
  const auto rows = nlohmann::json::parse(r.out)["rows"];
  CHECK(rows[0]["d_n"] == 2);
  CHECK(rows[0]["p_n"] == 1.0);
  CHECK(rows[0]["beta_n"] == 2.0);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"verify", "--ci"}).code == kExitUsage);
  CHECK(run({"stats", "--builder", "radial_tree", "--kappa", "-1"}).code == kExitUsage);
}
