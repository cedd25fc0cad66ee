#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kScratch = fs::path("cli_scratch");

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(WIM_CLI_PATH) + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file;
  cmd += " 2> " + (kScratch / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct ScratchSetup {
  ScratchSetup() {
    fs::create_directories(kScratch);
    spit(kScratch / "model33.json", R"({"factors":[{"m":3},{"m":3}]})");
    spit(kScratch / "model2bit.json", R"({"factors":[{"m":2},{"m":2}]})");
    spit(kScratch / "modelkbit3.json", R"({"factors":[{"m":2},{"m":2},{"m":2}]})");
    spit(kScratch / "mu33.json",
         R"(["2/100","3/100","5/100","7/100","11/100","13/100","17/100","19/100","23/100"])");
    spit(kScratch / "bad.json", "{not json");
  }
} scratch_setup;

}  // namespace

TEST_CASE("error exit codes") {
  CHECK(run("metric --metric no_such_file.json") == 2);
  CHECK(run("metric --metric " + (kScratch / "bad.json").string()) == 3);
  CHECK(run("metric --metric nonsense:9") == 3);
  // a face-lattice budget of 1 trips the capacity guard
  CHECK(run("tables --which fvector --max-faces 1") == 4);
  // a custom metric violating the triangle inequality is a domain error
  spit(kScratch / "badmetric.json",
       R"({"kind":"custom","n":3,"matrix":[["0","1","3"],["1","0","1"],["3","1","0"]]})");
  CHECK(run("metric --metric " + (kScratch / "badmetric.json").string()) == 5);
}

TEST_CASE("metric validation round trip") {
  auto out = (kScratch / "metric.json").string();
  REQUIRE(run("metric --metric l1:3x3 --check --out " + out) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["valid"] == true);
  CHECK(j["kind"] == "l1");
  CHECK(j["n"] == 9);
}

TEST_CASE("ball of the discrete metric on three states") {
  auto out = (kScratch / "ball.json").string();
  REQUIRE(run("ball --metric discrete:3 --faces all --out " + out) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["vertices"].size() == 6);
  CHECK(j["fvector"] == json::array({6, 6}));
}

TEST_CASE("lipschitz vertex counts and dual f-vector") {
  auto out = (kScratch / "lip.json").string();
  REQUIRE(run("lipschitz --metric l0:2x2x2 --fvector --out " + out) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["vertex_count"] == 38);
  CHECK(j["fvector"] == json::array({38, 306, 848, 1062, 652, 192, 24}));
}

TEST_CASE("exact distance certificate") {
  auto out = (kScratch / "dist.json").string();
  spit(kScratch / "mu3.json", R"(["1/2","1/4","1/4"])");
  spit(kScratch / "nu3.json", R"(["1/4","1/4","1/2"])");
  REQUIRE(run("distance --metric discrete:3 --mu " + (kScratch / "mu3.json").string() +
              " --nu " + (kScratch / "nu3.json").string() + " --out " + out) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["value"] == "1/4");  // half the L1 distance
}

TEST_CASE("closed form output") {
  auto out = (kScratch / "cf.json").string();
  spit(kScratch / "mu4.json", R"([0.1, 0.2, 0.3, 0.4])");
  REQUIRE(run("closed-form --model 2bit --mu " + (kScratch / "mu4.json").string() + " --out " +
              out) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["case_id"] == 8);
  CHECK(std::abs(j["value"].get<double>() - 0.02 / 0.7) < 1e-12);
}

TEST_CASE("projection onto the 3x3 independence model") {
  auto out = (kScratch / "proj.json").string();
  REQUIRE(run("project --model " + (kScratch / "model33.json").string() +
              " --metric l1:3x3 --mu " + (kScratch / "mu33.json").string() + " --out " + out) == 0);
  json j = json::parse(slurp(out));
  CHECK(std::abs(j["value"].get<double>() - 159.0 / 4600.0) < 1e-6);
  CHECK(j["type_dim"] == 3);
  CHECK(j["degree_bound"] == "6");
}

TEST_CASE("polar degrees round trip") {
  auto out = (kScratch / "polar.json").string();
  REQUIRE(run("polar-degrees --model " + (kScratch / "modelkbit3.json").string() + " --out " +
              out) == 0);
  CHECK(json::parse(slurp(out)) == json::array({"0", "0", "0", "6", "12", "12", "4"}));
  REQUIRE(run("polar-degrees --model " + (kScratch / "modelkbit3.json").string() +
              " --shifted --out " + out) == 0);
  CHECK(json::parse(slurp(out)) == json::array({"6", "12", "12", "4"}));
}

TEST_CASE("experiment output is deterministic") {
  auto a = (kScratch / "exp_a.csv").string();
  auto b = (kScratch / "exp_b.csv").string();
  std::string base = "experiment --model " + (kScratch / "model2bit.json").string() +
                     " --metric l0:2x2 --samples 12 --seed 7 --out ";
  REQUIRE(run(base + a, (kScratch / "sum_a.json").string()) == 0);
  REQUIRE(run(base + b, (kScratch / "sum_b.json").string()) == 0);
  std::string csv_a = slurp(a);
  CHECK(csv_a == slurp(b));
  CHECK(csv_a.substr(0, csv_a.find('\n')) == "sample_id,value,type_dim,feasible_facets,tie_count");
  CHECK(slurp(kScratch / "sum_a.json") == slurp(kScratch / "sum_b.json"));
  json summary = json::parse(slurp(kScratch / "sum_a.json"));
  CHECK(summary["samples"] == 12);
}

TEST_CASE("published polar tables self-check") {
  auto out = (kScratch / "tables.csv").string();
  REQUIRE(run("tables --which polar --out " + out) == 0);
  std::string csv = slurp(out);
  CHECK(csv.find("FAIL") == std::string::npos);
  CHECK(csv.find("pass") != std::string::npos);
}
