// Drives the installed CLI binary end to end: dispatch, exit codes,
// determinism of the emitted reports.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

std::string cli_path() {
  const char* p = std::getenv("ABELOID_CLI");
  REQUIRE_MESSAGE(p != nullptr, "ABELOID_CLI must point at the CLI binary");
  return p;
}

std::string fixture(const std::string& name) {
  const char* p = std::getenv("ABELOID_FIXTURES");
  REQUIRE_MESSAGE(p != nullptr, "ABELOID_FIXTURES must point at the fixture directory");
  return std::string(p) + "/" + name;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_path = std::string(std::getenv("ABELOID_OUT_DIR") ? std::getenv("ABELOID_OUT_DIR")
                                                                     : "/tmp") +
                         "/abeloid_cli_out.json";
  std::string cmd = cli_path() + " " + args + " > " + out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string write_temp_instance(const json& j, const std::string& name) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << j.dump();
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate on a commuting admissible instance exits 0 with valid true") {
    RunResult r = run_cli("validate --instance " + fixture("ordinary_g1.json"));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out.at("valid").get<bool>());
  }

  TEST_CASE("cohomology of the trivial 2-generator character") {
    json inst{{"field", json{{"p", 5}, {"precision", 16}}},
              {"cohomology", json{{"gammas", json::array({"1", "1"})}}}};
    std::string path = write_temp_instance(inst, "coh_trivial.json");
    RunResult r = run_cli("cohomology --instance " + path);
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out.at("dims") == json::array({1, 2, 1}));
    CHECK(out.at("euler").get<int>() == 0);
  }

  TEST_CASE("roundtrip reports isomorphic on the fixture") {
    RunResult r = run_cli("roundtrip --instance " + fixture("ordinary_g1.json") + " --seed 5");
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out.at("isomorphic").get<bool>());
  }

  TEST_CASE("byte-identical reports on identical instances") {
    for (const char* cmd : {"decompose", "to-higgs", "analytic-check"}) {
      RunResult a = run_cli(std::string(cmd) + " --instance " + fixture("ordinary_g1.json"));
      RunResult b = run_cli(std::string(cmd) + " --instance " + fixture("ordinary_g1.json"));
      CHECK(a.exit_code == 0);
      CHECK(a.output == b.output);
    }
  }

  TEST_CASE("domain errors exit 1 with operation context") {
    json inst{{"field", json{{"p", 5}, {"precision", 16}}},
              {"ext1",
               json{{"chi1", json::array({"2", "1"})}, {"chi2", json::array({"1", "1"})}}}};
    std::string path = write_temp_instance(inst, "bad_char.json");
    RunResult r = run_cli("ext1 --instance " + path);
    CHECK(r.exit_code == 1);
    json out = json::parse(r.output);
    CHECK(out.at("error").at("type") == "domain");
    CHECK(out.at("error").contains("operation"));
  }

  TEST_CASE("parse errors exit 2") {
    std::string path = "/tmp/abeloid_broken.json";
    std::ofstream(path) << "{ not json";
    RunResult r = run_cli("validate --instance " + path);
    CHECK(r.exit_code == 2);
  }

  TEST_CASE("NonSplit is data, not an error") {
    json inst{{"field", json{{"p", 5}, {"precision", 16}}},
              {"split_ext", json{{"b", json::array({"1"})},
                                 {"theta", json::array({"0"})},
                                 {"rho_offdiag", json::array({"0", "0"})}}}};
    std::string path = write_temp_instance(inst, "nonsplit.json");
    RunResult r = run_cli("split-ext --instance " + path);
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(!out.at("split").get<bool>());
  }

  TEST_CASE("table format renders without error") {
    RunResult r = run_cli("validate --instance " + fixture("ordinary_g1.json") +
                          " --format table");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("valid") != std::string::npos);
  }

  TEST_CASE("to-higgs output feeds back into from-higgs") {
    // the digit-expansion strings a report emits must parse back as scalar
    // literals at their stated precision
    RunResult higgs = run_cli("to-higgs --instance " + fixture("ordinary_g1.json"));
    REQUIRE(higgs.exit_code == 0);
    json inst = json::parse(std::ifstream(fixture("ordinary_g1.json")));
    inst["higgs"] = json::parse(higgs.output);
    inst.erase("rep");
    std::string path = write_temp_instance(inst, "chained_higgs.json");
    RunResult back = run_cli("from-higgs --instance " + path);
    CHECK(back.exit_code == 0);
    json rep = json::parse(back.output);
    CHECK(rep.at("n").get<int>() == 2);
    CHECK(rep.at("generators").size() == 2);
  }
}
