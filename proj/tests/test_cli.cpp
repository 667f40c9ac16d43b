#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = p3p::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(P3P_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve a well-formed problem") {
  const Result r = run({"solve", data("identity_pose.json")});
  CHECK(r.code == p3p::cli::kExitOk);
  const json sols = json::parse(r.out);
  REQUIRE(sols.is_array());
  CHECK(sols.size() >= 1);
  CHECK(sols.size() <= 4);
  bool identity = false;
  for (const auto& s : sols) {
    double dist = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dist += std::abs(s["R"][i][j].get<double>() - (i == j ? 1.0 : 0.0));
    for (int i = 0; i < 3; ++i) dist += std::abs(s["t"][i].get<double>());
    identity = identity || dist < 1e-9;
  }
  CHECK(identity);
  CHECK(r.err.empty());
}

TEST_CASE("solve flags") {
  for (const std::vector<std::string>& extra :
       {std::vector<std::string>{"--variant", "fl"}, {"--variant", "cf"}, {"--no-reindex"}, {"--d3", "s12"}, {"--d3", "eq15"},
        {"--gn-iters", "0"}}) {
    std::vector<std::string> args{"solve", data("identity_pose.json")};
    args.insert(args.end(), extra.begin(), extra.end());
    CHECK(run(args).code == p3p::cli::kExitOk);
  }
}

TEST_CASE("exit codes for bad input") {
  Result r = run({"solve", data("collinear.json")});
  CHECK(r.code == p3p::cli::kExitDegenerate);
  CHECK(r.err.find("collinear") != std::string::npos);
  CHECK(r.out.empty());

  r = run({"solve", data("missing_bearing.json")});
  CHECK(r.code == p3p::cli::kExitUsage);
  CHECK(r.err.find("bearing") != std::string::npos);

  CHECK(run({"solve", data("malformed.json")}).code == p3p::cli::kExitUsage);
  CHECK(run({"solve", data("does_not_exist.json")}).code == p3p::cli::kExitUsage);
  CHECK(run({}).code == p3p::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == p3p::cli::kExitUsage);
  CHECK(run({"bench", "--bogus"}).code == p3p::cli::kExitUsage);
  CHECK(run({"bench", "--trials", "0"}).code == p3p::cli::kExitUsage);
  CHECK(run({"bench", "--format", "xml"}).code == p3p::cli::kExitUsage);
  CHECK(run({"solve", data("identity_pose.json"), "--gn-iters", "17"}).code == p3p::cli::kExitUsage);
  CHECK(run({"solve", data("identity_pose.json"), "--variant", "best"}).code == p3p::cli::kExitUsage);
  CHECK(run({"time", "--repeats", "0"}).code == p3p::cli::kExitUsage);
  CHECK(run({"solve", data("identity_pose.json"), "--d3", "s31"}).code == p3p::cli::kExitUsage);
}

TEST_CASE("d3 aliases select the same expression") {
  const Result a = run({"bench", "--trials", "500", "--d3", "s13", "--threads", "1"});
  const Result b = run({"bench", "--trials", "500", "--d3", "eq15", "--threads", "1"});
  REQUIRE(a.code == p3p::cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["config"]["d3"] == "s13");
}

TEST_CASE("bench reports are identical across thread counts") {
  const Result one = run({"bench", "--trials", "10", "--seed", "1", "--threads", "1"});
  const Result four = run({"bench", "--trials", "10", "--seed", "1", "--threads", "4"});
  REQUIRE(one.code == p3p::cli::kExitOk);
  REQUIRE(four.code == p3p::cli::kExitOk);
  CHECK(one.out == four.out);
  const json doc = json::parse(one.out);
  CHECK(doc["report"]["trials"] == 10);
  CHECK(doc["spec"]["seed"] == 1);

  const Result larger1 = run({"bench", "--trials", "3000", "--seed", "2", "--threads", "1"});
  const Result larger3 = run({"bench", "--trials", "3000", "--seed", "2", "--threads", "3"});
  CHECK(larger1.out == larger3.out);
  CHECK(larger1.out == run({"bench", "--trials", "3000", "--seed", "2", "--threads", "1"}).out);
}

TEST_CASE("bench csv, output file and trial dump") {
  const Result csv = run({"bench", "--trials", "50", "--format", "csv", "--threads", "2"});
  REQUIRE(csv.code == p3p::cli::kExitOk);
  CHECK(csv.out.rfind("category,baseline\nValid,", 0) == 0);

  const std::string out_path = std::string(P3P_TEST_OUTPUT_DIR) + "/cli_report.json";
  const std::string dump_path = std::string(P3P_TEST_OUTPUT_DIR) + "/cli_trials.jsonl";
  const Result file = run({"bench", "--trials", "25", "--out", out_path, "--dump-trials", dump_path});
  REQUIRE(file.code == p3p::cli::kExitOk);
  CHECK(file.out.empty());
  CHECK(json::parse(slurp(out_path))["report"]["trials"] == 25);

  std::istringstream lines(slurp(dump_path));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(json::parse(line)["trial"] == n);
    ++n;
  }
  CHECK(n == 25);
  std::remove(out_path.c_str());
  std::remove(dump_path.c_str());
}

TEST_CASE("time and ablate") {
  const Result t = run({"time", "--trials", "20", "--repeats", "2"});
  REQUIRE(t.code == p3p::cli::kExitOk);
  const json timing = json::parse(t.out)["timing"];
  CHECK(timing["trials"] == 20);
  CHECK(timing["min_ns"].get<double>() <= timing["max_ns"].get<double>());

  const Result forced = run({"time", "--trials", "5", "--threads", "4"});
  CHECK(forced.code == p3p::cli::kExitOk);
  CHECK(forced.err.find("single-threaded") != std::string::npos);

  const Result a = run({"ablate", "--trials", "200", "--seed", "7", "--format", "csv"});
  REQUIRE(a.code == p3p::cli::kExitOk);
  CHECK(a.out.rfind("category,baseline,ferrari_lagrange_only,classical_ferrari_only,no_reindex,d3_from_s12,d3_from_s13\n", 0) == 0);

  const json cols = json::parse(run({"ablate", "--trials", "200", "--seed", "7"}).out)["columns"];
  REQUIRE(cols.size() == 6);
  for (const auto& c : cols) CHECK(cols[0]["report"]["ground_truth"].get<int>() >= c["report"]["ground_truth"].get<int>());
}

TEST_CASE("help goes to standard output") {
  const Result h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("bench") != std::string::npos);
}

}  // TEST_SUITE
