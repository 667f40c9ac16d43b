#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <sstream>
#include <string>

#include "p3p/bench.hpp"
#include "p3p/json_io.hpp"

using namespace p3p;
using nlohmann::json;

namespace {

json problem_doc() {
  return json::parse(R"({"correspondences": [
    {"bearing": [0.1, 0.2, 1.0], "point": [0.2, 0.4, 2.0]},
    {"bearing": [-0.3, 0.1, 1.0], "point": [-0.9, 0.3, 3.0]},
    {"bearing": [0.2, -0.25, 1.0], "point": [0.8, -1.0, 4.0]}]})");
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("problem parsing normalizes bearings") {
  const P3pProblem p = io::problem_from_json(problem_doc());
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(norm(p.bearing(i)) - 1.0) < 1e-15);
  CHECK(p.point(1) == Vec3{-0.9, 0.3, 3.0});
}

TEST_CASE("problem round trip") {
  bench::TrialSpec spec;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const P3pProblem p = bench::generate_problem(spec, i).problem;
    const json j = io::problem_to_json(p);
    REQUIRE(json::parse(j.dump()) == j);
    const P3pProblem back = io::problem_from_json(json::parse(j.dump()));
    for (std::size_t k = 0; k < 3; ++k) {
      REQUIRE(back.point(k) == p.point(k));
      // normalizing an already unit vector moves each component by at most a couple of ulps
      const Vec3 a = back.bearing(k), b = p.bearing(k);
      for (double d : {a.x - b.x, a.y - b.y, a.z - b.z}) REQUIRE(std::abs(d) <= 2 * DBL_EPSILON);
    }
  }
}

TEST_CASE("solutions serialize with every digit") {
  const P3pProblem p = io::problem_from_json(problem_doc());
  const SolutionList sols = solve(p);
  REQUIRE(!sols.empty());
  const json j = json::parse(io::solutions_to_json(sols).dump());
  REQUIRE(j.size() == sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(j[i]["R"][r][c].get<double>() == sols[i].pose.R(r, c));
    CHECK(j[i]["t"][0].get<double>() == sols[i].pose.t.x);
    CHECK(j[i]["depths"][2].get<double>() == sols[i].depths[2]);
  }
  CHECK(io::solutions_to_json({}).dump() == "[]");
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(io::problem_from_json(json::array()), io::ParseError);
  CHECK_THROWS_AS(io::problem_from_json(json::object()), io::ParseError);

  json j = problem_doc();
  j["correspondences"].erase(2);
  CHECK_THROWS_AS(io::problem_from_json(j), io::ParseError);

  j = problem_doc();
  j["correspondences"][1].erase("bearing");
  CHECK_THROWS_AS(io::problem_from_json(j), io::ParseError);

  j = problem_doc();
  j["correspondences"][0]["point"] = {1, 2};
  CHECK_THROWS_AS(io::problem_from_json(j), io::ParseError);

  j = problem_doc();
  j["correspondences"][0]["point"][1] = "2";
  CHECK_THROWS_AS(io::problem_from_json(j), io::ParseError);

  j = problem_doc();
  j["correspondences"][0]["bearing"] = {0, 0, 0};
  CHECK_THROWS_AS(io::problem_from_json(j), InvalidArgument);

  j = problem_doc();
  j["correspondences"][2]["point"] = j["correspondences"][0]["point"];
  CHECK_THROWS_AS(io::problem_from_json(j), DegenerateInput);
}

TEST_CASE("report documents") {
  bench::AggregateReport r;
  r.trials = 10;
  r.valid = 17;
  r.unique = 15;
  r.duplicates = 1;
  r.incorrect = 1;
  r.good = 10;
  r.ground_truth = 10;
  r.ground_truth_solutions = 11;
  r.xi = {1.5e-13, 2.5e-14, 9.0e-9};
  const json j = io::report_to_json(r);
  CHECK(j["incorrect_including_duplicates"] == 2);
  CHECK(j["xi"]["statistic"] == "per_trial_best");
  CHECK(j["xi"]["median"].get<double>() == 2.5e-14);

  bench::TrialRecord rec;
  rec.best_xi = INFINITY;
  CHECK(io::trial_record_to_json(rec)["best_xi"].is_null());

  const std::string csv = io::reports_to_csv({"a", "b"}, {r, r});
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "category,a,b");
  CHECK(lines[1] == "Valid,17,17");
  CHECK(lines[2] == "Unique,15,15");
  CHECK(lines[3] == "Duplicates,1,1");
  CHECK(lines[4] == "Good,10,10");
  CHECK(lines[5] == "No solution,0,0");
  CHECK(lines[6] == "Ground truth,10,10");
  CHECK(lines[7] == "Incorrect,1,1");
}

TEST_CASE("configuration names") {
  SolverConfig c;
  c.force_variant = QuarticVariant::ClassicalOnly;
  c.d3_source = D3Source::FromS13;
  c.reindex_enabled = false;
  const json j = io::config_to_json(c);
  CHECK(j["variant"] == "cf");
  CHECK(j["d3"] == "s13");
  CHECK(j["reindex"] == false);
  CHECK(j["gn_iterations"] == 2);
}

}  // TEST_SUITE
