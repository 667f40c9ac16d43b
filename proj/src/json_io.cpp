#include "p3p/json_io.hpp"

#include <cmath>
#include <sstream>

namespace p3p::io {

using nlohmann::json;

namespace {

Vec3 vec3_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + ": expected an array of 3 numbers");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ParseError(where + ": expected an array of 3 numbers");
    v[i] = j[i].get<double>();
  }
  return {v[0], v[1], v[2]};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* variant_name(QuarticVariant v) {
  switch (v) {
    case QuarticVariant::Adaptive: return "adaptive";
    case QuarticVariant::FerrariLagrangeOnly: return "fl";
    case QuarticVariant::ClassicalOnly: return "cf";
  }
  return "adaptive";
}

const char* d3_name(D3Source s) {
  switch (s) {
    case D3Source::FromS12: return "s12";
    case D3Source::FromS13: return "s13";
    case D3Source::FromS23: return "s23";
  }
  return "s23";
}

}  // namespace

P3pProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("problem: expected a JSON object");
  const auto it = j.find("correspondences");
  if (it == j.end()) throw ParseError("problem: missing \"correspondences\"");
  if (!it->is_array() || it->size() != 3) {
    throw ParseError("problem: \"correspondences\" must hold exactly 3 entries");
  }

  std::array<Vec3, 3> bearings;
  std::array<Vec3, 3> points;
  for (std::size_t i = 0; i < 3; ++i) {
    const json& c = (*it)[i];
    const std::string where = "correspondences[" + std::to_string(i) + "]";
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    if (!c.contains("bearing")) throw ParseError(where + ": missing \"bearing\"");
    if (!c.contains("point")) throw ParseError(where + ": missing \"point\"");
    bearings[i] = vec3_from_json(c["bearing"], where + ".bearing");
    points[i] = vec3_from_json(c["point"], where + ".point");
  }
  return P3pProblem({{{BearingVector(bearings[0]), points[0]},
                      {BearingVector(bearings[1]), points[1]},
                      {BearingVector(bearings[2]), points[2]}}});
}

json problem_to_json(const P3pProblem& problem) {
  json corr = json::array();
  for (const Correspondence& c : problem.correspondences()) {
    corr.push_back({{"bearing", vec3_to_json(c.bearing.dir())}, {"point", vec3_to_json(c.point)}});
  }
  return {{"correspondences", corr}};
}

json solution_to_json(const Solution& s) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(vec3_to_json(s.pose.R.row(r)));
  return {{"R", rows}, {"t", vec3_to_json(s.pose.t)}, {"depths", json::array({s.depths[0], s.depths[1], s.depths[2]})}};
}

json solutions_to_json(const SolutionList& solutions) {
  json out = json::array();
  for (const Solution& s : solutions) out.push_back(solution_to_json(s));
  return out;
}

json config_to_json(const SolverConfig& c) {
  return {{"gn_iterations", c.gn_iterations},
          {"denom_epsilon", c.denom_epsilon},
          {"variant", variant_name(c.force_variant)},
          {"reindex", c.reindex_enabled},
          {"d3", d3_name(c.d3_source)}};
}

json spec_to_json(const bench::TrialSpec& spec) {
  return {{"seed", spec.seed},
          {"depth_min", spec.depth_min},
          {"depth_max", spec.depth_max},
          {"image_range", spec.image_range}};
}

json report_to_json(const bench::AggregateReport& r) {
  return {
      {"trials", r.trials},
      {"valid", r.valid},
      {"unique", r.unique},
      {"duplicates", r.duplicates},
      {"good", r.good},
      {"no_solution", r.no_solution},
      {"ground_truth", r.ground_truth},
      {"incorrect", r.incorrect},
      {"incorrect_including_duplicates", r.incorrect_including_duplicates()},
      {"ground_truth_solutions", r.ground_truth_solutions},
      {"xi", {{"statistic", "per_trial_best"}, {"mean", r.xi.mean}, {"median", r.xi.median}, {"max", r.xi.max}}},
  };
}

json trial_record_to_json(const bench::TrialRecord& r) {
  return {{"trial", r.trial},
          {"valid", r.valid_count},
          {"unique", r.unique_count},
          {"duplicates", r.duplicate_count},
          {"incorrect", r.incorrect_count},
          {"ground_truth_solutions", r.ground_truth_solutions},
          {"good", r.found_good},
          {"ground_truth", r.found_ground_truth},
          {"best_xi", finite_or_null(r.best_xi)},
          {"solver_time_ns", r.solver_time_ns}};
}

json timing_to_json(const bench::TimingStats& s) {
  return {{"trials", s.trials},    {"repeats", s.repeats},     {"mean_ns", s.mean_ns}, {"median_ns", s.median_ns},
          {"min_ns", s.min_ns},    {"max_ns", s.max_ns},       {"checksum", s.checksum}};
}

json ablation_to_json(const std::vector<bench::AblationColumn>& columns) {
  json out = json::array();
  for (const auto& col : columns) {
    out.push_back({{"name", col.name}, {"config", config_to_json(col.config)}, {"report", report_to_json(col.report)}});
  }
  return out;
}

std::string reports_to_csv(const std::vector<std::string>& names, const std::vector<bench::AggregateReport>& reports) {
  std::ostringstream os;
  os << "category";
  for (const auto& n : names) os << ',' << n;
  os << '\n';

  const auto row = [&](const char* label, auto field) {
    os << label;
    for (const auto& r : reports) os << ',' << field(r);
    os << '\n';
  };
  using bench::AggregateReport;
  row("Valid", [](const AggregateReport& r) { return r.valid; });
  row("Unique", [](const AggregateReport& r) { return r.unique; });
  row("Duplicates", [](const AggregateReport& r) { return r.duplicates; });
  row("Good", [](const AggregateReport& r) { return r.good; });
  row("No solution", [](const AggregateReport& r) { return r.no_solution; });
  row("Ground truth", [](const AggregateReport& r) { return r.ground_truth; });
  row("Incorrect", [](const AggregateReport& r) { return r.incorrect; });
  return os.str();
}

}  // namespace p3p::io
