#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "p3p/bench.hpp"
#include "p3p/geometry.hpp"
#include "p3p/solver.hpp"

namespace p3p::io {

/// Malformed or incomplete JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// {"correspondences": [{"bearing": [x,y,z], "point": [x,y,z]}, x3]}. Bearings are
/// normalized on load. Throws ParseError for schema violations; geometric
/// problems surface as InvalidArgument or DegenerateInput.
P3pProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const P3pProblem& problem);

/// {"R": [[..],[..],[..]], "t": [x,y,z], "depths": [d1,d2,d3]}
nlohmann::json solution_to_json(const Solution& solution);
nlohmann::json solutions_to_json(const SolutionList& solutions);

nlohmann::json config_to_json(const SolverConfig& config);
nlohmann::json spec_to_json(const bench::TrialSpec& spec);

nlohmann::json report_to_json(const bench::AggregateReport& report);
nlohmann::json trial_record_to_json(const bench::TrialRecord& record);
nlohmann::json timing_to_json(const bench::TimingStats& stats);
nlohmann::json ablation_to_json(const std::vector<bench::AblationColumn>& columns);

/// Table-ordered rows: Valid, Unique, Duplicates, Good, No solution, Ground truth,
/// Incorrect; one value column per report.
std::string reports_to_csv(const std::vector<std::string>& names,
                           const std::vector<bench::AggregateReport>& reports);

}  // namespace p3p::io
