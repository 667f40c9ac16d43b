#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "p3p/geometry.hpp"
#include "p3p/solver.hpp"

namespace p3p::bench {

// Classification thresholds.
inline constexpr double kDuplicateDistance = 1e-5;
inline constexpr double kDeterminantTolerance = 1e-6;
inline constexpr double kOrthogonalityTolerance = 1e-6;
inline constexpr double kQuaternionNormTolerance = 1e-5;
inline constexpr double kReprojectionTolerance = 1e-4;
inline constexpr double kGroundTruthXi = 1e-6;

struct TrialSpec {
  std::uint64_t seed = 0;
  double depth_min = 0.1;
  double depth_max = 10.0;
  double image_range = 1.0;

  /// Throws InvalidArgument unless 0 < depth_min < depth_max and image_range > 0.
  void validate() const;
};

struct GroundTruth {
  Mat3 R;
  Vec3 t;
  std::array<double, 3> depths{};
};

struct GeneratedProblem {
  P3pProblem problem;
  GroundTruth truth;
};

/// Per-trial classification. Valid solutions partition into unique, duplicate and
/// incorrect (a non-duplicate failing the validity or reprojection gate).
struct TrialRecord {
  std::uint64_t trial = 0;
  int valid_count = 0;
  int unique_count = 0;
  int duplicate_count = 0;
  int incorrect_count = 0;
  /// Solutions with xi below the ground-truth threshold, duplicates included.
  int ground_truth_solutions = 0;
  bool found_good = false;
  bool found_ground_truth = false;
  double best_xi = 0.0;  ///< +inf when there are no solutions
  double solver_time_ns = 0.0;
};

struct XiStats {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;

  friend bool operator==(const XiStats&, const XiStats&) = default;
};

struct TimingStats {
  double mean_ns = 0.0;
  double median_ns = 0.0;
  double min_ns = 0.0;
  double max_ns = 0.0;
  std::uint64_t trials = 0;
  int repeats = 0;
  /// Folded over every solve output; keeps the timed calls observable.
  std::uint64_t checksum = 0;
};

struct AggregateReport {
  std::uint64_t trials = 0;
  std::uint64_t valid = 0;
  std::uint64_t unique = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t incorrect = 0;
  std::uint64_t good = 0;
  std::uint64_t no_solution = 0;
  std::uint64_t ground_truth = 0;
  /// Count of all solutions below the ground-truth threshold (not per-trial).
  std::uint64_t ground_truth_solutions = 0;
  /// Statistics over the best (minimum xi) solution of each ground-truth trial.
  XiStats xi;

  /// valid - unique: the bucket where duplicates are also counted as incorrect.
  std::uint64_t incorrect_including_duplicates() const { return valid - unique; }

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

/// One labelled solver configuration of the ablation table.
struct AblationColumn {
  std::string name;
  SolverConfig config;
  AggregateReport report;
};

/// 64-bit avalanche mix of (seed, trial) that seeds a trial's private RNG stream.
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index);

/// Random problem with ground truth: image points in [-r, r]^2 on the z = 1 plane,
/// depths in [depth_min, depth_max], uniform rotation, unit-length translation,
/// world points X = R^T (d m - t). Deterministic in (spec.seed, trial_index).
GeneratedProblem generate_problem(const TrialSpec& spec, std::uint64_t trial_index);

/// xi = ||R_gt - R||_L1 + ||t_gt - t||_L1
double pose_error(const Pose& pose, const GroundTruth& truth);

/// |det R - 1| < 1e-6, ||R^T R - I||_L1 < 1e-6 and |1 - |q(R)|| < 1e-5.
bool is_valid_rotation(const Mat3& R);

/// Every point lands in front of the camera and reprojects within 1e-4 in
/// normalized image coordinates.
bool reprojects(const Pose& pose, const P3pProblem& problem);

TrialRecord classify(const SolutionList& solutions, const P3pProblem& problem, const GroundTruth& truth);

/// Called with every TrialRecord, in trial order, after the run completes.
using TrialSink = std::function<void(const TrialRecord&)>;

/// generate -> solve -> classify over `trials` problems on `threads` workers.
/// Results do not depend on the thread count.
AggregateReport run_benchmark(const TrialSpec& spec, std::uint64_t trials, const SolverConfig& config,
                              unsigned threads = 1, const TrialSink& sink = {});

/// Per-problem average over `repeats` back-to-back solves, summarized over trials.
/// Single-threaded, preceded by a warm-up of 10^4 solves.
TimingStats run_timing(const TrialSpec& spec, std::uint64_t trials, int repeats, const SolverConfig& config,
                       std::uint64_t warmup = 10000);

/// The six configurations: baseline, Ferrari-Lagrange only, classical Ferrari only,
/// reindexing off, d3 from s12, d3 from s13.
std::vector<std::pair<std::string, SolverConfig>> ablation_configs(const SolverConfig& baseline = {});

std::vector<AblationColumn> run_ablation(const TrialSpec& spec, std::uint64_t trials, unsigned threads = 1,
                                         const SolverConfig& baseline = {});

}  // namespace p3p::bench
