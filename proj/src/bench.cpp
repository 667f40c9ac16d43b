#include "p3p/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "p3p/errors.hpp"

namespace p3p::bench {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Counters and ground-truth errors of a contiguous block of trials.
struct Partial {
  AggregateReport counts;
  std::vector<double> gt_best_xi;  // in trial order
  std::vector<TrialRecord> records;
};

TrialRecord run_trial(const TrialSpec& spec, std::uint64_t trial, const SolverConfig& config) {
  const GeneratedProblem gen = generate_problem(spec, trial);
  SolutionList solutions;
  try {
    solutions = solve(gen.problem, config);
  } catch (const DegenerateInput&) {
  } catch (const CollinearPoints&) {
  }
  TrialRecord rec = classify(solutions, gen.problem, gen.truth);
  rec.trial = trial;
  return rec;
}

void accumulate(AggregateReport& agg, const TrialRecord& rec) {
  agg.trials += 1;
  agg.valid += static_cast<std::uint64_t>(rec.valid_count);
  agg.unique += static_cast<std::uint64_t>(rec.unique_count);
  agg.duplicates += static_cast<std::uint64_t>(rec.duplicate_count);
  agg.incorrect += static_cast<std::uint64_t>(rec.incorrect_count);
  agg.ground_truth_solutions += static_cast<std::uint64_t>(rec.ground_truth_solutions);
  if (rec.found_good) {
    agg.good += 1;
  } else {
    agg.no_solution += 1;
  }
  if (rec.found_ground_truth) agg.ground_truth += 1;
}

}  // namespace

void TrialSpec::validate() const {
  if (!(depth_min > 0.0 && depth_min < depth_max && std::isfinite(depth_max))) {
    throw InvalidArgument("depth range must satisfy 0 < depth_min < depth_max");
  }
  if (!(image_range > 0.0 && std::isfinite(image_range))) {
    throw InvalidArgument("image_range must be positive");
  }
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(splitmix64(seed) ^ (trial_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

GeneratedProblem generate_problem(const TrialSpec& spec, std::uint64_t trial_index) {
  spec.validate();
  std::mt19937_64 rng(trial_stream_seed(spec.seed, trial_index));
  std::uniform_real_distribution<double> image(-spec.image_range, spec.image_range);
  std::uniform_real_distribution<double> depth(spec.depth_min, spec.depth_max);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (;;) {
    std::array<Vec3, 3> bearings;
    std::array<double, 3> depths{};
    for (std::size_t i = 0; i < 3; ++i) {
      const double u = image(rng);
      const double v = image(rng);
      bearings[i] = Vec3{u, v, 1.0} / std::sqrt(u * u + v * v + 1.0);
    }
    for (std::size_t i = 0; i < 3; ++i) depths[i] = depth(rng);

    Quaternion q;
    do {
      q = {normal(rng), normal(rng), normal(rng), normal(rng)};
    } while (q.norm() < 1e-6);
    const Mat3 R = quaternion_to_rotation(q);

    Vec3 t;
    do {
      t = {normal(rng), normal(rng), normal(rng)};
    } while (norm(t) < 1e-6);
    t = t / norm(t);

    const Mat3 Rt = transpose(R);
    try {
      std::array<Correspondence, 3> corr{{
          {BearingVector(bearings[0]), Rt * (depths[0] * bearings[0] - t)},
          {BearingVector(bearings[1]), Rt * (depths[1] * bearings[1] - t)},
          {BearingVector(bearings[2]), Rt * (depths[2] * bearings[2] - t)},
      }};
      return {P3pProblem(corr), GroundTruth{R, t, depths}};
    } catch (const Error&) {
      // coincident bearings or points: draw again from the same stream
    }
  }
}

double pose_error(const Pose& pose, const GroundTruth& truth) {
  return l1_distance(truth.R, pose.R) + l1_distance(truth.t, pose.t);
}

bool is_valid_rotation(const Mat3& R) {
  if (!(std::abs(determinant(R) - 1.0) < kDeterminantTolerance)) return false;
  if (!(l1_distance(transpose(R) * R, Mat3::identity()) < kOrthogonalityTolerance)) return false;
  return std::abs(1.0 - rotation_to_quaternion(R).norm()) < kQuaternionNormTolerance;
}

bool reprojects(const Pose& pose, const P3pProblem& problem) {
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& m = problem.bearing(i);
    const Vec3 p = pose.R * problem.point(i) + pose.t;
    if (!(dot(m, p) > 0.0) || p.z == 0.0) return false;
    const double du = p.x / p.z - m.x / m.z;
    const double dv = p.y / p.z - m.y / m.z;
    if (!(std::hypot(du, dv) < kReprojectionTolerance)) return false;
  }
  return true;
}

TrialRecord classify(const SolutionList& solutions, const P3pProblem& problem, const GroundTruth& truth) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(problem.bearing(i).z > 0.0)) {
      throw InvalidArgument("reprojection needs bearings with positive z");
    }
  }

  TrialRecord rec;
  rec.best_xi = std::numeric_limits<double>::infinity();
  rec.valid_count = static_cast<int>(solutions.size());
  for (std::size_t j = 0; j < solutions.size(); ++j) {
    const Pose& pose = solutions[j].pose;
    const double xi = pose_error(pose, truth);
    rec.best_xi = std::min(rec.best_xi, xi);
    if (xi < kGroundTruthXi) {
      rec.ground_truth_solutions += 1;
      rec.found_ground_truth = true;
    }

    bool duplicate = false;
    for (std::size_t i = 0; i < j && !duplicate; ++i) {
      const Pose& earlier = solutions[i].pose;
      duplicate = l1_distance(pose.R, earlier.R) + l1_distance(pose.t, earlier.t) < kDuplicateDistance;
    }
    if (duplicate) {
      rec.duplicate_count += 1;
    } else if (is_valid_rotation(pose.R) && reprojects(pose, problem)) {
      rec.unique_count += 1;
    } else {
      rec.incorrect_count += 1;
    }
  }
  rec.found_good = rec.unique_count >= 1;
  return rec;
}

AggregateReport run_benchmark(const TrialSpec& spec, std::uint64_t trials, const SolverConfig& config,
                              unsigned threads, const TrialSink& sink) {
  spec.validate();
  config.validate();
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  threads = std::max(1u, threads);
  const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(threads, trials));

  std::vector<Partial> partials(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = trials * w / workers;
      const std::uint64_t end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        Partial& part = partials[w];
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          const TrialRecord rec = run_trial(spec, trial, config);
          accumulate(part.counts, rec);
          if (rec.found_ground_truth) part.gt_best_xi.push_back(rec.best_xi);
          if (sink) part.records.push_back(rec);
        }
      });
    }
  }

  AggregateReport report;
  std::vector<double> gt_xi;
  for (Partial& part : partials) {
    const AggregateReport& c = part.counts;
    report.trials += c.trials;
    report.valid += c.valid;
    report.unique += c.unique;
    report.duplicates += c.duplicates;
    report.incorrect += c.incorrect;
    report.good += c.good;
    report.no_solution += c.no_solution;
    report.ground_truth += c.ground_truth;
    report.ground_truth_solutions += c.ground_truth_solutions;
    gt_xi.insert(gt_xi.end(), part.gt_best_xi.begin(), part.gt_best_xi.end());
    if (sink) {
      for (const TrialRecord& rec : part.records) sink(rec);
    }
  }

  if (!gt_xi.empty()) {
    // summed in trial order so the mean does not depend on the worker split
    const double sum = std::accumulate(gt_xi.begin(), gt_xi.end(), 0.0);
    report.xi.mean = sum / static_cast<double>(gt_xi.size());
    report.xi.max = *std::max_element(gt_xi.begin(), gt_xi.end());
    report.xi.median = median_of(std::move(gt_xi));
  }
  return report;
}

TimingStats run_timing(const TrialSpec& spec, std::uint64_t trials, int repeats, const SolverConfig& config,
                       std::uint64_t warmup) {
  spec.validate();
  config.validate();
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  if (repeats < 1) throw InvalidArgument("repeats must be at least 1");

  using Clock = std::chrono::steady_clock;
  std::uint64_t checksum = 0;
  const auto fold = [&checksum](const SolutionList& sols) {
    checksum = checksum * 0x100000001b3ULL + sols.size();
    for (const Solution& s : sols) checksum ^= std::bit_cast<std::uint64_t>(s.pose.t.x);
  };

  if (warmup > 0) {
    const GeneratedProblem gen = generate_problem(spec, 0);
    for (std::uint64_t i = 0; i < warmup; ++i) fold(solve(gen.problem, config));
  }

  std::vector<double> averages;
  averages.reserve(trials);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const GeneratedProblem gen = generate_problem(spec, trial);
    const auto start = Clock::now();
    for (int r = 0; r < repeats; ++r) fold(solve(gen.problem, config));
    const auto stop = Clock::now();
    const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
    averages.push_back(ns / repeats);
  }

  TimingStats stats;
  stats.trials = trials;
  stats.repeats = repeats;
  stats.checksum = checksum;
  stats.mean_ns = std::accumulate(averages.begin(), averages.end(), 0.0) / static_cast<double>(averages.size());
  const auto [lo, hi] = std::minmax_element(averages.begin(), averages.end());
  stats.min_ns = *lo;
  stats.max_ns = *hi;
  stats.median_ns = median_of(std::move(averages));
  return stats;
}

std::vector<std::pair<std::string, SolverConfig>> ablation_configs(const SolverConfig& baseline) {
  std::vector<std::pair<std::string, SolverConfig>> out;
  out.emplace_back("baseline", baseline);

  SolverConfig cfg = baseline;
  cfg.force_variant = QuarticVariant::FerrariLagrangeOnly;
  out.emplace_back("ferrari_lagrange_only", cfg);

  cfg = baseline;
  cfg.force_variant = QuarticVariant::ClassicalOnly;
  out.emplace_back("classical_ferrari_only", cfg);

  cfg = baseline;
  cfg.reindex_enabled = false;
  out.emplace_back("no_reindex", cfg);

  cfg = baseline;
  cfg.d3_source = D3Source::FromS12;
  out.emplace_back("d3_from_s12", cfg);

  cfg = baseline;
  cfg.d3_source = D3Source::FromS13;
  out.emplace_back("d3_from_s13", cfg);
  return out;
}

std::vector<AblationColumn> run_ablation(const TrialSpec& spec, std::uint64_t trials, unsigned threads,
                                         const SolverConfig& baseline) {
  std::vector<AblationColumn> columns;
  for (auto& [name, config] : ablation_configs(baseline)) {
    columns.push_back({name, config, run_benchmark(spec, trials, config, threads)});
  }
  return columns;
}

}  // namespace p3p::bench
