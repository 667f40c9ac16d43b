#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "p3p/bench.hpp"
#include "p3p/errors.hpp"
#include "p3p/json_io.hpp"
#include "p3p/solver.hpp"

namespace p3p::cli {

namespace {

using nlohmann::json;

struct SolverFlags {
  int gn_iters = 2;
  std::string variant = "adaptive";
  bool no_reindex = false;
  std::string d3 = "s23";

  SolverConfig config() const {
    SolverConfig c;
    c.gn_iterations = gn_iters;
    c.reindex_enabled = !no_reindex;
    if (variant == "fl") c.force_variant = QuarticVariant::FerrariLagrangeOnly;
    if (variant == "cf") c.force_variant = QuarticVariant::ClassicalOnly;
    if (d3 == "s12") c.d3_source = D3Source::FromS12;
    if (d3 == "s13") c.d3_source = D3Source::FromS13;
    return c;
  }
};

struct RunFlags {
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0;
  int repeats = 10;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string out_path;
  std::string dump_path;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--gn-iters", f.gn_iters, "Gauss-Newton iterations on the depths")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  cmd->add_option("--variant", f.variant, "Quartic solver: adaptive, fl (Ferrari-Lagrange), cf (classical)")
      ->check(CLI::IsMember({"adaptive", "fl", "cf"}))
      ->capture_default_str();
  cmd->add_flag("--no-reindex", f.no_reindex, "Keep the input correspondence order");
  // the eq* spellings are older aliases and stay accepted
  cmd->add_option("--d3", f.d3, "Distance used to recover d3: s12, s13 or s23")
      ->transform(CLI::CheckedTransformer(std::map<std::string, std::string>{{"s12", "s12"},
                                                                             {"s13", "s13"},
                                                                             {"s23", "s23"},
                                                                             {"eq14", "s12"},
                                                                             {"eq15", "s13"},
                                                                             {"eq16", "s23"}},
                                          CLI::ignore_case))
      ->capture_default_str();
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--trials", f.trials, "Number of simulated problems")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed of the problem generator")->capture_default_str();
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", f.out_path, "Write the report here instead of standard output");
}

// Writes to --out when given, otherwise to `out`.
bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  file << text;
  return static_cast<bool>(file);
}

int cmd_solve(const std::string& input, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    if (input == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream file(input);
      if (!file) {
        err << "error: cannot open " << input << '\n';
        return kExitUsage;
      }
      doc = json::parse(file);
    }
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const P3pProblem problem = io::problem_from_json(doc);
    const SolutionList solutions = solve(problem, flags.config());
    out << io::solutions_to_json(solutions).dump(2) << '\n';
    return kExitOk;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CollinearPoints& e) {
    err << "error: degenerate geometry: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const DegenerateInput& e) {
    err << "error: degenerate geometry: " << e.what() << '\n';
    return kExitDegenerate;
  }
}

json run_header(const char* command, const RunFlags& run, const bench::TrialSpec& spec) {
  return {{"command", command}, {"trials", run.trials}, {"spec", io::spec_to_json(spec)}};
}

int cmd_bench(const RunFlags& run, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  bench::TrialSpec spec;
  spec.seed = run.seed;
  const SolverConfig config = flags.config();

  std::unique_ptr<std::ofstream> dump;
  bench::TrialSink sink;
  if (!run.dump_path.empty()) {
    dump = std::make_unique<std::ofstream>(run.dump_path, std::ios::binary);
    if (!*dump) {
      err << "error: cannot open " << run.dump_path << " for writing\n";
      return kExitUsage;
    }
    sink = [&dump](const bench::TrialRecord& rec) { *dump << io::trial_record_to_json(rec).dump() << '\n'; };
  }

  const bench::AggregateReport report = bench::run_benchmark(spec, run.trials, config, run.threads, sink);

  std::string text;
  if (run.format == "csv") {
    text = io::reports_to_csv({"baseline"}, {report});
  } else {
    json doc = run_header("bench", run, spec);
    doc["config"] = io::config_to_json(config);
    doc["report"] = io::report_to_json(report);
    text = doc.dump(2) + "\n";
  }
  return emit(text, run.out_path, out, err) ? kExitOk : kExitUsage;
}

int cmd_time(const RunFlags& run, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  bench::TrialSpec spec;
  spec.seed = run.seed;
  const SolverConfig config = flags.config();
  const bench::TimingStats stats = bench::run_timing(spec, run.trials, run.repeats, config);

  std::string text;
  if (run.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "statistic,time_ns\nMean," << stats.mean_ns << "\nMedian," << stats.median_ns << "\nMinimum,"
       << stats.min_ns << "\nMaximum," << stats.max_ns << '\n';
    text = os.str();
  } else {
    json doc = run_header("time", run, spec);
    doc["config"] = io::config_to_json(config);
    doc["timing"] = io::timing_to_json(stats);
    text = doc.dump(2) + "\n";
  }
  return emit(text, run.out_path, out, err) ? kExitOk : kExitUsage;
}

int cmd_ablate(const RunFlags& run, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  bench::TrialSpec spec;
  spec.seed = run.seed;
  const auto columns = bench::run_ablation(spec, run.trials, run.threads, flags.config());

  std::string text;
  if (run.format == "csv") {
    std::vector<std::string> names;
    std::vector<bench::AggregateReport> reports;
    for (const auto& c : columns) {
      names.push_back(c.name);
      reports.push_back(c.report);
    }
    text = io::reports_to_csv(names, reports);
  } else {
    json doc = run_header("ablate", run, spec);
    doc["columns"] = io::ablation_to_json(columns);
    text = doc.dump(2) + "\n";
  }
  return emit(text, run.out_path, out, err) ? kExitOk : kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perspective-three-point solver and synthetic benchmark", "p3p"};
  app.require_subcommand(1);

  SolverFlags solver_flags;
  RunFlags run_flags;
  std::string input;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem read from a JSON file");
  solve_cmd->add_option("input", input, "Problem file, or - for standard input")->required();
  add_solver_flags(solve_cmd, solver_flags);

  CLI::App* bench_cmd = app.add_subcommand("bench", "Accuracy benchmark on simulated problems");
  add_run_flags(bench_cmd, run_flags);
  add_solver_flags(bench_cmd, solver_flags);
  bench_cmd->add_option("--threads", run_flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--dump-trials", run_flags.dump_path, "Write one JSON line per trial to this file");

  CLI::App* time_cmd = app.add_subcommand("time", "Solver timing on simulated problems (single thread)");
  add_run_flags(time_cmd, run_flags);
  add_solver_flags(time_cmd, solver_flags);
  time_cmd->add_option("--repeats", run_flags.repeats, "Solves per problem")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  unsigned time_threads = 1;
  time_cmd->add_option("--threads", time_threads, "Accepted for symmetry; timing always uses one thread")
      ->check(CLI::PositiveNumber);

  CLI::App* ablate_cmd = app.add_subcommand("ablate", "Benchmark the six ablation configurations");
  add_run_flags(ablate_cmd, run_flags);
  add_solver_flags(ablate_cmd, solver_flags);
  ablate_cmd->add_option("--threads", run_flags.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("p3p");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(input, solver_flags, out, err);
    if (bench_cmd->parsed()) return cmd_bench(run_flags, solver_flags, out, err);
    if (time_cmd->parsed()) {
      if (time_threads != 1) err << "note: timing runs single-threaded; --threads ignored\n";
      return cmd_time(run_flags, solver_flags, out, err);
    }
    if (ablate_cmd->parsed()) return cmd_ablate(run_flags, solver_flags, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace p3p::cli
