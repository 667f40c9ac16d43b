#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "p3p/bench.hpp"
#include "p3p/json_io.hpp"
#include "p3p/solver.hpp"

namespace py = pybind11;

namespace {

using Triple = std::array<double, 3>;
using Matrix = std::array<Triple, 3>;

p3p::Vec3 to_vec(const Triple& v) { return {v[0], v[1], v[2]}; }
Triple from_vec(const p3p::Vec3& v) { return {v.x, v.y, v.z}; }

p3p::Mat3 to_mat(const Matrix& m) {
  return p3p::Mat3::from_rows(to_vec(m[0]), to_vec(m[1]), to_vec(m[2]));
}

Matrix from_mat(const p3p::Mat3& m) { return {from_vec(m.row(0)), from_vec(m.row(1)), from_vec(m.row(2))}; }

p3p::P3pProblem make_problem(const std::array<Triple, 3>& bearings, const std::array<Triple, 3>& points) {
  return p3p::P3pProblem({{{p3p::BearingVector(to_vec(bearings[0])), to_vec(points[0])},
                           {p3p::BearingVector(to_vec(bearings[1])), to_vec(points[1])},
                           {p3p::BearingVector(to_vec(bearings[2])), to_vec(points[2])}}});
}

py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_python(e));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default: return py::none();
  }
}

p3p::QuarticVariant parse_variant(const std::string& name) {
  if (name == "adaptive") return p3p::QuarticVariant::Adaptive;
  if (name == "fl") return p3p::QuarticVariant::FerrariLagrangeOnly;
  if (name == "cf") return p3p::QuarticVariant::ClassicalOnly;
  throw py::value_error("variant must be one of adaptive, fl, cf");
}

p3p::D3Source parse_d3(const std::string& name) {
  if (name == "s12") return p3p::D3Source::FromS12;
  if (name == "s13") return p3p::D3Source::FromS13;
  if (name == "s23") return p3p::D3Source::FromS23;
  throw py::value_error("d3 must be one of s12, s13, s23");
}

p3p::bench::TrialSpec make_spec(std::uint64_t seed) {
  p3p::bench::TrialSpec spec;
  spec.seed = seed;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Perspective-three-point solver via a single quartic, with a synthetic benchmark";

  auto base = py::register_exception<p3p::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<p3p::DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<p3p::CollinearPoints>(m, "CollinearPoints", base.ptr());

  py::class_<p3p::SolverConfig>(m, "SolverConfig")
      .def(py::init([](int gn_iterations, const std::string& variant, bool reindex, const std::string& d3,
                       double denom_epsilon) {
             p3p::SolverConfig c;
             c.gn_iterations = gn_iterations;
             c.force_variant = parse_variant(variant);
             c.reindex_enabled = reindex;
             c.d3_source = parse_d3(d3);
             c.denom_epsilon = denom_epsilon;
             c.validate();
             return c;
           }),
           py::arg("gn_iterations") = 2, py::arg("variant") = "adaptive", py::arg("reindex") = true,
           py::arg("d3") = "s23", py::arg("denom_epsilon") = 1e-14)
      .def_readonly("gn_iterations", &p3p::SolverConfig::gn_iterations)
      .def_readonly("reindex", &p3p::SolverConfig::reindex_enabled)
      .def_readonly("denom_epsilon", &p3p::SolverConfig::denom_epsilon);

  py::class_<p3p::Solution>(m, "Solution")
      .def_property_readonly("R", [](const p3p::Solution& s) { return from_mat(s.pose.R); })
      .def_property_readonly("t", [](const p3p::Solution& s) { return from_vec(s.pose.t); })
      .def_property_readonly("depths", [](const p3p::Solution& s) { return s.depths; })
      .def("__repr__", [](const p3p::Solution& s) {
        return "Solution(t=[" + std::to_string(s.pose.t.x) + ", " + std::to_string(s.pose.t.y) + ", " +
               std::to_string(s.pose.t.z) + "])";
      });

  m.def(
      "solve",
      [](const std::array<Triple, 3>& bearings, const std::array<Triple, 3>& points,
         const p3p::SolverConfig& config) {
        const auto sols = p3p::solve(make_problem(bearings, points), config);
        return std::vector<p3p::Solution>(sols.begin(), sols.end());
      },
      py::arg("bearings"), py::arg("points"), py::arg("config") = p3p::SolverConfig{},
      "Candidate poses (R, t) with d_i m_i = R X_i + t; at most four.");

  m.def(
      "solve_json",
      [](const std::string& problem_json, const p3p::SolverConfig& config) {
        const auto problem = p3p::io::problem_from_json(nlohmann::json::parse(problem_json));
        return p3p::io::solutions_to_json(p3p::solve(problem, config)).dump();
      },
      py::arg("problem_json"), py::arg("config") = p3p::SolverConfig{},
      "Solve a problem given in the JSON problem format; returns the JSON solution array.");

  m.def(
      "solve_quartic",
      [](const std::array<double, 5>& c, const std::string& variant) {
        const auto roots = p3p::solve_quartic({c[0], c[1], c[2], c[3], c[4]}, parse_variant(variant));
        return std::vector<double>(roots.begin(), roots.end());
      },
      py::arg("coeffs"), py::arg("variant") = "adaptive",
      "Real roots of c4 x^4 + ... + c0 given coeffs = (c4, c3, c2, c1, c0).");

  m.def(
      "rotation_to_quaternion",
      [](const Matrix& r) {
        const p3p::Quaternion q = p3p::rotation_to_quaternion(to_mat(r));
        return std::array<double, 4>{q.w, q.x, q.y, q.z};
      },
      py::arg("R"));

  m.def(
      "generate_problem",
      [](std::uint64_t seed, std::uint64_t trial) {
        const auto gen = p3p::bench::generate_problem(make_spec(seed), trial);
        py::dict out;
        py::list bearings, points;
        for (std::size_t i = 0; i < 3; ++i) {
          bearings.append(from_vec(gen.problem.bearing(i)));
          points.append(from_vec(gen.problem.point(i)));
        }
        out["bearings"] = bearings;
        out["points"] = points;
        out["R"] = from_mat(gen.truth.R);
        out["t"] = from_vec(gen.truth.t);
        out["depths"] = gen.truth.depths;
        return out;
      },
      py::arg("seed"), py::arg("trial"));

  m.def(
      "pose_error",
      [](const Matrix& R, const Triple& t, const Matrix& R_gt, const Triple& t_gt) {
        p3p::Pose pose{to_mat(R), to_vec(t)};
        p3p::bench::GroundTruth gt{to_mat(R_gt), to_vec(t_gt), {}};
        return p3p::bench::pose_error(pose, gt);
      },
      py::arg("R"), py::arg("t"), py::arg("R_gt"), py::arg("t_gt"));

  m.def(
      "run_benchmark",
      [](std::uint64_t trials, std::uint64_t seed, unsigned threads, const p3p::SolverConfig& config) {
        p3p::bench::AggregateReport report;
        {
          py::gil_scoped_release release;
          report = p3p::bench::run_benchmark(make_spec(seed), trials, config, threads);
        }
        return to_python(p3p::io::report_to_json(report));
      },
      py::arg("trials"), py::arg("seed") = 0, py::arg("threads") = 1, py::arg("config") = p3p::SolverConfig{});

  m.def(
      "run_ablation",
      [](std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        std::vector<p3p::bench::AblationColumn> columns;
        {
          py::gil_scoped_release release;
          columns = p3p::bench::run_ablation(make_spec(seed), trials, threads);
        }
        return to_python(p3p::io::ablation_to_json(columns));
      },
      py::arg("trials"), py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "run_timing",
      [](std::uint64_t trials, int repeats, std::uint64_t seed, const p3p::SolverConfig& config) {
        p3p::bench::TimingStats stats;
        {
          py::gil_scoped_release release;
          stats = p3p::bench::run_timing(make_spec(seed), trials, repeats, config);
        }
        return to_python(p3p::io::timing_to_json(stats));
      },
      py::arg("trials"), py::arg("repeats") = 10, py::arg("seed") = 0, py::arg("config") = p3p::SolverConfig{});
}
