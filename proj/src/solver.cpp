#include "p3p/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "p3p/errors.hpp"

namespace p3p {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

double inf_norm(const Vec3& v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

// Columns X1 - X2, X1 - X3 and their cross product.
Mat3 point_frame(const P3pProblem& problem) {
  const Vec3 e12 = problem.point(0) - problem.point(1);
  const Vec3 e13 = problem.point(0) - problem.point(2);
  return Mat3::from_columns(e12, e13, cross(e12, e13));
}

Mat3 invert_point_frame(const Mat3& frame) {
  const double det = determinant(frame);
  const double scale = norm(frame.col(0)) * norm(frame.col(1)) * norm(frame.col(2));
  if (!(std::abs(det) >= 1e-18 * scale) || det == 0.0) {
    throw CollinearPoints("world points are collinear");
  }
  return (1.0 / det) * adjugate(frame);
}

Pose align_with(const DepthTriple& d, const P3pProblem& problem, const Mat3& frame_inv) {
  const Vec3 p1 = d.d1 * problem.bearing(0);
  const Vec3 y1 = p1 - d.d2 * problem.bearing(1);
  const Vec3 y2 = p1 - d.d3 * problem.bearing(2);
  Pose pose;
  pose.R = Mat3::from_columns(y1, y2, cross(y1, y2)) * frame_inv;
  pose.t = p1 - pose.R * problem.point(0);
  return pose;
}

// Real roots of a y^2 + b y + c, falling back to the linear case when a vanishes
// relative to the other coefficients.
StaticVector<double, 2> quadratic_roots(double a, double b, double c) {
  StaticVector<double, 2> out;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return out;
  if (std::abs(a) <= 1e-12 * scale) {
    if (std::abs(b) > 1e-12 * scale) out.push_back(-c / b);
    return out;
  }
  const double half = -0.5 * b / a;
  const double disc = half * half - c / a;
  if (disc < 0.0) return out;
  const double big = half + std::copysign(std::sqrt(disc), half);
  if (big == 0.0) {
    out.push_back(0.0);
    return out;
  }
  out.push_back(big);
  out.push_back((c / a) / big);
  return out;
}

}  // namespace

double PairwiseData::max_s() const { return std::max({s12, s13, s23}); }

void SolverConfig::validate() const {
  if (gn_iterations < 0 || gn_iterations > 16) {
    throw InvalidArgument("gn_iterations must lie in [0, 16]");
  }
  if (!(denom_epsilon > 0.0)) throw InvalidArgument("denom_epsilon must be positive");
}

PairwiseData compute_pairwise(const P3pProblem& problem) {
  PairwiseData data;
  data.m12 = dot(problem.bearing(0), problem.bearing(1));
  data.m13 = dot(problem.bearing(0), problem.bearing(2));
  data.m23 = dot(problem.bearing(1), problem.bearing(2));
  data.s12 = squared_norm(problem.point(0) - problem.point(1));
  data.s13 = squared_norm(problem.point(0) - problem.point(2));
  data.s23 = squared_norm(problem.point(1) - problem.point(2));

  constexpr double kMaxCosine = 1.0 + 1e-12;
  if (!(std::abs(data.m12) <= kMaxCosine && std::abs(data.m13) <= kMaxCosine &&
        std::abs(data.m23) <= kMaxCosine)) {
    throw DegenerateInput("bearing cosine outside [-1, 1]; bearings are not unit vectors");
  }
  if (!(data.s12 >= 1e-24 && data.s13 >= 1e-24 && data.s23 >= 1e-24)) {
    throw DegenerateInput("two world points coincide");
  }
  return data;
}

std::pair<PairwiseData, P3pProblem> canonical_reindex(const PairwiseData& data, const P3pProblem& problem) {
  const std::array<std::array<double, 3>, 3> m{{
      {1.0, data.m12, data.m13},
      {data.m12, 1.0, data.m23},
      {data.m13, data.m23, 1.0},
  }};
  const std::array<std::array<double, 3>, 3> s{{
      {0.0, data.s12, data.s13},
      {data.s12, 0.0, data.s23},
      {data.s13, data.s23, 0.0},
  }};

  for (const auto& perm : kPermutations) {
    const auto i = static_cast<std::size_t>(perm[0]);
    const auto j = static_cast<std::size_t>(perm[1]);
    const auto k = static_cast<std::size_t>(perm[2]);
    if (!(m[i][k] <= m[i][j] && m[i][j] <= m[j][k])) continue;

    PairwiseData out;
    out.m12 = m[i][j];
    out.m13 = m[i][k];
    out.m23 = m[j][k];
    out.s12 = s[i][j];
    out.s13 = s[i][k];
    out.s23 = s[j][k];
    out.perm = {data.perm[i], data.perm[j], data.perm[k]};
    return {out, problem.permuted(perm)};
  }
  // unreachable for finite cosines: some labelling always sorts three values
  return {data, problem};
}

QuarticCoeffs quartic_coefficients(const PairwiseData& d) {
  const double s12_sq = d.s12 * d.s12;
  const double s13_sq = d.s13 * d.s13;
  const double s23_sq = d.s23 * d.s23;
  const double s12_s13 = d.s12 * d.s13;
  const double s12_s23 = d.s12 * d.s23;
  const double s13_s23 = d.s13 * d.s23;

  const double m12_sq = d.m12 * d.m12;
  const double m13_sq = d.m13 * d.m13;
  const double m23_sq = d.m23 * d.m23;
  const double m12_m23 = d.m12 * d.m23;
  const double m12_m13_m23 = m12_m23 * d.m13;

  QuarticCoeffs c;
  c.c4 = -s12_sq + 2.0 * s12_s13 + 2.0 * s12_s23 - s13_sq + 4.0 * s13_s23 * m12_sq - 2.0 * s13_s23 - s23_sq;

  c.c3 = 4.0 * s12_sq * d.m13 - 4.0 * s12_s13 * m12_m23 - 4.0 * s12_s13 * d.m13 - 8.0 * s12_s23 * d.m13 +
         4.0 * s13_sq * m12_m23 - 8.0 * s13_s23 * m12_sq * d.m13 - 4.0 * s13_s23 * m12_m23 +
         4.0 * s13_s23 * d.m13 + 4.0 * s23_sq * d.m13;

  c.c2 = -4.0 * s12_sq * m13_sq - 2.0 * s12_sq + 8.0 * s12_s13 * m12_m13_m23 + 4.0 * s12_s13 * m23_sq +
         8.0 * s12_s23 * m13_sq + 4.0 * s12_s23 - 4.0 * s13_sq * m12_sq - 4.0 * s13_sq * m23_sq +
         2.0 * s13_sq + 4.0 * s13_s23 * m12_sq + 8.0 * s13_s23 * m12_m13_m23 - 4.0 * s23_sq * m13_sq -
         2.0 * s23_sq;

  c.c1 = 4.0 * s12_sq * d.m13 - 4.0 * s12_s13 * m12_m23 - 8.0 * s12_s13 * d.m13 * m23_sq +
         4.0 * s12_s13 * d.m13 - 8.0 * s12_s23 * d.m13 + 4.0 * s13_sq * m12_m23 - 4.0 * s13_s23 * m12_m23 -
         4.0 * s13_s23 * d.m13 + 4.0 * s23_sq * d.m13;

  c.c0 = -s12_sq + 4.0 * s12_s13 * m23_sq - 2.0 * s12_s13 + 2.0 * s12_s23 - s13_sq + 2.0 * s13_s23 - s23_sq;
  return c;
}

YRecovery recover_y(double x, const PairwiseData& d, double denom_epsilon) {
  const double lin = d.m12 * x - d.m23;
  if (std::abs(lin) < denom_epsilon * std::max(1.0, std::abs(x))) {
    return {YRecovery::Status::VanishingDenominator, 0.0};
  }
  const double A = -d.s12 + d.s23 + d.s13;
  const double B = 2.0 * (d.s12 - d.s23) * d.m13;
  const double C = -d.s12 + d.s23 - d.s13;
  const double y = ((A * x + B) * x + C) / (2.0 * d.s13 * lin);
  if (!(y > 0.0)) return {YRecovery::Status::NonPositive, y};
  return {YRecovery::Status::Ok, y};
}

StaticVector<double, 2> recover_y_degenerate(double x, const PairwiseData& d) {
  const double a = d.s12 / d.s23;
  const double b = d.s13 / d.s23;

  // x^2 - 2 m12 x y + (1 - a) y^2 + 2 a m23 y - a = 0
  const auto conic_a = [&](double y) {
    const std::array<double, 5> terms{x * x, -2.0 * d.m12 * x * y, (1.0 - a) * y * y, 2.0 * a * d.m23 * y, -a};
    return terms;
  };
  // x^2 - b y^2 - 2 m13 x + 2 b m23 y + 1 - b = 0
  const auto conic_b = [&](double y) {
    const std::array<double, 6> terms{x * x, -b * y * y, -2.0 * d.m13 * x, 2.0 * b * d.m23 * y, 1.0, -b};
    return terms;
  };
  const auto satisfied = [](const auto& terms) {
    double sum = 0.0;
    double mag = 0.0;
    for (double t : terms) {
      sum += t;
      mag += std::abs(t);
    }
    return std::abs(sum) <= 1e-6 * mag;
  };

  StaticVector<double, 4> candidates;
  for (double y : quadratic_roots(1.0 - a, 2.0 * (a * d.m23 - d.m12 * x), x * x - a)) {
    if (y > 0.0 && satisfied(conic_b(y))) candidates.push_back(y);
  }
  for (double y : quadratic_roots(-b, 2.0 * b * d.m23, x * x - 2.0 * d.m13 * x + 1.0 - b)) {
    if (y > 0.0 && satisfied(conic_a(y))) candidates.push_back(y);
  }
  std::sort(candidates.begin(), candidates.end());

  StaticVector<double, 2> out;
  for (double y : candidates) {
    if (!out.empty() && std::abs(y - out[out.size() - 1]) <= 1e-9 * y) continue;
    if (out.size() == out.capacity()) break;
    out.push_back(y);
  }
  return out;
}

std::optional<DepthTriple> recover_depths(double x, double y, const PairwiseData& d, D3Source source) {
  double num = 0.0;
  double den = 0.0;
  switch (source) {
    case D3Source::FromS12:
      num = d.s12;
      den = x * x - 2.0 * x * y * d.m12 + y * y;
      break;
    case D3Source::FromS13:
      num = d.s13;
      den = x * x - 2.0 * x * d.m13 + 1.0;
      break;
    case D3Source::FromS23:
      num = d.s23;
      den = y * y - 2.0 * y * d.m23 + 1.0;
      break;
  }
  if (!(den > 0.0)) return std::nullopt;
  const double d3 = std::sqrt(num / den);
  if (!(d3 > 0.0) || !std::isfinite(d3)) return std::nullopt;
  return DepthTriple{x * d3, y * d3, d3};
}

Vec3 law_of_cosines_residual(const DepthTriple& d, const PairwiseData& p) {
  return {d.d1 * d.d1 + d.d2 * d.d2 - 2.0 * d.d1 * d.d2 * p.m12 - p.s12,
          d.d1 * d.d1 + d.d3 * d.d3 - 2.0 * d.d1 * d.d3 * p.m13 - p.s13,
          d.d2 * d.d2 + d.d3 * d.d3 - 2.0 * d.d2 * d.d3 * p.m23 - p.s23};
}

DepthTriple refine_depths_gauss_newton(const DepthTriple& start, const PairwiseData& p, int iterations) {
  DepthTriple d = start;
  const double tolerance = 1e-15 * p.max_s();
  Vec3 f = law_of_cosines_residual(d, p);
  double f_norm = inf_norm(f);

  for (int it = 0; it < iterations; ++it) {
    if (f_norm < tolerance) break;
    const Mat3 jacobian{{
        2.0 * d.d1 - 2.0 * d.d2 * p.m12, 2.0 * d.d2 - 2.0 * d.d1 * p.m12, 0.0,
        2.0 * d.d1 - 2.0 * d.d3 * p.m13, 0.0, 2.0 * d.d3 - 2.0 * d.d1 * p.m13,
        0.0, 2.0 * d.d2 - 2.0 * d.d3 * p.m23, 2.0 * d.d3 - 2.0 * d.d2 * p.m23,
    }};
    const auto step = solve_linear(jacobian, -f, 1e-300);
    if (!step) break;

    const DepthTriple next{d.d1 + step->x, d.d2 + step->y, d.d3 + step->z};
    if (!(next.d1 > 0.0 && next.d2 > 0.0 && next.d3 > 0.0)) break;
    const Vec3 f_next = law_of_cosines_residual(next, p);
    const double f_next_norm = inf_norm(f_next);
    if (!(f_next_norm <= f_norm)) break;

    d = next;
    f = f_next;
    f_norm = f_next_norm;
  }
  return d;
}

Pose align_pose(const DepthTriple& d, const P3pProblem& problem) {
  return align_with(d, problem, invert_point_frame(point_frame(problem)));
}

SolutionList solve(const P3pProblem& problem, const SolverConfig& config) {
  config.validate();
  PairwiseData data = compute_pairwise(problem);
  P3pProblem work = problem;
  if (config.reindex_enabled) std::tie(data, work) = canonical_reindex(data, problem);
  const Mat3 frame_inv = invert_point_frame(point_frame(work));

  SolutionList solutions;
  RealRoots roots;
  try {
    roots = solve_quartic(quartic_coefficients(data), config.force_variant);
  } catch (const NoPolynomial&) {
    // all coefficients vanish: no usable constraint on x
    return solutions;
  }

  const auto emit = [&](double x, double y) {
    if (solutions.size() == solutions.capacity()) return;
    const auto depths = recover_depths(x, y, data, config.d3_source);
    if (!depths) return;
    const DepthTriple refined = refine_depths_gauss_newton(*depths, data, config.gn_iterations);

    Solution sol;
    sol.pose = align_with(refined, work, frame_inv);
    const std::array<double, 3> local{refined.d1, refined.d2, refined.d3};
    for (std::size_t i = 0; i < 3; ++i) sol.depths[static_cast<std::size_t>(data.perm[i])] = local[i];
    solutions.push_back(sol);
  };

  for (double x : roots) {
    if (!(x > 0.0)) continue;
    const YRecovery yr = recover_y(x, data, config.denom_epsilon);
    if (yr.ok()) {
      emit(x, yr.y);
    } else if (yr.status == YRecovery::Status::VanishingDenominator) {
      for (double y : recover_y_degenerate(x, data)) emit(x, y);
    }
  }
  return solutions;
}

}  // namespace p3p
