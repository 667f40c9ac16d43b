#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "p3p/bench.hpp"
#include "p3p/geometry.hpp"
#include "p3p/quartic.hpp"
#include "p3p/solver.hpp"

namespace p3p::test {

/// Real roots of sum_k coeffs[k] x^(n-k) (highest degree first) as eigenvalues of
/// the companion matrix, keeping eigenvalues whose imaginary part is below
/// 1e-10 times the spectral radius.
inline std::vector<double> companion_real_roots(const std::vector<double>& coeffs) {
  const auto n = static_cast<Eigen::Index>(coeffs.size() - 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(0, i) = -coeffs[static_cast<std::size_t>(i + 1)] / coeffs[0];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto eig = solver.eigenvalues();
  double radius = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) radius = std::max(radius, std::abs(eig[i]));
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(eig[i].imag()) <= 1e-10 * radius) roots.push_back(eig[i].real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<double> companion_real_roots(const QuarticCoeffs& c) {
  return companion_real_roots(std::vector<double>{c.c4, c.c3, c.c2, c.c1, c.c0});
}

/// All eigenvalues (complex) of the quartic companion matrix.
inline std::vector<std::complex<double>> companion_all_roots(const QuarticCoeffs& c) {
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  companion(0, 0) = -c.c3 / c.c4;
  companion(0, 1) = -c.c2 / c.c4;
  companion(0, 2) = -c.c1 / c.c4;
  companion(0, 3) = -c.c0 / c.c4;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < 4; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

inline double quartic_residual(const QuarticCoeffs& c, double r) {
  const long double x = r;
  const long double v = (((static_cast<long double>(c.c4) * x + c.c3) * x + c.c2) * x + c.c1) * x + c.c0;
  return static_cast<double>(std::abs(v));
}

/// Squared distance in extended precision with compensated summation.
inline long double squared_distance_ext(const Vec3& a, const Vec3& b) {
  const long double dx = static_cast<long double>(a.x) - b.x;
  const long double dy = static_cast<long double>(a.y) - b.y;
  const long double dz = static_cast<long double>(a.z) - b.z;
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (long double term : {dx * dx, dy * dy, dz * dz}) {
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Dense polynomial in extended precision, lowest degree first.
using Poly = std::vector<long double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_add(Poly a, const Poly& b, long double scale = 1.0L) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0L);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

/// Quartic obtained without the closed-form coefficients: substitute
/// y = N(x) / D(x) into  x^2 - b y^2 - 2 m13 x + 2 b m23 y + 1 - b = 0  and clear
/// the denominator D^2. Proportional to the solver's quartic.
inline Poly substituted_quartic(const PairwiseData& d) {
  const long double s12 = d.s12, s13 = d.s13, s23 = d.s23;
  const long double m12 = d.m12, m13 = d.m13, m23 = d.m23;
  const long double b = s13 / s23;
  const Poly N{-s12 + s23 - s13, 2.0L * (s12 - s23) * m13, -s12 + s23 + s13};
  const Poly D{-2.0L * s13 * m23, 2.0L * s13 * m12};
  const Poly DD = poly_mul(D, D);
  const Poly conic_x{1.0L - b, -2.0L * m13, 1.0L};  // x^2 - 2 m13 x + 1 - b
  Poly out = poly_mul(conic_x, DD);
  out = poly_add(out, poly_mul(N, N), -b);
  out = poly_add(out, poly_mul(N, D), 2.0L * b * m23);
  out.resize(5, 0.0L);
  return out;
}

/// Problem with known pose built by hand (not through the bench generator).
struct KnownProblem {
  P3pProblem problem;
  Mat3 R;
  Vec3 t;
  std::array<double, 3> depths;
};

inline Mat3 rotation_about(const Vec3& axis, double angle) {
  const Vec3 k = axis / norm(axis);
  const double c = std::cos(angle), s = std::sin(angle), v = 1.0 - c;
  return {{c + k.x * k.x * v, k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s,
           k.y * k.x * v + k.z * s, c + k.y * k.y * v, k.y * k.z * v - k.x * s,
           k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v}};
}

inline KnownProblem make_known_problem(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> img(-1.0, 1.0);
  std::uniform_real_distribution<double> dep(0.5, 8.0);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::normal_distribution<double> nrm;
  for (;;) {
    const Mat3 R = rotation_about({nrm(rng), nrm(rng), nrm(rng)}, ang(rng));
    const Vec3 t{img(rng), img(rng), img(rng)};
    std::array<Vec3, 3> m;
    std::array<double, 3> d{};
    for (int i = 0; i < 3; ++i) {
      const Vec3 v{img(rng), img(rng), 1.0};
      m[static_cast<std::size_t>(i)] = v / norm(v);
      d[static_cast<std::size_t>(i)] = dep(rng);
    }
    const Mat3 Rt = transpose(R);
    try {
      P3pProblem p({{{BearingVector(m[0]), Rt * (d[0] * m[0] - t)},
                     {BearingVector(m[1]), Rt * (d[1] * m[1] - t)},
                     {BearingVector(m[2]), Rt * (d[2] * m[2] - t)}}});
      // keep away from near-collinear or near-coincident configurations
      const PairwiseData pd = compute_pairwise(p);
      if (pd.s12 < 1e-2 || pd.s13 < 1e-2 || pd.s23 < 1e-2) continue;
      return {p, R, t, d};
    } catch (const Error&) {
    }
  }
}

inline double min_pose_distance(const Pose& pose, const Mat3& R, const Vec3& t) {
  return l1_distance(pose.R, R) + l1_distance(pose.t, t);
}

}  // namespace p3p::test
