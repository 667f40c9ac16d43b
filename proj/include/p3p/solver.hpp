#pragma once

#include <array>
#include <optional>

#include "p3p/geometry.hpp"
#include "p3p/quartic.hpp"
#include "p3p/static_vector.hpp"

namespace p3p {

/// Bearing cosines and squared point distances of a problem.
struct PairwiseData {
  double m12 = 0.0;
  double m13 = 0.0;
  double m23 = 0.0;
  double s12 = 0.0;
  double s13 = 0.0;
  double s23 = 0.0;
  /// Position i of the (re)indexed problem holds original correspondence perm[i].
  std::array<int, 3> perm{0, 1, 2};

  double max_s() const;
  friend bool operator==(const PairwiseData&, const PairwiseData&) = default;
};

struct DepthTriple {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  friend bool operator==(const DepthTriple&, const DepthTriple&) = default;
};

/// Which law-of-cosines expression yields d3 once x = d1/d3 and y = d2/d3 are known.
enum class D3Source {
  FromS12,  ///< d3^2 = s12 / (x^2 - 2xy m12 + y^2)
  FromS13,  ///< d3^2 = s13 / (x^2 - 2x m13 + 1)
  FromS23,  ///< d3^2 = s23 / (y^2 - 2y m23 + 1)
};

struct SolverConfig {
  int gn_iterations = 2;
  double denom_epsilon = 1e-14;
  QuarticVariant force_variant = QuarticVariant::Adaptive;
  bool reindex_enabled = true;
  D3Source d3_source = D3Source::FromS23;

  /// Throws InvalidArgument unless 0 <= gn_iterations <= 16 and denom_epsilon > 0.
  void validate() const;
};

using SolutionList = StaticVector<Solution, 4>;

/// Cosines m_ij = m_i . m_j (not clamped) and squared distances s_ij, identity perm.
/// Throws DegenerateInput if some s_ij < 1e-24 or |m_ij| > 1 + 1e-12.
PairwiseData compute_pairwise(const P3pProblem& problem);

/// Relabels correspondences so that m13 <= m12 <= m23, picking the
/// lexicographically smallest permutation among those that satisfy it.
std::pair<PairwiseData, P3pProblem> canonical_reindex(const PairwiseData& data, const P3pProblem& problem);

/// Quartic in x = d1/d3 after dividing out the common factor s13/s23.
QuarticCoeffs quartic_coefficients(const PairwiseData& data);

struct YRecovery {
  enum class Status { Ok, NonPositive, VanishingDenominator };
  Status status = Status::Ok;
  double y = 0.0;

  bool ok() const { return status == Status::Ok; }
};

/// y = (A x^2 + B x + C) / (2 s13 (m12 x - m23)).
YRecovery recover_y(double x, const PairwiseData& data, double denom_epsilon = 1e-14);

/// Positive y candidates at fixed x when the rational form is unusable: roots of
/// one conic that also satisfy the other within 1e-6 (relative).
StaticVector<double, 2> recover_y_degenerate(double x, const PairwiseData& data);

/// d3 from the selected expression, then d1 = x d3 and d2 = y d3. nullopt when the
/// chosen denominator is not positive or d3 is not finite and positive.
std::optional<DepthTriple> recover_depths(double x, double y, const PairwiseData& data,
                                          D3Source source = D3Source::FromS23);

/// Residuals of the three law-of-cosines equations.
Vec3 law_of_cosines_residual(const DepthTriple& d, const PairwiseData& data);

/// Newton steps on the law-of-cosines system. Stops early once the residual is
/// below 1e-15 max(s); a step that worsens the residual, drives a depth to <= 0,
/// or meets a pivot below 1e-300 is discarded and iteration stops.
DepthTriple refine_depths_gauss_newton(const DepthTriple& d, const PairwiseData& data, int iterations);

/// R = [Y1, Y2, Y1 x Y2] X^-1, t = d1 m1 - R X1 with the inverse from the adjugate.
/// Throws CollinearPoints.
Pose align_pose(const DepthTriple& d, const P3pProblem& problem);

/// All candidate poses (at most four) in no particular order.
SolutionList solve(const P3pProblem& problem, const SolverConfig& config = {});

}  // namespace p3p
