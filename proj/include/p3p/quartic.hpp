#pragma once

#include "p3p/static_vector.hpp"

namespace p3p {

/// c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0
struct QuarticCoeffs {
  double c4 = 0.0;
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double max_abs() const;
  double evaluate(double x) const;

  friend bool operator==(const QuarticCoeffs&, const QuarticCoeffs&) = default;
};

/// Real roots sorted ascending. Repeated roots may appear more than once.
using RealRoots = StaticVector<double, 4>;

enum class QuarticVariant { Adaptive, FerrariLagrangeOnly, ClassicalOnly };

/// Which root-finding path actually ran; reported for diagnostics only.
enum class QuarticMethod { FerrariLagrange, ClassicalFerrari, ReducedDegree };

/// |c4| below this fraction of max |c_i| is treated as a vanishing leading term.
inline constexpr double kLeadingDegeneracyRatio = 1e-12;

/// Adaptive rule: |c3 / c4| above this uses Ferrari-Lagrange, otherwise classical.
inline constexpr double kFerrariLagrangeRatio = 10.0;

/// Largest real root of a3 y^3 + a2 y^2 + a1 y + a0. Three real roots use the
/// trigonometric form (acos argument clamped to [-1, 1]); one real root uses the
/// Cardano form. Requires a3 != 0.
double solve_cubic_one_real(double a3, double a2, double a1, double a0);

/// All real roots of a3 y^3 + a2 y^2 + a1 y + a0 (a3 != 0), ascending.
StaticVector<double, 3> solve_cubic_real(double a3, double a2, double a1, double a0);

/// Monic form x^4 + a x^3 + b x^2 + c x + d with the cubic solvent
/// y^3 - b y^2 + (ac - 4d) y + (4bd - a^2 d - c^2). Root pairs that would need the
/// square root of a negative number are dropped. Throws DegenerateLeading.
RealRoots solve_quartic_ferrari_lagrange(const QuarticCoeffs& c);

/// Depressed form u^4 + a u^2 + b u + c after x = u - c3 / (4 c4), cubic solvent
/// 8y^3 + 20a y^2 + (16a^2 - 8c) y + (4a^3 - 4ac - b^2). Same discard rule.
/// Throws DegenerateLeading.
RealRoots solve_quartic_classical(const QuarticCoeffs& c);

/// Real roots with a vanishing leading coefficient handled by degree reduction.
/// `variant` selects the Ferrari form; Adaptive applies the |c3/c4| > 10 rule.
/// Throws NoPolynomial if every |c_i| < 1e-300.
RealRoots solve_quartic(const QuarticCoeffs& c, QuarticVariant variant = QuarticVariant::Adaptive,
                        QuarticMethod* trace = nullptr);

inline RealRoots solve_quartic_adaptive(const QuarticCoeffs& c, QuarticMethod* trace = nullptr) {
  return solve_quartic(c, QuarticVariant::Adaptive, trace);
}

}  // namespace p3p
