#include "p3p/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "p3p/errors.hpp"

namespace p3p {

double QuarticCoeffs::max_abs() const {
  return std::max({std::abs(c4), std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

double QuarticCoeffs::evaluate(double x) const { return (((c4 * x + c3) * x + c2) * x + c1) * x + c0; }

namespace {

// Depressed cubic t^3 + p t + q for y = t - shift, from the monic normalization.
struct DepressedCubic {
  double p;
  double q;
  double shift;
};

DepressedCubic depress(double a3, double a2, double a1, double a0) {
  const double a = a2 / a3;
  const double b = a1 / a3;
  const double c = a0 / a3;
  const double a_sq = a * a;
  return {b - a_sq / 3.0, 2.0 * a_sq * a / 27.0 - a * b / 3.0 + c, a / 3.0};
}

// Cardano applies when the discriminant is clearly positive. A discriminant within
// rounding of zero is a double root, which the clamped trigonometric form returns.
bool has_single_real_root(double half_q, double third_p, double disc) {
  const double scale = half_q * half_q + std::abs(third_p * third_p * third_p);
  return disc > 1e-12 * scale;
}

// Appends the real roots of x^2 + p x + q (shifted by `offset`). A negative
// discriminant drops the pair.
template <std::size_t N>
void append_quadratic_roots(double p, double q, double offset, StaticVector<double, N>& out) {
  const double half = -0.5 * p;
  const double disc = half * half - q;
  if (disc < 0.0) return;
  const double big = half + std::copysign(std::sqrt(disc), half);
  if (big == 0.0) {
    out.push_back(offset);
    out.push_back(offset);
    return;
  }
  out.push_back(big + offset);
  out.push_back(q / big + offset);
}

// (c + e, c - e) where (c + e)(c - e) = product; the member that would cancel is
// recovered from the product.
std::pair<double, double> split_pair(double c, double e, double product) {
  const double plus = c + e;
  const double minus = c - e;
  if (std::abs(plus) >= std::abs(minus)) {
    return {plus, plus != 0.0 ? product / plus : minus};
  }
  return {product / minus, minus};
}

// Largest real root of M^3 + 2p M^2 + (p^2 - 4r) M - q^2. The roots multiply to
// q^2, so a root that is small next to the others is taken from that product
// rather than from a cancelling sum.
double largest_resolvent_root(double p, double q, double r) {
  const double q_sq = q * q;
  const auto [dp, dq, shift] = depress(1.0, 2.0 * p, p * p - 4.0 * r, -q_sq);
  const double half_q = 0.5 * dq;
  const double third_p = dp / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  if (dp == 0.0) return std::cbrt(-dq) - shift;

  if (has_single_real_root(half_q, third_p, disc)) {
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    const double v = -third_p / u;
    const double real_root = u + v - shift;
    // complex pair: -(u + v)/2 - shift +- i sqrt(3)/2 (u - v)
    const double re = -0.5 * (u + v) - shift;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    const double pair_product = re * re + im * im;
    if (std::abs(real_root) < std::abs(shift) && pair_product > 0.0) return q_sq / pair_product;
    return real_root;
  }

  const double rad = 2.0 * std::sqrt(-third_p);
  const double cos_arg = std::clamp((3.0 * dq / (2.0 * dp)) * std::sqrt(-3.0 / dp), -1.0, 1.0);
  const double theta = std::acos(cos_arg) / 3.0;
  constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;
  const double largest = rad * std::cos(theta) - shift;
  const double other1 = rad * std::cos(theta - kTwoPiThirds) - shift;
  const double other2 = rad * std::cos(theta + kTwoPiThirds) - shift;
  const double others = other1 * other2;
  if (std::abs(largest) < std::abs(shift) && others > 0.0) return q_sq / others;
  return largest;
}

void check_leading(const QuarticCoeffs& c) {
  if (c.c4 == 0.0 || std::abs(c.c4) < kLeadingDegeneracyRatio * c.max_abs()) {
    throw DegenerateLeading("leading quartic coefficient vanishes");
  }
}

RealRoots sorted(RealRoots roots) {
  std::sort(roots.begin(), roots.end());
  return roots;
}

RealRoots solve_reduced(const QuarticCoeffs& c, double threshold) {
  RealRoots roots;
  if (std::abs(c.c3) >= threshold) {
    for (double r : solve_cubic_real(c.c3, c.c2, c.c1, c.c0)) roots.push_back(r);
  } else if (std::abs(c.c2) >= threshold) {
    append_quadratic_roots(c.c1 / c.c2, c.c0 / c.c2, 0.0, roots);
  } else if (std::abs(c.c1) >= threshold) {
    roots.push_back(-c.c0 / c.c1);
  }
  return sorted(roots);
}

}  // namespace

double solve_cubic_one_real(double a3, double a2, double a1, double a0) {
  const auto [p, q, shift] = depress(a3, a2, a1, a0);
  if (p == 0.0) return std::cbrt(-q) - shift;

  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  if (has_single_real_root(half_q, third_p, disc)) {
    // Cardano, with the cube root taken of the term free of cancellation
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    return u - third_p / u - shift;
  }
  const double r = 2.0 * std::sqrt(-third_p);
  const double cos_arg = std::clamp((3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p), -1.0, 1.0);
  return r * std::cos(std::acos(cos_arg) / 3.0) - shift;
}

StaticVector<double, 3> solve_cubic_real(double a3, double a2, double a1, double a0) {
  StaticVector<double, 3> roots;
  const auto [p, q, shift] = depress(a3, a2, a1, a0);
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  if (p == 0.0) {
    roots.push_back(std::cbrt(-q) - shift);
  } else if (has_single_real_root(half_q, third_p, disc)) {
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    roots.push_back(u - third_p / u - shift);
  } else {
    const double r = 2.0 * std::sqrt(-third_p);
    const double cos_arg = std::clamp((3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double theta = std::acos(cos_arg) / 3.0;
    constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;
    roots.push_back(r * std::cos(theta + kTwoPiThirds) - shift);
    roots.push_back(r * std::cos(theta - kTwoPiThirds) - shift);
    roots.push_back(r * std::cos(theta) - shift);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RealRoots solve_quartic_ferrari_lagrange(const QuarticCoeffs& coeffs) {
  check_leading(coeffs);
  const double a = coeffs.c3 / coeffs.c4;
  const double b = coeffs.c2 / coeffs.c4;
  const double c = coeffs.c1 / coeffs.c4;
  const double d = coeffs.c0 / coeffs.c4;

  const double y = solve_cubic_one_real(1.0, -b, a * c - 4.0 * d, 4.0 * b * d - a * a * d - c * c);

  // x^4 + a x^3 + b x^2 + c x + d = (x^2 + a/2 x + y/2)^2 - (alpha x + beta)^2
  RealRoots roots;
  const double alpha_sq = 0.25 * a * a - b + y;
  if (alpha_sq < 0.0) return roots;
  const double alpha = std::sqrt(alpha_sq);
  const double beta_sq = 0.25 * y * y - d;
  const double two_alpha_beta = 0.5 * a * y - c;

  double beta = 0.0;
  if (alpha_sq > std::abs(beta_sq)) {
    beta = two_alpha_beta / (2.0 * alpha);
  } else {
    if (beta_sq < 0.0) return roots;
    beta = std::copysign(std::sqrt(beta_sq), two_alpha_beta);
  }

  // the smaller factor of each pair comes from the products a^2/4 - alpha^2 = b - y
  // and y^2/4 - beta^2 = d instead of a cancelling difference
  const auto [p1, p2] = split_pair(0.5 * a, alpha, b - y);
  const auto [q1, q2] = split_pair(0.5 * y, beta, d);
  append_quadratic_roots(p1, q1, 0.0, roots);
  append_quadratic_roots(p2, q2, 0.0, roots);
  return sorted(roots);
}

RealRoots solve_quartic_classical(const QuarticCoeffs& coeffs) {
  check_leading(coeffs);
  const double A = coeffs.c3 / coeffs.c4;
  const double B = coeffs.c2 / coeffs.c4;
  const double C = coeffs.c1 / coeffs.c4;
  const double D = coeffs.c0 / coeffs.c4;
  const double A_sq = A * A;

  // u^4 + p u^2 + q u + r with x = u - A/4
  const double p = B - 3.0 * A_sq / 8.0;
  const double q = C - 0.5 * A * B + A_sq * A / 8.0;
  const double r = D - 0.25 * A * C + A_sq * B / 16.0 - 3.0 * A_sq * A_sq / 256.0;
  const double shift = -0.25 * A;

  // resolvent in M = 2y + p = s^2, where y solves 8y^3 + 20p y^2 + (16p^2 - 8r) y + 4p^3 - 4pr - q^2
  const double two_m = largest_resolvent_root(p, q, r);

  RealRoots roots;
  if (two_m < 0.0) return roots;

  if (two_m == 0.0) {
    // biquadratic: u^2 = z with z^2 + p z + r = 0
    const double disc = p * p - 4.0 * r;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    for (double z : {0.5 * (-p - sq), 0.5 * (-p + sq)}) {
      if (z < 0.0) continue;
      const double u = std::sqrt(z);
      roots.push_back(shift - u);
      roots.push_back(shift + u);
    }
    return sorted(roots);
  }

  // (u^2 + (M + p)/2)^2 - (s u - q / (2s))^2 with s = sqrt(M)
  const double s = std::sqrt(two_m);
  const double k = q / (2.0 * s);
  const auto [q1, q2] = split_pair(0.5 * (two_m + p), k, r);
  append_quadratic_roots(-s, q1, shift, roots);
  append_quadratic_roots(s, q2, shift, roots);
  return sorted(roots);
}

RealRoots solve_quartic(const QuarticCoeffs& c, QuarticVariant variant, QuarticMethod* trace) {
  const double scale = c.max_abs();
  if (!(scale >= 1e-300)) throw NoPolynomial("all quartic coefficients vanish");

  const double threshold = kLeadingDegeneracyRatio * scale;
  if (std::abs(c.c4) < threshold || c.c4 == 0.0) {
    if (trace) *trace = QuarticMethod::ReducedDegree;
    return solve_reduced(c, threshold);
  }

  bool use_ferrari_lagrange = false;
  switch (variant) {
    case QuarticVariant::Adaptive:
      use_ferrari_lagrange = std::abs(c.c3 / c.c4) > kFerrariLagrangeRatio;
      break;
    case QuarticVariant::FerrariLagrangeOnly:
      use_ferrari_lagrange = true;
      break;
    case QuarticVariant::ClassicalOnly:
      use_ferrari_lagrange = false;
      break;
  }
  if (trace) *trace = use_ferrari_lagrange ? QuarticMethod::FerrariLagrange : QuarticMethod::ClassicalFerrari;
  return use_ferrari_lagrange ? solve_quartic_ferrari_lagrange(c) : solve_quartic_classical(c);
}

}  // namespace p3p
