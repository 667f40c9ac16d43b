#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "p3p/errors.hpp"

namespace p3p {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double squared_norm(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(squared_norm(v)); }

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Sum of absolute component differences.
inline double l1_distance(const Vec3& a, const Vec3& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{};

  static constexpr Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return {{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }

  static constexpr Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return {{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
  }

  constexpr double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
  constexpr double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

  constexpr Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
  constexpr Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 transpose(const Mat3& a) {
  return {{a.m[0], a.m[3], a.m[6], a.m[1], a.m[4], a.m[7], a.m[2], a.m[5], a.m[8]}};
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    }
  }
  return out;
}

constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
}

constexpr Mat3 operator*(double s, const Mat3& a) {
  Mat3 out = a;
  for (double& e : out.m) e *= s;
  return out;
}

constexpr double determinant(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Transposed cofactor matrix; adjugate(A) * A = det(A) * I.
Mat3 adjugate(const Mat3& a);

/// Inverse via the adjugate. Returns nullopt when the determinant is exactly zero.
std::optional<Mat3> inverse(const Mat3& a);

double l1_distance(const Mat3& a, const Mat3& b);

/// Solves A x = b by Gaussian elimination with partial pivoting. Returns nullopt
/// when a pivot magnitude falls below `min_pivot`.
std::optional<Vec3> solve_linear(const Mat3& a, const Vec3& b, double min_pivot = 1e-300);

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
};

/// Quaternion of a rotation matrix, choosing the branch with the largest of the
/// four candidate denominators (1 + trace, 1 + 2 R00 - trace, ...). The result is
/// not normalized: for a non-rotation its norm drifts away from one, which is
/// exactly what the rotation validity test inspects.
Quaternion rotation_to_quaternion(const Mat3& r);

/// Rotation matrix of a quaternion; the quaternion is normalized first.
Mat3 quaternion_to_rotation(const Quaternion& q);

/// Unit direction from the camera center toward an observed point.
class BearingVector {
 public:
  static constexpr double kMinInputNorm = 1e-9;

  /// Normalizes `v`. Throws InvalidArgument for non-finite input or norm below 1e-9.
  explicit BearingVector(const Vec3& v);

  const Vec3& dir() const { return dir_; }

  friend bool operator==(const BearingVector&, const BearingVector&) = default;

 private:
  Vec3 dir_;
};

struct Correspondence {
  BearingVector bearing;
  Vec3 point;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// Exactly three correspondences with pairwise distinct bearings and points.
class P3pProblem {
 public:
  static constexpr double kCoincidenceTolerance = 1e-12;

  /// Throws DegenerateInput if two bearings or two points coincide (within
  /// 1e-12) or a point is not finite.
  explicit P3pProblem(const std::array<Correspondence, 3>& corr);

  const Correspondence& operator[](std::size_t i) const { return corr_[i]; }
  const std::array<Correspondence, 3>& correspondences() const { return corr_; }

  const Vec3& bearing(std::size_t i) const { return corr_[i].bearing.dir(); }
  const Vec3& point(std::size_t i) const { return corr_[i].point; }

  /// Correspondences reordered so that new position i holds old position perm[i].
  P3pProblem permuted(const std::array<int, 3>& perm) const;

 private:
  struct Unchecked {};
  P3pProblem(const std::array<Correspondence, 3>& corr, Unchecked) : corr_(corr) {}

  std::array<Correspondence, 3> corr_;
};

struct Pose {
  Mat3 R = Mat3::identity();
  Vec3 t;

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Solution {
  Pose pose;
  /// Depths along the bearings, in the caller's correspondence order.
  std::array<double, 3> depths{};

  friend bool operator==(const Solution&, const Solution&) = default;
};

}  // namespace p3p
