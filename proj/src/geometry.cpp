#include "p3p/geometry.hpp"

#include <string>
#include <utility>

namespace p3p {

Mat3 adjugate(const Mat3& a) {
  Mat3 adj;
  adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return adj;
}

std::optional<Mat3> inverse(const Mat3& a) {
  const Mat3 adj = adjugate(a);
  // det expanded along the first row, reusing the cofactors
  const double det = a(0, 0) * adj(0, 0) + a(0, 1) * adj(1, 0) + a(0, 2) * adj(2, 0);
  if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
  return (1.0 / det) * adj;
}

double l1_distance(const Mat3& a, const Mat3& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 9; ++i) sum += std::abs(a.m[i] - b.m[i]);
  return sum;
}

std::optional<Vec3> solve_linear(const Mat3& a, const Vec3& b, double min_pivot) {
  std::array<std::array<double, 4>, 3> aug{{
      {a(0, 0), a(0, 1), a(0, 2), b.x},
      {a(1, 0), a(1, 1), a(1, 2), b.y},
      {a(2, 0), a(2, 1), a(2, 2), b.z},
  }};

  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
    }
    if (!(std::abs(aug[pivot][col]) >= min_pivot)) return std::nullopt;
    std::swap(aug[col], aug[pivot]);
    for (std::size_t r = col + 1; r < 3; ++r) {
      const double f = aug[r][col] / aug[col][col];
      for (std::size_t c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
    }
  }

  std::array<double, 3> x{};
  for (std::size_t i = 3; i-- > 0;) {
    double acc = aug[i][3];
    for (std::size_t c = i + 1; c < 3; ++c) acc -= aug[i][c] * x[c];
    x[i] = acc / aug[i][i];
  }
  return Vec3{x[0], x[1], x[2]};
}

Quaternion rotation_to_quaternion(const Mat3& r) {
  const double trace = r(0, 0) + r(1, 1) + r(2, 2);
  Quaternion q;
  if (trace >= r(0, 0) && trace >= r(1, 1) && trace >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + trace);  // s = 4w
    q.w = 0.25 * s;
    q.x = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 2) - r(2, 0)) / s;
    q.z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));  // s = 4x
    q.w = (r(2, 1) - r(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));  // s = 4y
    q.w = (r(0, 2) - r(2, 0)) / s;
    q.x = (r(0, 1) + r(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));  // s = 4z
    q.w = (r(1, 0) - r(0, 1)) / s;
    q.x = (r(0, 2) + r(2, 0)) / s;
    q.y = (r(1, 2) + r(2, 1)) / s;
    q.z = 0.25 * s;
  }
  return q;
}

Mat3 quaternion_to_rotation(const Quaternion& quat) {
  const double n = quat.norm();
  const double w = quat.w / n, x = quat.x / n, y = quat.y / n, z = quat.z / n;
  return {{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
           2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
           2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

BearingVector::BearingVector(const Vec3& v) {
  if (!is_finite(v)) throw InvalidArgument("bearing vector has non-finite components");
  const double n = norm(v);
  if (!(n >= kMinInputNorm)) throw InvalidArgument("bearing vector norm below 1e-9");
  dir_ = v / n;
}

P3pProblem::P3pProblem(const std::array<Correspondence, 3>& corr) : corr_(corr) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_finite(corr_[i].point)) {
      throw DegenerateInput("point " + std::to_string(i + 1) + " has non-finite components");
    }
  }
  constexpr std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (const auto& [i, j] : pairs) {
    const std::string names = std::to_string(i + 1) + " and " + std::to_string(j + 1);
    if (norm(bearing(i) - bearing(j)) <= kCoincidenceTolerance) {
      throw DegenerateInput("bearings " + names + " coincide");
    }
    if (norm(point(i) - point(j)) <= kCoincidenceTolerance) {
      throw DegenerateInput("points " + names + " coincide");
    }
  }
}

P3pProblem P3pProblem::permuted(const std::array<int, 3>& perm) const {
  // a permutation of a valid problem is valid
  return P3pProblem({corr_[static_cast<std::size_t>(perm[0])], corr_[static_cast<std::size_t>(perm[1])],
                     corr_[static_cast<std::size_t>(perm[2])]},
                    Unchecked{});
}

}  // namespace p3p
