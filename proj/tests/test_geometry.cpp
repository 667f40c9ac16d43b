#include <doctest.h>

#include <cmath>
#include <random>

#include "p3p/geometry.hpp"

using namespace p3p;

TEST_SUITE("geometry") {

TEST_CASE("quaternion of identity") {
  const Quaternion q = rotation_to_quaternion(Mat3::identity());
  CHECK(q.w == 1.0);
  CHECK(q.x == 0.0);
  CHECK(q.y == 0.0);
  CHECK(q.z == 0.0);
  CHECK(q.norm() == 1.0);
}

TEST_CASE("quaternion of a half turn about z") {
  const Mat3 r{{-1, 0, 0, 0, -1, 0, 0, 0, 1}};
  const Quaternion q = rotation_to_quaternion(r);
  CHECK(q.w == doctest::Approx(0.0));
  CHECK(q.x == doctest::Approx(0.0));
  CHECK(q.y == doctest::Approx(0.0));
  CHECK(std::abs(q.z) == doctest::Approx(1.0));
  CHECK(q.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scaled identity produces an off-unit quaternion norm") {
  // trace branch: w = sqrt(1 + 3.003) / 2, vector part zero
  const Mat3 r = 1.001 * Mat3::identity();
  const double expected = std::sqrt(4.003) / 2.0;
  const Quaternion q = rotation_to_quaternion(r);
  CHECK(q.norm() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(std::abs(q.norm() - 1.0) > 1e-5);
}

TEST_CASE("quaternion round trip recovers +-q") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100000; ++i) {
    Quaternion q{n(rng), n(rng), n(rng), n(rng)};
    const double len = q.norm();
    q = {q.w / len, q.x / len, q.y / len, q.z / len};
    const Quaternion back = rotation_to_quaternion(quaternion_to_rotation(q));
    const double sign = (back.w * q.w + back.x * q.x + back.y * q.y + back.z * q.z) < 0 ? -1.0 : 1.0;
    const double err = std::max({std::abs(sign * back.w - q.w), std::abs(sign * back.x - q.x),
                                 std::abs(sign * back.y - q.y), std::abs(sign * back.z - q.z)});
    REQUIRE(err < 1e-12);
  }
}

TEST_CASE("quaternion extraction near a half turn about every axis") {
  for (const Vec3 axis : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{1, 1, 1}}) {
    const Vec3 k = axis / norm(axis);
    const double angle = M_PI - 1e-9;
    const Quaternion q{std::cos(angle / 2), k.x * std::sin(angle / 2), k.y * std::sin(angle / 2),
                       k.z * std::sin(angle / 2)};
    const Quaternion back = rotation_to_quaternion(quaternion_to_rotation(q));
    CHECK(std::abs(back.norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("bearing vectors are unit length") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000000; ++i) {
    Vec3 v{u(rng), u(rng), u(rng)};
    if (norm(v) < 1e-6) continue;
    REQUIRE(std::abs(norm(BearingVector(v).dir()) - 1.0) < 1e-12);
  }
  CHECK(std::abs(norm(BearingVector({1e-8, 0, 0}).dir()) - 1.0) < 1e-12);
}

TEST_CASE("bearing vector rejects tiny and non-finite input") {
  CHECK_THROWS_AS(BearingVector({0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(BearingVector({1e-10, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(BearingVector({NAN, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(BearingVector({INFINITY, 0, 1}), InvalidArgument);
}

TEST_CASE("problem rejects coincident bearings and points") {
  const BearingVector a({0, 0, 1}), b({0, 1, 1}), c({1, 0, 1});
  CHECK_NOTHROW(P3pProblem({{{a, {0, 0, 1}}, {b, {0, 1, 1}}, {c, {1, 0, 1}}}}));
  CHECK_THROWS_AS(P3pProblem({{{a, {0, 0, 1}}, {a, {0, 1, 1}}, {c, {1, 0, 1}}}}), DegenerateInput);
  CHECK_THROWS_AS(P3pProblem({{{a, {0, 0, 1}}, {b, {0, 0, 1}}, {c, {1, 0, 1}}}}), DegenerateInput);
  CHECK_THROWS_AS(P3pProblem({{{a, {0, 0, NAN}}, {b, {0, 1, 1}}, {c, {1, 0, 1}}}}), DegenerateInput);
}

TEST_CASE("adjugate inverse and linear solve") {
  const Mat3 a{{4, -2, 1, 3, 6, -4, 2, 1, 8}};
  const auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(l1_distance(a * *inv, Mat3::identity()) < 1e-14);
  CHECK(determinant(a) == doctest::Approx(4 * (48 + 4) + 2 * (24 + 8) + (3 - 12)));

  const Vec3 x{1.5, -2.0, 0.25};
  const auto solved = solve_linear(a, a * x);
  REQUIRE(solved.has_value());
  CHECK(l1_distance(*solved, x) < 1e-14);

  const Mat3 singular{{1, 2, 3, 2, 4, 6, 1, 1, 1}};
  CHECK_FALSE(inverse(singular).has_value());
  CHECK_FALSE(solve_linear(singular, {1, 1, 1}).has_value());
}

TEST_CASE("linear solve needs pivoting") {
  // zero leading entry: elimination without row swaps would divide by zero
  const Mat3 a{{0, 1, 1, 1, 0, 1, 1, 1, 0}};
  const auto x = solve_linear(a, {2, 2, 2});
  REQUIRE(x.has_value());
  CHECK(l1_distance(*x, {1, 1, 1}) < 1e-15);
}

}  // TEST_SUITE
