#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fleethfc/geometry.hpp"
#include "fleethfc/rng.hpp"

using namespace fleethfc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("heading_to axis-aligned segments") {
  auto h = heading_to({0, 0, 0}, {1, 0, 0});
  CHECK(h.yaw_rad == Catch::Approx(0.0).margin(1e-15));
  CHECK(h.pitch_rad == Catch::Approx(0.0).margin(1e-15));

  h = heading_to({0, 0, 0}, {0, 1, 0});
  CHECK(h.yaw_rad == Catch::Approx(kPi / 2));
  CHECK(h.pitch_rad == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("heading_to diagonal with climb") {
  // Horizontal distance sqrt(2), dz = -sqrt(2): pitch = atan2(sqrt2, sqrt2) = pi/4.
  const auto h = heading_to({0, 0, 0}, {1, 1, -std::sqrt(2.0)});
  CHECK(h.yaw_rad == Catch::Approx(kPi / 4));
  CHECK(h.pitch_rad == Catch::Approx(kPi / 4));
}

TEST_CASE("heading_to rejects coincident points") {
  CHECK_THROWS_AS(heading_to({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("heading ranges stay inside the state invariants") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
    const Vec3 b{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
    if (a == b) continue;
    const auto h = heading_to(a, b);
    CHECK(h.yaw_rad > -kPi - 1e-12);
    CHECK(h.yaw_rad <= kPi + 1e-12);
    CHECK(h.pitch_rad >= -kPi / 2 - 1e-12);
    CHECK(h.pitch_rad <= kPi / 2 + 1e-12);
  }
}

TEST_CASE("opposite planar headings differ by pi") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a{rng.uniform(-10, 10), rng.uniform(-10, 10), 3.0};
    const Vec3 b{rng.uniform(-10, 10), rng.uniform(-10, 10), 3.0};
    if (a == b) continue;
    const double fwd = heading_to(a, b).yaw_rad;
    const double back = heading_to(b, a).yaw_rad;
    double diff = std::fmod(std::abs(fwd - back), 2 * kPi);
    diff = std::min(diff, 2 * kPi - diff);
    CHECK(diff == Catch::Approx(kPi).margin(1e-9));
  }
}

TEST_CASE("segment_distance basics") {
  CHECK(segment_distance({0, 0, 0}, {3, 4, 0}) == Catch::Approx(5.0));
  CHECK(segment_distance({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(segment_distance({1, 2, 3}, {4, 6, 3}) == Catch::Approx(5.0));
}

TEST_CASE("segment_distance triangle inequality and symmetry") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Vec3 a{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const Vec3 b{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const Vec3 c{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
    CHECK(segment_distance(a, c) <= segment_distance(a, b) + segment_distance(b, c) + 1e-9);
    CHECK(segment_distance(a, b) == Catch::Approx(segment_distance(b, a)));
    CHECK(segment_distance(a, b) >= 0.0);
  }
}

TEST_CASE("segment_time") {
  CHECK(segment_time({0, 0, 0}, {100, 0, 0}, 1.0) == Catch::Approx(100.0));
  CHECK(segment_time({5, 5, 5}, {5, 5, 5}, 2.0) == 0.0);
  CHECK(segment_time({0, 0, 0}, {150, 200, 0}, 2.5) == Catch::Approx(100.0));
  CHECK_THROWS_AS(segment_time({0, 0, 0}, {1, 0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(segment_time({0, 0, 0}, {1, 0, 0}, -1.0), std::invalid_argument);
}
