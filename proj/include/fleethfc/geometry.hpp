#pragma once
// Vehicle state and route geometry: headings, pitch, segment distances and
// traversal times at constant velocity. All motion is along straight
// segments in a NED-style frame (x north, y east, z down).

#include <cmath>
#include <stdexcept>

namespace fleethfc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

// One vehicle of the fleet. Speed is the constant cruise speed; battery_time_s
// is the hard per-vehicle mission time budget.
struct VehicleConfig {
  int id = 0;
  double speed_mps = 1.0;
  double battery_time_s = 3600.0;
  Vec3 start;
  Vec3 goal;
};

// Pose along a segment. Roll is not modeled.
struct VehicleState {
  Vec3 position;
  double yaw_rad = 0.0;    // (-pi, pi]
  double pitch_rad = 0.0;  // [-pi/2, pi/2]
};

struct Heading {
  double yaw_rad = 0.0;
  double pitch_rad = 0.0;
};

inline double segment_distance(const Vec3& a, const Vec3& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Yaw/pitch of the straight segment from -> to. Two-argument arctangent, so
// all quadrants resolve; coincident points have no defined heading.
inline Heading heading_to(const Vec3& from, const Vec3& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double dz = to.z - from.z;
  if (dx == 0.0 && dy == 0.0 && dz == 0.0) {
    throw std::invalid_argument("heading_to: coincident points have undefined heading");
  }
  Heading h;
  h.yaw_rad = std::atan2(dy, dx);
  h.pitch_rad = std::atan2(-dz, std::hypot(dx, dy));
  return h;
}

inline double segment_time(const Vec3& a, const Vec3& b, double speed_mps) {
  if (speed_mps <= 0.0) {
    throw std::invalid_argument("segment_time: speed must be positive");
  }
  return segment_distance(a, b) / speed_mps;
}

}  // namespace fleethfc
