#pragma once
// Operating-field model: a probabilistic target-density surface over a
// rectangular area plus an optional rasterized coastline mask (true = land,
// forbidden). The density surface is analytic (a superposition of radially
// decaying bumps); the mask is a boolean grid at a configurable resolution.
//
// Two bump shapes are available:
//   gaussian  - intensity * exp(-d^2 / r^2), the default generator
//   vortex    - the normalized magnitude of a Lamb-Oseen-style vortex ring,
//               intensity * (1 - exp(-d^2/r^2)) / (2*pi*d), rescaled so each
//               bump peaks at its intensity. Peak sits on a ring of radius
//               ~1.12 r rather than at the center; kept for fidelity
//               experiments with ring-shaped distributions.
// Density is clipped to [0, 1] and forced to 0 on masked cells.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleethfc/geometry.hpp"
#include "fleethfc/rng.hpp"

namespace fleethfc {

struct DensityCenter {
  Vec3 center;             // z ignored for density purposes
  double radius_m = 1.0;   // decay radius, > 0
  double intensity = 1.0;  // peak density contribution, in (0, 1]
};

enum class FieldGenerator { gaussian, vortex };

struct FieldSpec {
  double width_m = 1000.0;
  double height_m = 1000.0;
  double grid_resolution_m = 5.0;
  FieldGenerator generator = FieldGenerator::gaussian;
  std::vector<DensityCenter> hotspots;

  // When random_hotspots > 0, that many additional hotspots are drawn
  // uniformly over the field from the build seed.
  int random_hotspots = 0;
  double random_radius_min_m = 80.0;
  double random_radius_max_m = 200.0;
  double random_intensity_min = 0.4;
  double random_intensity_max = 1.0;

  double depth_m = 0.0;  // constant depth channel feeding task z coordinates

  // Run-length-encoded mask, row-major from the (0,0) corner, runs written
  // as "<count>x<0|1>" separated by commas. Empty = no land anywhere.
  std::string mask_rle;
};

namespace detail {

// Solves e^w = 2w + 1; locates the peak of the vortex bump profile
// (1 - e^{-u^2})/u at u* = sqrt(w*).
inline constexpr double kVortexPeakW = 1.2564312086261696770;

inline double vortex_profile(double d, double radius) {
  if (d <= 0.0) return 0.0;
  const double twopi = 6.283185307179586476925286766559;
  return (1.0 - std::exp(-(d * d) / (radius * radius))) / (twopi * d);
}

inline double vortex_peak_value(double radius) {
  const double u_star = std::sqrt(kVortexPeakW);
  return vortex_profile(u_star * radius, radius);
}

}  // namespace detail

// Decodes "<count>x<bit>,..." into a row-major boolean grid of exactly
// `cells` entries. Throws on malformed runs or length mismatch.
inline std::vector<std::uint8_t> decode_mask_rle(const std::string& rle, std::size_t cells) {
  std::vector<std::uint8_t> mask;
  mask.reserve(cells);
  std::stringstream ss(rle);
  std::string run;
  while (std::getline(ss, run, ',')) {
    if (run.empty()) continue;
    const auto xpos = run.find('x');
    if (xpos == std::string::npos) {
      throw std::invalid_argument("mask_rle: run '" + run + "' missing 'x' separator");
    }
    long count = 0;
    int bit = 0;
    try {
      count = std::stol(run.substr(0, xpos));
      bit = std::stoi(run.substr(xpos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("mask_rle: run '" + run + "' is not <count>x<bit>");
    }
    if (count <= 0 || (bit != 0 && bit != 1)) {
      throw std::invalid_argument("mask_rle: run '" + run + "' is not <count>x<bit>");
    }
    mask.insert(mask.end(), static_cast<std::size_t>(count), static_cast<std::uint8_t>(bit));
  }
  if (!mask.empty() && mask.size() != cells) {
    throw std::invalid_argument("mask_rle: decoded " + std::to_string(mask.size()) +
                                " cells, grid has " + std::to_string(cells));
  }
  return mask;
}

inline std::string encode_mask_rle(const std::vector<std::uint8_t>& mask) {
  std::string out;
  std::size_t i = 0;
  while (i < mask.size()) {
    std::size_t j = i;
    while (j < mask.size() && mask[j] == mask[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(j - i) + "x" + std::to_string(static_cast<int>(mask[i]));
    i = j;
  }
  return out;
}

class FieldModel {
 public:
  FieldModel() = default;
  FieldModel(FieldSpec spec, std::vector<DensityCenter> hotspots, std::vector<std::uint8_t> mask)
      : spec_(std::move(spec)), hotspots_(std::move(hotspots)), mask_(std::move(mask)) {
    cols_ = static_cast<int>(std::ceil(spec_.width_m / spec_.grid_resolution_m));
    rows_ = static_cast<int>(std::ceil(spec_.height_m / spec_.grid_resolution_m));
  }

  double width_m() const { return spec_.width_m; }
  double height_m() const { return spec_.height_m; }
  double grid_resolution_m() const { return spec_.grid_resolution_m; }
  double depth_m() const { return spec_.depth_m; }
  FieldGenerator generator() const { return spec_.generator; }
  const std::vector<DensityCenter>& hotspots() const { return hotspots_; }
  int grid_cols() const { return cols_; }
  int grid_rows() const { return rows_; }
  bool has_mask() const { return !mask_.empty(); }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  bool in_bounds(double x, double y) const {
    return x >= 0.0 && x <= spec_.width_m && y >= 0.0 && y <= spec_.height_m;
  }

  bool masked_at(double x, double y) const {
    if (mask_.empty()) return false;
    const int c = cell_col(x);
    const int r = cell_row(y);
    return mask_[static_cast<std::size_t>(r) * cols_ + c] != 0;
  }

  // Density in [0, 1]; exactly 0 on masked cells. Out-of-bounds is an error.
  double density_at(double x, double y) const {
    if (!in_bounds(x, y)) {
      throw std::out_of_range("density_at: query (" + std::to_string(x) + ", " +
                              std::to_string(y) + ") outside field bounds");
    }
    if (masked_at(x, y)) return 0.0;
    double d = 0.0;
    for (const auto& h : hotspots_) {
      const double dx = x - h.center.x;
      const double dy = y - h.center.y;
      const double dist2 = dx * dx + dy * dy;
      if (spec_.generator == FieldGenerator::gaussian) {
        d += h.intensity * std::exp(-dist2 / (h.radius_m * h.radius_m));
      } else {
        d += h.intensity * detail::vortex_profile(std::sqrt(dist2), h.radius_m) /
             detail::vortex_peak_value(h.radius_m);
      }
    }
    return std::clamp(d, 0.0, 1.0);
  }

  double depth_at(double /*x*/, double /*y*/) const { return spec_.depth_m; }

  // Cell-center density sampled over the whole grid, row-major.
  // Header: x,y,density
  std::string density_csv() const {
    std::string out = "x,y,density\n";
    char buf[96];
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        const double x = cell_center_x(c);
        const double y = cell_center_y(r);
        std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.6f\n", x, y, density_at(x, y));
        out += buf;
      }
    }
    return out;
  }

  double cell_center_x(int col) const {
    return std::min((col + 0.5) * spec_.grid_resolution_m, spec_.width_m);
  }
  double cell_center_y(int row) const {
    return std::min((row + 0.5) * spec_.grid_resolution_m, spec_.height_m);
  }
  int cell_col(double x) const {
    return std::clamp(static_cast<int>(x / spec_.grid_resolution_m), 0, cols_ - 1);
  }
  int cell_row(double y) const {
    return std::clamp(static_cast<int>(y / spec_.grid_resolution_m), 0, rows_ - 1);
  }

  double max_cell_density() const {
    double m = 0.0;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        m = std::max(m, density_at(cell_center_x(c), cell_center_y(r)));
      }
    }
    return m;
  }

 private:
  FieldSpec spec_;
  std::vector<DensityCenter> hotspots_;
  std::vector<std::uint8_t> mask_;  // empty = no mask
  int cols_ = 0;
  int rows_ = 0;
};

// Builds the field from its spec. Deterministic for a fixed seed: explicit
// hotspots are taken as-is, random ones drawn from the seed.
inline FieldModel build_field(const FieldSpec& spec, std::uint64_t seed) {
  if (spec.width_m <= 0.0 || spec.height_m <= 0.0) {
    throw std::invalid_argument("build_field: field dimensions must be positive");
  }
  if (spec.grid_resolution_m <= 0.0) {
    throw std::invalid_argument("build_field: grid_resolution_m must be positive");
  }
  std::vector<DensityCenter> hotspots = spec.hotspots;
  Rng rng(seed);
  for (int i = 0; i < spec.random_hotspots; ++i) {
    DensityCenter h;
    h.center = {rng.uniform(0.0, spec.width_m), rng.uniform(0.0, spec.height_m), 0.0};
    h.radius_m = rng.uniform(spec.random_radius_min_m, spec.random_radius_max_m);
    h.intensity = rng.uniform(spec.random_intensity_min, spec.random_intensity_max);
    hotspots.push_back(h);
  }
  for (const auto& h : hotspots) {
    if (h.radius_m <= 0.0) {
      throw std::invalid_argument("build_field: hotspot radius must be positive");
    }
    if (h.intensity <= 0.0 || h.intensity > 1.0) {
      throw std::invalid_argument("build_field: hotspot intensity must be in (0, 1]");
    }
    if (h.center.x < 0.0 || h.center.x > spec.width_m || h.center.y < 0.0 ||
        h.center.y > spec.height_m) {
      throw std::invalid_argument("build_field: hotspot center outside field bounds");
    }
  }
  const int cols = static_cast<int>(std::ceil(spec.width_m / spec.grid_resolution_m));
  const int rows = static_cast<int>(std::ceil(spec.height_m / spec.grid_resolution_m));
  std::vector<std::uint8_t> mask;
  if (!spec.mask_rle.empty()) {
    mask = decode_mask_rle(spec.mask_rle, static_cast<std::size_t>(cols) * rows);
  }
  return FieldModel(spec, std::move(hotspots), std::move(mask));
}

}  // namespace fleethfc
