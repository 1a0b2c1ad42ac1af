#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "fleethfc/field.hpp"
#include "fleethfc/tasks.hpp"

using namespace fleethfc;

namespace {

FieldSpec three_hotspot_spec() {
  FieldSpec spec;
  spec.width_m = 1000;
  spec.height_m = 1000;
  spec.grid_resolution_m = 10;
  spec.hotspots = {{{300, 700, 0}, 150, 1.0}, {{700, 300, 0}, 150, 0.9}, {{650, 550, 0}, 90, 0.55}};
  return spec;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(da * db);
}

}  // namespace

TEST_CASE("build_field density bounded with maxima at hotspot centers") {
  const FieldModel f = build_field(three_hotspot_spec(), 42);
  double max_seen = 0.0;
  for (int r = 0; r < f.grid_rows(); ++r) {
    for (int c = 0; c < f.grid_cols(); ++c) {
      const double d = f.density_at(f.cell_center_x(c), f.cell_center_y(r));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      max_seen = std::max(max_seen, d);
    }
  }
  // Isolated hotspots: center value is approximately the intensity and
  // dominates the neighborhood.
  CHECK(f.density_at(300, 700) == Catch::Approx(1.0).margin(0.02));
  CHECK(f.density_at(700, 300) == Catch::Approx(0.9).margin(0.02));
  CHECK(f.density_at(300, 700) >= max_seen - 1e-9);
}

TEST_CASE("build_field with zero hotspots is identically zero") {
  FieldSpec spec;
  spec.width_m = 200;
  spec.height_m = 100;
  spec.grid_resolution_m = 5;
  const FieldModel f = build_field(spec, 1);
  for (int r = 0; r < f.grid_rows(); ++r) {
    for (int c = 0; c < f.grid_cols(); ++c) {
      CHECK(f.density_at(f.cell_center_x(c), f.cell_center_y(r)) == 0.0);
    }
  }
}

TEST_CASE("build_field deterministic per seed") {
  FieldSpec spec = three_hotspot_spec();
  spec.random_hotspots = 4;
  const FieldModel a = build_field(spec, 99);
  const FieldModel b = build_field(spec, 99);
  REQUIRE(a.hotspots().size() == b.hotspots().size());
  for (std::size_t i = 0; i < a.hotspots().size(); ++i) {
    CHECK(a.hotspots()[i].center == b.hotspots()[i].center);
    CHECK(a.hotspots()[i].radius_m == b.hotspots()[i].radius_m);
    CHECK(a.hotspots()[i].intensity == b.hotspots()[i].intensity);
  }
  CHECK(a.density_csv() == b.density_csv());
  const FieldModel c = build_field(spec, 100);
  CHECK(a.density_csv() != c.density_csv());
}

TEST_CASE("build_field rejects invalid specs") {
  FieldSpec spec;
  spec.width_m = -1;
  CHECK_THROWS_AS(build_field(spec, 0), std::invalid_argument);
  spec = three_hotspot_spec();
  spec.hotspots[0].radius_m = 0;
  CHECK_THROWS_AS(build_field(spec, 0), std::invalid_argument);
  spec = three_hotspot_spec();
  spec.hotspots[0].intensity = 1.5;
  CHECK_THROWS_AS(build_field(spec, 0), std::invalid_argument);
  spec = three_hotspot_spec();
  spec.hotspots[0].center.x = 2000;
  CHECK_THROWS_AS(build_field(spec, 0), std::invalid_argument);
}

TEST_CASE("density_at closed form at radius distance") {
  FieldSpec spec;
  spec.width_m = 1000;
  spec.height_m = 1000;
  spec.hotspots = {{{500, 500, 0}, 120, 0.8}};
  const FieldModel f = build_field(spec, 0);
  CHECK(f.density_at(500, 500) == Catch::Approx(0.8));
  CHECK(f.density_at(500 + 120, 500) == Catch::Approx(0.8 * std::exp(-1.0)));
  CHECK_THROWS_AS(f.density_at(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(f.density_at(0, 1000.5), std::out_of_range);
}

TEST_CASE("masked cells have zero density") {
  FieldSpec spec;
  spec.width_m = 100;
  spec.height_m = 100;
  spec.grid_resolution_m = 10;
  spec.hotspots = {{{50, 50, 0}, 40, 1.0}};
  // 10x10 grid; mask the bottom row.
  spec.mask_rle = "10x1,90x0";
  const FieldModel f = build_field(spec, 0);
  CHECK(f.masked_at(5, 5));
  CHECK(f.density_at(55, 5) == 0.0);
  CHECK(f.density_at(55, 15) > 0.0);
}

TEST_CASE("mask rle round trip and errors") {
  std::vector<std::uint8_t> mask = {1, 1, 0, 0, 0, 1, 0, 1, 1, 1};
  CHECK(encode_mask_rle(mask) == "2x1,3x0,1x1,1x0,3x1");
  CHECK(decode_mask_rle(encode_mask_rle(mask), mask.size()) == mask);

  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint8_t> m(rng.index(200) + 1);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng.index(2));
    CHECK(decode_mask_rle(encode_mask_rle(m), m.size()) == m);
  }

  CHECK_THROWS_AS(decode_mask_rle("abc", 10), std::invalid_argument);
  CHECK_THROWS_AS(decode_mask_rle("5x2", 5), std::invalid_argument);
  CHECK_THROWS_AS(decode_mask_rle("4x1", 10), std::invalid_argument);
}

TEST_CASE("vortex generator is ring shaped and bounded") {
  FieldSpec spec;
  spec.width_m = 1000;
  spec.height_m = 1000;
  spec.generator = FieldGenerator::vortex;
  spec.hotspots = {{{500, 500, 0}, 100, 0.7}};
  const FieldModel f = build_field(spec, 0);
  CHECK(f.density_at(500, 500) == 0.0);
  // Peak of the profile sits at ~1.1209 r and equals the intensity.
  const double peak = f.density_at(500 + 112.09, 500);
  CHECK(peak == Catch::Approx(0.7).margin(1e-3));
  CHECK(f.density_at(500 + 50, 500) < peak);
  CHECK(f.density_at(500 + 400, 500) < peak);
  for (double x = 0; x <= 1000; x += 50) {
    const double d = f.density_at(x, 500);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("sample_tasks basics and determinism") {
  const FieldModel f = build_field(three_hotspot_spec(), 42);
  CHECK(sample_tasks(f, 0, 1).empty());

  const TaskTable a = sample_tasks(f, 90, 7);
  const TaskTable b = sample_tasks(f, 90, 7);
  REQUIRE(a.size() == 90);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == static_cast<int>(i));
    CHECK(a[i].position == b[i].position);
    CHECK(a[i].priority == b[i].priority);
    CHECK(a[i].injection_time_s == b[i].injection_time_s);
    CHECK(a[i].priority >= 1);
    CHECK(a[i].priority <= 100);
    CHECK(a[i].injection_time_s >= 60.0);
    CHECK(a[i].injection_time_s <= 90.0);
    CHECK(f.in_bounds(a[i].position.x, a[i].position.y));
    CHECK_FALSE(f.masked_at(a[i].position.x, a[i].position.y));
    CHECK(a[i].status == TaskStatus::pending);
  }
  // Samples concentrate where density is high.
  double mean_density = 0;
  for (const auto& t : a) mean_density += f.density_at(t.position.x, t.position.y);
  mean_density /= static_cast<double>(a.size());
  double field_mean = 0;
  int cells = 0;
  for (int r = 0; r < f.grid_rows(); ++r) {
    for (int c = 0; c < f.grid_cols(); ++c) {
      field_mean += f.density_at(f.cell_center_x(c), f.cell_center_y(r));
      ++cells;
    }
  }
  field_mean /= cells;
  CHECK(mean_density > 2.0 * field_mean);
}

TEST_CASE("sample_tasks fixed injection override") {
  const FieldModel f = build_field(three_hotspot_spec(), 42);
  TaskSamplingParams p;
  p.injection_fixed_s = 90.0;
  const TaskTable tasks = sample_tasks(f, 30, 3, p);
  for (const auto& t : tasks) CHECK(t.injection_time_s == 90.0);
}

TEST_CASE("sample_tasks histogram tracks density on a single-hotspot field") {
  FieldSpec spec;
  spec.width_m = 400;
  spec.height_m = 400;
  spec.grid_resolution_m = 40;  // 10x10 histogram
  spec.hotspots = {{{120, 280, 0}, 60, 1.0}};
  const FieldModel f = build_field(spec, 0);
  const TaskTable tasks = sample_tasks(f, 10000, 11);

  std::vector<double> counts(static_cast<std::size_t>(f.grid_rows() * f.grid_cols()), 0.0);
  std::vector<double> dens(counts.size(), 0.0);
  for (const auto& t : tasks) {
    CHECK(f.in_bounds(t.position.x, t.position.y));
    counts[static_cast<std::size_t>(f.cell_row(t.position.y) * f.grid_cols() +
                                    f.cell_col(t.position.x))] += 1.0;
  }
  for (int r = 0; r < f.grid_rows(); ++r) {
    for (int c = 0; c < f.grid_cols(); ++c) {
      dens[static_cast<std::size_t>(r * f.grid_cols() + c)] =
          f.density_at(f.cell_center_x(c), f.cell_center_y(r));
    }
  }
  CHECK(pearson(counts, dens) > 0.9);
}

TEST_CASE("sample_tasks hotspot mass ratio matches integrated density") {
  FieldSpec spec;
  spec.width_m = 1000;
  spec.height_m = 500;
  spec.grid_resolution_m = 5;
  spec.hotspots = {{{250, 250, 0}, 80, 1.0}, {{750, 250, 0}, 80, 0.5}};
  const FieldModel f = build_field(spec, 0);
  const TaskTable tasks = sample_tasks(f, 20000, 23);

  // Integrated density inside each hotspot disk (cell sums) vs sample counts.
  double mass_a = 0, mass_b = 0;
  for (int r = 0; r < f.grid_rows(); ++r) {
    for (int c = 0; c < f.grid_cols(); ++c) {
      const double x = f.cell_center_x(c), y = f.cell_center_y(r);
      const double d = f.density_at(x, y);
      if (segment_distance({x, y, 0}, {250, 250, 0}) <= 80) mass_a += d;
      if (segment_distance({x, y, 0}, {750, 250, 0}) <= 80) mass_b += d;
    }
  }
  double in_a = 0, in_b = 0;
  for (const auto& t : tasks) {
    if (segment_distance(t.position, {250, 250, 0}) <= 80) in_a += 1;
    if (segment_distance(t.position, {750, 250, 0}) <= 80) in_b += 1;
  }
  const double expected_ratio = mass_a / mass_b;
  const double sampled_ratio = in_a / in_b;
  CHECK(sampled_ratio == Catch::Approx(expected_ratio).epsilon(0.10));
}

TEST_CASE("sample_tasks fails on empty or fully masked fields") {
  FieldSpec spec;
  spec.width_m = 100;
  spec.height_m = 100;
  spec.grid_resolution_m = 10;
  const FieldModel empty = build_field(spec, 0);
  CHECK_THROWS_AS(sample_tasks(empty, 5, 0), std::invalid_argument);

  spec.hotspots = {{{50, 50, 0}, 30, 1.0}};
  spec.mask_rle = "100x1";
  const FieldModel masked = build_field(spec, 0);
  CHECK_THROWS_AS(sample_tasks(masked, 5, 0), std::invalid_argument);
  CHECK(sample_tasks(masked, 0, 0).empty());
}
