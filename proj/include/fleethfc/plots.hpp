#pragma once
// Self-contained SVG rendering for the standard result views: route overlay
// on the density surface, per-iteration metric traces, and Monte Carlo
// boxplots. No external plotting stack; output bytes are deterministic for
// identical inputs (fixed-precision formatting, no timestamps).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "fleethfc/field.hpp"
#include "fleethfc/runner.hpp"

namespace fleethfc {
namespace svg {

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double width, double height) : w_(width), h_(height) {}

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& extra = "") {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0, const std::string& extra = "") {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
             num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(stroke_width) + "\"" +
             extra + "/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& fill,
              const std::string& extra = "") {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" fill=\"" + fill + "\"" + extra + "/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double stroke_width = 1.5) {
    if (pts.empty()) return;
    std::string p;
    for (const auto& [x, y] : pts) p += num(x) + "," + num(y) + " ";
    body_ += "<polyline points=\"" + p + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
  }
  void text(double x, double y, const std::string& s, double size = 12.0,
            const std::string& fill = "#222", const std::string& extra = "") {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
             "\" font-family=\"sans-serif\" fill=\"" + fill + "\"" + extra + ">" + s +
             "</text>\n";
  }

  std::string str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" + num(w_) + "\" height=\"" + num(h_) + "\" viewBox=\"0 0 " + num(w_) + " " +
           num(h_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n" + body_ +
           "</svg>\n";
  }

 private:
  double w_, h_;
  std::string body_;
};

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#d62728", "#1f77b4", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#8c564b"};
  return p;
}

// Dark-navy to yellow ramp for density in [0, 1].
inline std::string density_color(double d) {
  struct Stop { double t; int r, g, b; };
  static const Stop stops[] = {
      {0.0, 12, 25, 60}, {0.35, 28, 104, 136}, {0.7, 90, 197, 124}, {1.0, 242, 233, 78}};
  d = std::clamp(d, 0.0, 1.0);
  const Stop* a = &stops[0];
  const Stop* b = &stops[3];
  for (std::size_t i = 0; i + 1 < std::size(stops); ++i) {
    if (d >= stops[i].t && d <= stops[i + 1].t) {
      a = &stops[i];
      b = &stops[i + 1];
      break;
    }
  }
  const double f = (b->t > a->t) ? (d - a->t) / (b->t - a->t) : 0.0;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(a->r + f * (b->r - a->r)),
                static_cast<int>(a->g + f * (b->g - a->g)),
                static_cast<int>(a->b + f * (b->b - a->b)));
  return buf;
}

}  // namespace svg

// Density surface with task dots, per-vehicle route polylines, start (square)
// and rendezvous (triangle-ish diamond) markers, abandoned tasks as open
// circles.
inline std::string render_route_overlay(const FieldModel& field, const TaskTable& tasks,
                                        const FleetPlan& plan) {
  const double pad = 40.0;
  const double plot = 640.0;
  svg::Canvas c(plot + 2 * pad, plot + 2 * pad + 20.0);
  const double sx = plot / field.width_m();
  const double sy = plot / field.height_m();
  auto X = [&](double x) { return pad + x * sx; };
  auto Y = [&](double y) { return pad + plot - y * sy; };  // y up

  // Downsampled density raster.
  const int cells = 100;
  const double cw = field.width_m() / cells;
  const double ch = field.height_m() / cells;
  for (int r = 0; r < cells; ++r) {
    for (int col = 0; col < cells; ++col) {
      const double x = (col + 0.5) * cw;
      const double y = (r + 0.5) * ch;
      const bool masked = field.masked_at(x, y);
      const std::string fill = masked ? "#000000" : svg::density_color(field.density_at(x, y));
      c.rect(X(col * cw), Y((r + 1) * ch), cw * sx + 0.5, ch * sy + 0.5, fill);
    }
  }
  // Routes.
  for (std::size_t v = 0; v < plan.routes.size(); ++v) {
    const Route& r = plan.routes[v];
    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(X(r.start.x), Y(r.start.y));
    for (int id : r.task_ids) {
      const Vec3& p = task_by_id(tasks, id).position;
      pts.emplace_back(X(p.x), Y(p.y));
    }
    pts.emplace_back(X(r.goal.x), Y(r.goal.y));
    c.polyline(pts, svg::palette()[v % svg::palette().size()], 1.8);
  }
  // Tasks (filled = in a route, open = abandoned).
  for (const auto& t : tasks) {
    const bool abandoned = t.status == TaskStatus::abandoned;
    if (abandoned) {
      c.circle(X(t.position.x), Y(t.position.y), 3.0, "none",
               " stroke=\"#ffffff\" stroke-width=\"1.2\"");
    } else {
      c.circle(X(t.position.x), Y(t.position.y), 2.6, "#ffffff");
    }
  }
  // Start / rendezvous markers (taken from the first route; stations are
  // per-vehicle in general but shared in the standard scenarios).
  if (!plan.routes.empty()) {
    const Vec3 s = plan.routes.front().start;
    const Vec3 g = plan.routes.front().goal;
    c.rect(X(s.x) - 6, Y(s.y) - 6, 12, 12, "#ff2a2a", " stroke=\"#ffffff\" stroke-width=\"1.5\"");
    c.text(X(s.x) + 9, Y(s.y) + 4, "start", 12, "#ffffff");
    c.circle(X(g.x), Y(g.y), 7.0, "#ffd700", " stroke=\"#000000\" stroke-width=\"1.5\"");
    c.text(X(g.x) + 9, Y(g.y) + 4, "rendezvous", 12, "#ffffff");
  }
  // Legend.
  for (std::size_t v = 0; v < plan.routes.size(); ++v) {
    const double lx = pad + 10 + 110.0 * static_cast<double>(v);
    c.line(lx, pad + plot + 28, lx + 24, pad + plot + 28,
           svg::palette()[v % svg::palette().size()], 2.5);
    c.text(lx + 30, pad + plot + 32, "vehicle " + std::to_string(plan.routes[v].vehicle_id), 12);
  }
  return c.str();
}

namespace svg {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // x, y in data coords
};

inline std::string line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Series>& series) {
  const double w = 720, h = 440, left = 70, right = 20, top = 40, bottom = 50;
  Canvas c(w, h);
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double yspan = ymax - ymin;
  ymin -= 0.05 * yspan;
  ymax += 0.05 * yspan;
  auto X = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
  auto Y = [&](double y) { return h - bottom - (y - ymin) / (ymax - ymin) * (h - top - bottom); };

  c.text(left, top - 16, title, 15);
  c.line(left, top, left, h - bottom, "#444");
  c.line(left, h - bottom, w - right, h - bottom, "#444");
  for (int t = 0; t <= 4; ++t) {
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    c.line(left - 4, Y(yv), w - right, Y(yv), "#dddddd", 0.8);
    c.text(6, Y(yv) + 4, num(yv), 10);
    c.text(X(xv) - 10, h - bottom + 16, num(xv), 10);
  }
  c.text(w / 2 - 20, h - 12, x_label, 12);
  c.text(8, top - 16, y_label, 12);
  for (const auto& s : series) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(s.points.size());
    for (const auto& [x, y] : s.points) pts.emplace_back(X(x), Y(y));
    c.polyline(pts, s.color, 1.6);
  }
  double lx = left + 8;
  for (const auto& s : series) {
    c.line(lx, top + 8, lx + 20, top + 8, s.color, 2.5);
    c.text(lx + 24, top + 12, s.label, 11);
    lx += 26 + 9.0 * static_cast<double>(s.label.size());
  }
  return c.str();
}

}  // namespace svg

// One line chart for a history metric ("cost", "violation_s", "t_diff_s"),
// one series per vehicle plus the fleet total.
inline std::string render_history_chart(const std::vector<HistoryRow>& rows,
                                        const std::string& metric) {
  std::map<int, svg::Series> by_vehicle;
  std::map<int, double> totals_acc;
  svg::Series total{"total", "#000000", {}};
  std::map<int, std::map<int, double>> value;  // iter -> vehicle -> metric
  for (const auto& r : rows) {
    const double v = metric == "cost"          ? r.cost
                     : metric == "violation_s" ? r.violation_s
                                               : r.t_diff_s;
    value[r.iter][r.vehicle] = v;
  }
  for (const auto& [iter, per_v] : value) {
    double sum = 0.0;
    for (const auto& [veh, v] : per_v) {
      auto& s = by_vehicle[veh];
      if (s.points.empty()) {
        s.label = "vehicle " + std::to_string(veh);
        s.color = svg::palette()[static_cast<std::size_t>(veh) % svg::palette().size()];
      }
      s.points.emplace_back(iter, v);
      sum += v;
    }
    total.points.emplace_back(iter, sum);
  }
  std::vector<svg::Series> series;
  for (auto& [veh, s] : by_vehicle) series.push_back(std::move(s));
  series.push_back(std::move(total));
  const std::string ylab = metric == "cost"          ? "cost"
                           : metric == "violation_s" ? "violation (s)"
                                                     : "t_diff (s)";
  return svg::line_chart(ylab + " per iteration", "iteration", ylab, series);
}

// Per-vehicle boxplots of a Monte Carlo metric.
inline std::string render_mc_boxplot(const std::vector<RunResult>& runs,
                                     const std::string& metric) {
  const double w = 560, h = 440, left = 80, right = 20, top = 40, bottom = 50;
  svg::Canvas c(w, h);
  if (runs.empty()) return c.str();
  const std::size_t k = runs.front().vehicles.size();
  std::vector<BoxStats> stats;
  double ymin = 0, ymax = 1;
  bool first = true;
  for (std::size_t v = 0; v < k; ++v) {
    std::vector<double> vals;
    for (const auto& r : runs) vals.push_back(metric_value(r.vehicles[v], metric));
    BoxStats b = box_stats(vals);
    if (first) {
      ymin = b.lo;
      ymax = b.hi;
      first = false;
    }
    ymin = std::min(ymin, b.lo);
    ymax = std::max(ymax, b.hi);
    stats.push_back(b);
  }
  if (ymax == ymin) ymax = ymin + 1;
  const double span = ymax - ymin;
  ymin -= 0.08 * span;
  ymax += 0.08 * span;
  auto Y = [&](double y) { return h - bottom - (y - ymin) / (ymax - ymin) * (h - top - bottom); };
  c.text(left, top - 16, metric + " over " + std::to_string(runs.size()) + " runs", 15);
  c.line(left, top, left, h - bottom, "#444");
  c.line(left, h - bottom, w - right, h - bottom, "#444");
  for (int t = 0; t <= 4; ++t) {
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    c.line(left - 4, Y(yv), w - right, Y(yv), "#dddddd", 0.8);
    c.text(8, Y(yv) + 4, svg::num(yv), 10);
  }
  const double slot = (w - left - right) / static_cast<double>(k);
  for (std::size_t v = 0; v < k; ++v) {
    const BoxStats& b = stats[v];
    const double cx = left + slot * (static_cast<double>(v) + 0.5);
    const double bw = slot * 0.4;
    const std::string col = svg::palette()[v % svg::palette().size()];
    const double iqr = b.q3 - b.q1;
    const double wlo = std::max(b.lo, b.q1 - 1.5 * iqr);
    const double whi = std::min(b.hi, b.q3 + 1.5 * iqr);
    c.line(cx, Y(wlo), cx, Y(b.q1), "#444");
    c.line(cx, Y(b.q3), cx, Y(whi), "#444");
    c.line(cx - bw / 4, Y(wlo), cx + bw / 4, Y(wlo), "#444");
    c.line(cx - bw / 4, Y(whi), cx + bw / 4, Y(whi), "#444");
    c.rect(cx - bw / 2, Y(b.q3), bw, std::max(1.0, Y(b.q1) - Y(b.q3)), "#ffffff",
           " stroke=\"" + col + "\" stroke-width=\"1.5\"");
    c.line(cx - bw / 2, Y(b.median), cx + bw / 2, Y(b.median), col, 2.5);
    for (const auto& r : runs) {
      const double val = metric_value(r.vehicles[v], metric);
      if (val < b.q1 - 1.5 * iqr || val > b.q3 + 1.5 * iqr) {
        c.circle(cx, Y(val), 2.5, "none", " stroke=\"" + col + "\" stroke-width=\"1.2\"");
      }
    }
    c.text(cx - 28, h - bottom + 18, "vehicle " + std::to_string(runs.front().vehicles[v].vehicle_id),
           11);
  }
  return c.str();
}

}  // namespace fleethfc
