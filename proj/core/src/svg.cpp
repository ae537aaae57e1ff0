#include "soapgait/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "soapgait/errors.hpp"

namespace soapgait {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Blue-white-red diverging map on [-1, 1].
std::string diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t < 0) {
    const double u = 1.0 + t;  // 0 at -1, 1 at 0
    r = static_cast<int>(std::lround(255 * u));
    g = static_cast<int>(std::lround(255 * u));
    b = 255;
  } else {
    const double u = 1.0 - t;
    r = 255;
    g = static_cast<int>(std::lround(255 * u));
    b = static_cast<int>(std::lround(255 * u));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

struct PlotFrame {
  double left, top, width, height;
  double x_min, x_max, y_min, y_max;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * width;
  }
  double py(double y) const {
    return top + (y_max - y) / (y_max - y_min) * height;
  }
};

void draw_polyline(std::ofstream& out, const PlotFrame& f,
                   const std::vector<Eigen::Vector2d>& pts, bool closed,
                   const std::string& color, double width, bool dashed) {
  if (pts.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
      << num(width) << "\"";
  if (dashed) out << " stroke-dasharray=\"7 5\"";
  out << " points=\"";
  for (const auto& p : pts) {
    out << num(f.px(p.x())) << ',' << num(f.py(p.y())) << ' ';
  }
  if (closed) out << num(f.px(pts[0].x())) << ',' << num(f.py(pts[0].y()));
  out << "\"/>\n";
}

void draw_axes(std::ofstream& out, const PlotFrame& f, const std::string& title,
               const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top)
      << "\" width=\"" << num(f.width) << "\" height=\"" << num(f.height)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\""
      << num(f.top - 10) << "\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\""
      << num(f.top + f.height + 34) << "\" text-anchor=\"middle\" "
      << "font-size=\"13\">" << xlabel << "</text>\n";
  out << "<text x=\"" << num(f.left - 42) << "\" y=\""
      << num(f.top + f.height / 2) << "\" text-anchor=\"middle\" "
      << "font-size=\"13\" transform=\"rotate(-90 " << num(f.left - 42) << ' '
      << num(f.top + f.height / 2) << ")\">" << ylabel << "</text>\n";
  // Tick labels at the axis extremes.
  out << "<text x=\"" << num(f.left) << "\" y=\"" << num(f.top + f.height + 16)
      << "\" text-anchor=\"middle\" font-size=\"11\">" << num(f.x_min)
      << "</text>\n";
  out << "<text x=\"" << num(f.left + f.width) << "\" y=\""
      << num(f.top + f.height + 16) << "\" text-anchor=\"middle\" "
      << "font-size=\"11\">" << num(f.x_max) << "</text>\n";
  out << "<text x=\"" << num(f.left - 8) << "\" y=\""
      << num(f.top + f.height + 4) << "\" text-anchor=\"end\" "
      << "font-size=\"11\">" << num(f.y_min) << "</text>\n";
  out << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(f.top + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(f.y_max)
      << "</text>\n";
}

}  // namespace

void write_field_svg(const std::string& path, const FieldGrid& field,
                     const std::string& title, const std::string& xlabel,
                     const std::string& ylabel,
                     const std::vector<GaitOverlay>& overlays) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file: " + path);
  }
  const GridSpec& spec = field.spec();
  const int w_img = 700, h_img = 600;
  PlotFrame f{60, 36, 500, 500, spec.bounds.b1.min, spec.bounds.b1.max,
              spec.bounds.b2.min, spec.bounds.b2.max};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << w_img << "\" height=\"" << h_img << "\" viewBox=\"0 0 " << w_img
      << ' ' << h_img << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double vmax = std::max(field.max_abs(), 1e-300);

  // Heatmap: one cell per grid interval, colored by the node value.
  const double cw = f.width / (spec.n1 - 1);
  const double ch = f.height / (spec.n2 - 1);
  for (int i = 0; i + 1 < spec.n1; ++i) {
    for (int j = 0; j + 1 < spec.n2; ++j) {
      const double v = 0.25 * (field.at(i, j) + field.at(i + 1, j) +
                               field.at(i, j + 1) + field.at(i + 1, j + 1));
      const double x = f.px(spec.beta1(i));
      const double y = f.py(spec.beta2(j + 1));
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(cw + 0.5) << "\" height=\"" << num(ch + 0.5) << "\" fill=\""
          << diverging_color(v / vmax) << "\"/>\n";
    }
  }

  // Light guide contours, then the emphasized zero contour.
  for (const double level : {-0.5 * vmax, 0.5 * vmax}) {
    for (const ContourLine& line : extract_contours(field, level)) {
      draw_polyline(out, f, line.points, line.closed, "#888888", 0.8, false);
    }
  }
  for (const ContourLine& line : extract_contours(field, 0.0)) {
    draw_polyline(out, f, line.points, line.closed, "#000000", 2.2, false);
  }

  for (const GaitOverlay& overlay : overlays) {
    if (overlay.gait == nullptr) continue;
    draw_polyline(out, f, overlay.gait->waypoints, true, overlay.color, 2.4,
                  overlay.dashed);
  }

  draw_axes(out, f, title, xlabel, ylabel);

  // Colorbar with the plotted range.
  const double bar_x = f.left + f.width + 26, bar_w = 18;
  const int bar_steps = 64;
  for (int k = 0; k < bar_steps; ++k) {
    const double t = 1.0 - 2.0 * (k + 0.5) / bar_steps;  // +1 at top
    const double y = f.top + f.height * k / bar_steps;
    out << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(y) << "\" width=\""
        << num(bar_w) << "\" height=\"" << num(f.height / bar_steps + 0.5)
        << "\" fill=\"" << diverging_color(t) << "\"/>\n";
  }
  out << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(f.top) << "\" width=\""
      << num(bar_w) << "\" height=\"" << num(f.height)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  out << "<text x=\"" << num(bar_x + bar_w + 6) << "\" y=\"" << num(f.top + 5)
      << "\" font-size=\"11\">" << num(vmax) << "</text>\n";
  out << "<text x=\"" << num(bar_x + bar_w + 6) << "\" y=\""
      << num(f.top + f.height / 2 + 4) << "\" font-size=\"11\">0</text>\n";
  out << "<text x=\"" << num(bar_x + bar_w + 6) << "\" y=\""
      << num(f.top + f.height + 4) << "\" font-size=\"11\">" << num(-vmax)
      << "</text>\n";
  out << "<text x=\"" << num(bar_x) << "\" y=\"" << num(f.top - 10)
      << "\" font-size=\"11\">range [" << num(field.min_value()) << ", "
      << num(field.max_value()) << "]</text>\n";

  out << "</svg>\n";
}

void write_trajectory_svg(const std::string& path,
                          const std::vector<TrajectorySample>& trajectory,
                          const SystemModel& model, int n_snapshots) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file: " + path);
  }
  if (trajectory.empty()) {
    throw DomainError("trajectory is empty");
  }

  // Gather snapshot bodies in world coordinates.
  struct WorldSegment {
    Eigen::Vector2d a, b;
  };
  std::vector<std::vector<WorldSegment>> snapshots;
  const std::size_t stride =
      std::max<std::size_t>(1, trajectory.size() / std::max(1, n_snapshots));
  for (std::size_t k = 0; k < trajectory.size(); k += stride) {
    const TrajectorySample& s = trajectory[k];
    const BodyDiscretization body = model.body(s.beta);
    std::vector<WorldSegment> world;
    const double cg = std::cos(s.g.theta), sg = std::sin(s.g.theta);
    for (const auto& seg : body.segments) {
      const Eigen::Vector2d center(
          s.g.x + cg * seg.pose.x - sg * seg.pose.y,
          s.g.y + sg * seg.pose.x + cg * seg.pose.y);
      const double ang = s.g.theta + seg.pose.theta;
      const Eigen::Vector2d dir(std::cos(ang), std::sin(ang));
      world.push_back(
          {center - 0.5 * seg.length * dir, center + 0.5 * seg.length * dir});
    }
    snapshots.push_back(std::move(world));
  }

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  auto grow = [&](const Eigen::Vector2d& p) {
    x_min = std::min(x_min, p.x());
    x_max = std::max(x_max, p.x());
    y_min = std::min(y_min, p.y());
    y_max = std::max(y_max, p.y());
  };
  for (const auto& s : trajectory) grow({s.g.x, s.g.y});
  for (const auto& snap : snapshots) {
    for (const auto& seg : snap) {
      grow(seg.a);
      grow(seg.b);
    }
  }
  const double pad = 0.1 * std::max({x_max - x_min, y_max - y_min, 0.5});
  x_min -= pad;
  x_max += pad;
  y_min -= pad;
  y_max += pad;

  const int w_img = 760;
  const double aspect = (y_max - y_min) / (x_max - x_min);
  const double plot_w = 620;
  const double plot_h = plot_w * aspect;
  const int h_img = static_cast<int>(plot_h) + 110;
  PlotFrame f{70, 40, plot_w, plot_h, x_min, x_max, y_min, y_max};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << w_img << "\" height=\"" << h_img << "\" viewBox=\"0 0 " << w_img
      << ' ' << h_img << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<Eigen::Vector2d> path_pts;
  path_pts.reserve(trajectory.size());
  for (const auto& s : trajectory) path_pts.emplace_back(s.g.x, s.g.y);
  draw_polyline(out, f, path_pts, false, "#c03030", 1.6, false);

  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    // Later snapshots darker, so progress reads left to right in time.
    const int shade =
        180 - static_cast<int>(150.0 * k / std::max<std::size_t>(1, snapshots.size() - 1));
    char color[8];
    std::snprintf(color, sizeof(color), "#%02x%02x%02x", shade, shade, shade);
    for (const auto& seg : snapshots[k]) {
      out << "<line x1=\"" << num(f.px(seg.a.x())) << "\" y1=\""
          << num(f.py(seg.a.y())) << "\" x2=\"" << num(f.px(seg.b.x()))
          << "\" y2=\"" << num(f.py(seg.b.y())) << "\" stroke=\"" << color
          << "\" stroke-width=\"2.4\" stroke-linecap=\"round\"/>\n";
    }
  }

  draw_axes(out, f, "world trajectory (body-lengths)", "x", "y");
  out << "</svg>\n";
}

}  // namespace soapgait
