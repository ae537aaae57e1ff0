#include "soapgait/contour.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace soapgait {
namespace {

// Grid edge identifier: horizontal edges join (i,j)-(i+1,j), vertical edges
// join (i,j)-(i,j+1). Used as exact keys when chaining crossing segments.
struct EdgeId {
  bool horizontal;
  int i, j;
  auto operator<=>(const EdgeId&) const = default;
};

struct Crossing {
  EdgeId edge;
  Eigen::Vector2d point;
};

struct Segment {
  Crossing a, b;
  bool used = false;
};

}  // namespace

std::vector<ContourLine> extract_contours(const FieldGrid& f, double level) {
  const GridSpec& spec = f.spec();
  // Nudge values landing exactly on the level so every cell edge has a
  // well-defined crossing state.
  const double nudge = 1e-12 * std::max(1.0, f.max_abs());
  auto value = [&](int i, int j) {
    const double v = f.at(i, j) - level;
    return (v == 0.0) ? nudge : v;
  };

  auto cross_h = [&](int i, int j) {
    const double va = value(i, j), vb = value(i + 1, j);
    const double t = va / (va - vb);
    return Crossing{EdgeId{true, i, j},
                    {spec.beta1(i) + t * spec.h1(), spec.beta2(j)}};
  };
  auto cross_v = [&](int i, int j) {
    const double va = value(i, j), vb = value(i, j + 1);
    const double t = va / (va - vb);
    return Crossing{EdgeId{false, i, j},
                    {spec.beta1(i), spec.beta2(j) + t * spec.h2()}};
  };

  std::vector<Segment> segments;
  for (int i = 0; i + 1 < spec.n1; ++i) {
    for (int j = 0; j + 1 < spec.n2; ++j) {
      const bool sw = value(i, j) > 0, se = value(i + 1, j) > 0;
      const bool ne = value(i + 1, j + 1) > 0, nw = value(i, j + 1) > 0;
      const int code = (sw ? 1 : 0) | (se ? 2 : 0) | (ne ? 4 : 0) | (nw ? 8 : 0);
      if (code == 0 || code == 15) continue;

      const auto S = [&] { return cross_h(i, j); };
      const auto N = [&] { return cross_h(i, j + 1); };
      const auto W = [&] { return cross_v(i, j); };
      const auto E = [&] { return cross_v(i + 1, j); };

      switch (code) {
        case 1: case 14: segments.push_back({S(), W()}); break;
        case 2: case 13: segments.push_back({S(), E()}); break;
        case 3: case 12: segments.push_back({W(), E()}); break;
        case 4: case 11: segments.push_back({E(), N()}); break;
        case 6: case 9:  segments.push_back({S(), N()}); break;
        case 7: case 8:  segments.push_back({W(), N()}); break;
        case 5: case 10: {
          // Saddle: disambiguate with the cell-center value.
          const double center = 0.25 * (value(i, j) + value(i + 1, j) +
                                        value(i, j + 1) + value(i + 1, j + 1));
          const bool center_pos = center > 0;
          if ((code == 5) == center_pos) {
            segments.push_back({S(), E()});
            segments.push_back({W(), N()});
          } else {
            segments.push_back({S(), W()});
            segments.push_back({E(), N()});
          }
          break;
        }
        default: break;
      }
    }
  }

  // Chain segments into polylines via shared grid edges.
  std::map<EdgeId, std::vector<std::size_t>> by_edge;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    by_edge[segments[k].a.edge].push_back(k);
    by_edge[segments[k].b.edge].push_back(k);
  }

  auto walk = [&](std::size_t start, std::vector<Crossing>& out) {
    // Extend from the b-end of the start segment as far as possible.
    Segment& s0 = segments[start];
    s0.used = true;
    out.push_back(s0.a);
    out.push_back(s0.b);
    EdgeId cursor = s0.b.edge;
    while (true) {
      std::size_t next = segments.size();
      for (std::size_t k : by_edge[cursor]) {
        if (!segments[k].used) {
          next = k;
          break;
        }
      }
      if (next == segments.size()) break;
      Segment& s = segments[next];
      s.used = true;
      const Crossing& far = (s.a.edge == cursor) ? s.b : s.a;
      out.push_back(far);
      cursor = far.edge;
      if (cursor == out.front().edge) break;  // loop closed
    }
  };

  std::vector<ContourLine> lines;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].used) continue;
    std::vector<Crossing> forward;
    walk(k, forward);

    ContourLine line;
    if (forward.size() > 2 && forward.back().edge == forward.front().edge) {
      line.closed = true;
      forward.pop_back();
    } else {
      // Open chain: also extend backwards from the a-end.
      std::vector<Crossing> backward;
      EdgeId cursor = forward.front().edge;
      while (true) {
        std::size_t next = segments.size();
        for (std::size_t idx : by_edge[cursor]) {
          if (!segments[idx].used) {
            next = idx;
            break;
          }
        }
        if (next == segments.size()) break;
        Segment& s = segments[next];
        s.used = true;
        const Crossing& far = (s.a.edge == cursor) ? s.b : s.a;
        backward.push_back(far);
        cursor = far.edge;
      }
      forward.insert(forward.begin(), backward.rbegin(), backward.rend());
    }
    for (const Crossing& c : forward) line.points.push_back(c.point);
    lines.push_back(std::move(line));
  }
  return lines;
}

bool encloses_point(const ContourLine& line, const Eigen::Vector2d& p) {
  if (!line.closed || line.points.size() < 3) return false;
  bool inside = false;
  const std::size_t n = line.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector2d& a = line.points[k];
    const Eigen::Vector2d& b = line.points[(k + 1) % n];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace soapgait
