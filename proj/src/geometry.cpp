#include "ddr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ddr {

double polygon_area(const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  double twice = 0;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  double twice = 0;
  Vec2 c = Vec2::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    const double cross = a.x() * b.y() - b.x() * a.y();
    twice += cross;
    c += cross * (a + b);
  }
  return c / (3.0 * twice);
}

double polygon_diameter(const std::vector<Vec2>& loop) {
  double d2 = 0;
  for (size_t i = 0; i < loop.size(); ++i)
    for (size_t j = i + 1; j < loop.size(); ++j)
      d2 = std::max(d2, (loop[i] - loop[j]).squaredNorm());
  return std::sqrt(d2);
}

int winding_number(const Vec2& p, const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  int wn = 0;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    const double side = (b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y());
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && side > 0) ++wn;
    } else {
      if (b.y() <= p.y() && side < 0) --wn;
    }
  }
  return wn;
}

double distance_to_boundary(const Vec2& p, const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  double d = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) d = std::min(d, point_segment_distance(p, loop[i], loop[(i + 1) % n]));
  return d;
}

bool strictly_inside(const Vec2& p, const std::vector<Vec2>& loop, double margin) {
  if (winding_number(p, loop) == 0) return false;
  return distance_to_boundary(p, loop) > margin;
}

bool polygon_is_simple(const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    if ((loop[(i + 1) % n] - loop[i]).norm() == 0) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // skip adjacent pairs (they share an endpoint)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      auto hit = segment_intersection(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n], 1e-12);
      if (hit) return false;
    }
  }
  return true;
}

Vec2 interior_point(const std::vector<Vec2>& loop) {
  const double diam = polygon_diameter(loop);
  const Vec2 c = polygon_centroid(loop);
  if (strictly_inside(c, loop, 1e-12 * diam)) return c;
  // fall back to the centroid of the largest vertex triangle
  const int n = static_cast<int>(loop.size());
  double best = -1;
  Vec2 pt = c;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double a2 = std::abs((loop[j] - loop[i]).x() * (loop[k] - loop[i]).y() -
                                   (loop[k] - loop[i]).x() * (loop[j] - loop[i]).y());
        if (a2 > best) {
          const Vec2 cand = (loop[i] + loop[j] + loop[k]) / 3.0;
          if (strictly_inside(cand, loop, 1e-13 * diam)) {
            best = a2;
            pt = cand;
          }
        }
      }
  return pt;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double project_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0) return 0;
  return std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
}

std::optional<std::pair<double, double>> segment_intersection(const Vec2& a, const Vec2& b,
                                                              const Vec2& c, const Vec2& d,
                                                              double eps) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = r.x() * s.y() - r.y() * s.x();
  const double scale = r.norm() * s.norm();
  if (std::abs(denom) <= 1e-14 * scale) return std::nullopt;
  const Vec2 ca = c - a;
  const double t = (ca.x() * s.y() - ca.y() * s.x()) / denom;
  const double u = (ca.x() * r.y() - ca.y() * r.x()) / denom;
  if (t < -eps || t > 1 + eps || u < -eps || u > 1 + eps) return std::nullopt;
  return std::make_pair(t, u);
}

}  // namespace ddr
