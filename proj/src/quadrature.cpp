#include "ddr/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ddr {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n == 1) {
    nodes[0] = 0.0;
    weights[0] = 2.0;
  }
}

std::vector<EdgeQuadPoint> edge_quadrature(const Vec2& a, const Vec2& b, int degree) {
  const int n = std::max(1, (degree + 2) / 2);
  std::vector<double> t, w;
  gauss_legendre(n, t, w);
  const double half = 0.5 * (b - a).norm();
  std::vector<EdgeQuadPoint> rule(n);
  for (int i = 0; i < n; ++i) {
    rule[i].t = t[i];
    rule[i].x = 0.5 * (1.0 - t[i]) * a + 0.5 * (1.0 + t[i]) * b;
    rule[i].w = w[i] * half;
  }
  return rule;
}

namespace {

void append_triangle_rule(const Vec2& p0, const Vec2& p1, const Vec2& p2, int degree,
                          std::vector<QuadPoint>& out) {
  // Collapsed-square map x(u,v) = (1-u) p0 + u (1-v) p1 + u v p2 with
  // jacobian 2A u; polynomials of total degree d become degree d+1 in u.
  const double area2 = (p1 - p0).x() * (p2 - p0).y() - (p2 - p0).x() * (p1 - p0).y();
  const int nu = std::max(1, (degree + 3) / 2);
  const int nv = std::max(1, (degree + 2) / 2);
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre(nu, xu, wu);
  gauss_legendre(nv, xv, wv);
  for (int i = 0; i < nu; ++i) {
    const double u = 0.5 * (xu[i] + 1.0);
    for (int j = 0; j < nv; ++j) {
      const double v = 0.5 * (xv[j] + 1.0);
      QuadPoint qp;
      qp.x = (1.0 - u) * p0 + u * (1.0 - v) * p1 + u * v * p2;
      qp.w = 0.25 * wu[i] * wv[j] * area2 * u;
      out.push_back(qp);
    }
  }
}

// Ear-clipping triangulation of a simple CCW polygon, used when a fan from
// the interior point is not positively oriented.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& loop) {
  std::vector<int> idx(loop.size());
  for (size_t i = 0; i < loop.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  auto cross = [&](int a, int b, int c) {
    return (loop[b] - loop[a]).x() * (loop[c] - loop[a]).y() -
           (loop[c] - loop[a]).x() * (loop[b] - loop[a]).y();
  };
  int guard = 0;
  while (idx.size() > 3) {
    if (++guard > 10000) throw std::runtime_error("ear_clip: no ear found");
    bool clipped = false;
    const int m = static_cast<int>(idx.size());
    for (int i = 0; i < m; ++i) {
      const int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      if (cross(ia, ib, ic) <= 0) continue;
      bool empty = true;
      for (int j = 0; j < m && empty; ++j) {
        const int v = idx[j];
        if (v == ia || v == ib || v == ic) continue;
        const double d0 = cross(ia, ib, v), d1 = cross(ib, ic, v), d2 = cross(ic, ia, v);
        if (d0 >= 0 && d1 >= 0 && d2 >= 0) empty = false;
      }
      if (!empty) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) throw std::runtime_error("ear_clip: polygon not simple");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

}  // namespace

std::vector<QuadPoint> element_quadrature(const std::vector<Vec2>& loop, const Vec2& center,
                                          int degree) {
  const int n = static_cast<int>(loop.size());
  const double area = polygon_area(loop);
  bool fan_ok = true;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    const double a2 = (a - center).x() * (b - center).y() - (b - center).x() * (a - center).y();
    if (a2 <= 1e-14 * area) {
      fan_ok = false;
      break;
    }
  }
  std::vector<QuadPoint> rule;
  if (fan_ok) {
    for (int i = 0; i < n; ++i) append_triangle_rule(center, loop[i], loop[(i + 1) % n], degree, rule);
  } else {
    for (const auto& t : ear_clip(loop))
      append_triangle_rule(loop[t[0]], loop[t[1]], loop[t[2]], degree, rule);
  }
  return rule;
}

}  // namespace ddr
