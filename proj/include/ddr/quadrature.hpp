#pragma once

#include "ddr/geometry.hpp"

#include <vector>

namespace ddr {

struct QuadPoint {
  Vec2 x;
  double w;
};

// Gauss-Legendre nodes and weights on [-1,1], exact up to degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct EdgeQuadPoint {
  Vec2 x;    // physical point
  double t;  // normalized coordinate in [-1,1] along the stored edge direction
  double w;  // physical weight (includes the length jacobian)
};

// Rule on the segment [a,b], exact for polynomials of the arclength up to
// the requested degree.
std::vector<EdgeQuadPoint> edge_quadrature(const Vec2& a, const Vec2& b, int degree);

// Rule on a simple polygon, exact for bivariate polynomials up to the
// requested degree. Sub-triangles come from a fan around `center` when that
// fan is positively oriented, otherwise from an ear-clipping triangulation;
// all weights are positive and sum to the polygon area.
std::vector<QuadPoint> element_quadrature(const std::vector<Vec2>& loop, const Vec2& center,
                                          int degree);

}  // namespace ddr
