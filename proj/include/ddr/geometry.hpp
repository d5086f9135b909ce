#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace ddr {

using Vec2 = Eigen::Vector2d;

// Signed area of a closed polygonal loop (positive when counterclockwise).
double polygon_area(const std::vector<Vec2>& loop);

Vec2 polygon_centroid(const std::vector<Vec2>& loop);

double polygon_diameter(const std::vector<Vec2>& loop);

// Winding number of the loop around p; nonzero means p is enclosed.
int winding_number(const Vec2& p, const std::vector<Vec2>& loop);

// True when p is enclosed and its distance to the boundary exceeds margin.
bool strictly_inside(const Vec2& p, const std::vector<Vec2>& loop, double margin);

double distance_to_boundary(const Vec2& p, const std::vector<Vec2>& loop);

// No two non-adjacent edges intersect and no edge degenerates.
bool polygon_is_simple(const std::vector<Vec2>& loop);

// Reconstruction center: the centroid when it lies strictly inside the
// polygon, otherwise the centroid of the largest triangle spanned by three
// polygon vertices.
Vec2 interior_point(const std::vector<Vec2>& loop);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Parameter of the projection of p onto the segment [a,b], clamped to [0,1].
double project_on_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// Intersection of [a,b] and [c,d] as parameters (s,t) with the point at
// a + s(b-a). Collinear overlaps are reported as no intersection; the
// parameters are accepted within eps of [0,1].
std::optional<std::pair<double, double>> segment_intersection(const Vec2& a, const Vec2& b,
                                                              const Vec2& c, const Vec2& d,
                                                              double eps);

}  // namespace ddr
