#pragma once

#include "ddr/geometry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddr {

enum class Region : std::uint8_t { Int = 0, Ext = 1 };

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TopologyError : MeshError {
  using MeshError::MeshError;
};
struct DegenerateElement : MeshError {
  using MeshError::MeshError;
};
struct DegenerateCut : MeshError {
  using MeshError::MeshError;
};

// Closed polygonal chain; segment i joins points[i] and points[(i+1) % n].
struct PolygonalChain {
  std::vector<Vec2> points;
  int size() const { return static_cast<int>(points.size()); }
  double length() const;
  bool is_simple() const { return polygon_is_simple(points); }
};

struct MeshEdge {
  int v0 = -1, v1 = -1;
  Vec2 normal = Vec2::Zero();  // unit normal ((v1-v0).y, -(v1-v0).x)/|v1-v0|
  double length = 0;
};

struct MeshElement {
  std::vector<int> vertex_loop;  // counterclockwise; vertex i starts edge i
  std::vector<int> edge_loop;
  std::vector<int> orientation;  // +1 when the loop traverses the edge v0 -> v1
  Region region = Region::Ext;
  double area = 0;
  double diameter = 0;
  Vec2 center = Vec2::Zero();  // interior point used for reconstructions
};

struct InterfaceEdge {
  int edge = -1;
  int elem_int = -1;
  int elem_ext = -1;
};

// Pieces whose area fell under the sliver threshold during cutting; they are
// kept in the mesh and reported here.
struct CutDefect {
  int element = -1;
  double area = 0;
  double threshold = 0;
};

struct DomainBox {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Ones();
  double area() const { return (hi.x() - lo.x()) * (hi.y() - lo.y()); }
};

struct FittedMesh {
  std::vector<Vec2> vertices;
  std::vector<MeshEdge> edges;
  std::vector<MeshElement> elements;
  std::vector<std::array<int, 2>> edge_elems;  // adjacent elements, -1 if none
  std::vector<InterfaceEdge> interface_edges;
  std::vector<int> boundary_edges;
  std::vector<int> interface_vertices;  // sorted ids of the vertices on the interface
  std::vector<char> edge_on_interface;
  std::vector<char> vertex_on_interface;
  std::vector<CutDefect> cut_defects;
  DomainBox box;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  double total_area() const;
  double max_diameter() const;
  std::vector<Vec2> element_polygon(int t) const;
};

// Core constructor: vertex pool plus counterclockwise vertex loops with
// region labels. Derives edges, adjacency, interface and boundary sets, and
// orients interface edges from the internal to the external region.
FittedMesh assemble_mesh(std::vector<Vec2> vertices, const std::vector<std::vector<int>>& loops,
                         const std::vector<Region>& labels, const DomainBox& box);

FittedMesh build_cartesian_mesh(int n, const DomainBox& box);

// Structured-split triangulation with max element diameter <= h_target.
FittedMesh build_triangular_mesh(double h_target, const DomainBox& box);
FittedMesh build_triangular_mesh_n(int n, const DomainBox& box);

// Moves every vertex not on the boundary or on the interface within a disc
// of radius amplitude_factor times the shortest incident edge, retrying a
// draw when an incident element would lose simplicity or positive area.
FittedMesh perturb_vertices(const FittedMesh& mesh, double amplitude_factor, std::uint64_t seed);

// Closed parametric curve with optional corner parameters; points are
// addressed by arclength.
class InterfaceCurve {
 public:
  InterfaceCurve() = default;

  static InterfaceCurve circle(const Vec2& center, double radius);
  static InterfaceCurve square(const Vec2& center, double half_side);
  // radius(theta) = R (1 + amplitude cos(lobes theta))
  static InterfaceCurve deformed_circle(const Vec2& center, double radius, double amplitude,
                                        int lobes);

  double length() const { return total_length_; }
  Vec2 at_arclength(double s) const;
  const std::vector<double>& corner_arclengths() const { return corners_s_; }

 private:
  void build_table(int samples);
  std::function<Vec2(double)> point_;  // parameter u in [0,1)
  std::vector<double> corners_u_;
  std::vector<double> corners_s_;
  std::vector<double> table_u_, table_s_;
  double total_length_ = 0;
};

// Samples the curve with segment length close to h_background / 2^ratio;
// corner parameters are always sampled and the segment count per arc doubles
// with each increment of the ratio.
PolygonalChain discretize_interface(const InterfaceCurve& curve, int refinement_ratio,
                                    double h_background);

// Splits the background elements along the chain and labels the resulting
// elements by the winding number of their interior point. Every chain
// segment becomes a union of mesh edges; intersection points within
// 1e-10 h_T of an existing vertex are snapped onto it.
FittedMesh cut_mesh(const FittedMesh& background, const PolygonalChain& chain);

}  // namespace ddr
