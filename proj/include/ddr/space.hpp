#pragma once

#include "ddr/basis.hpp"
#include "ddr/mesh.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace ddr {

using DiscreteVector = Eigen::VectorXd;

// Scalar field defined region-wise; both restrictions extend continuously to
// the closed subdomains so traces on the interface are taken per side.
using RegionFn = std::function<double(const Vec2&, Region)>;
using RegionGradFn = std::function<Vec2(const Vec2&, Region)>;
using PointFn = std::function<double(const Vec2&)>;

// Unknowns: one polynomial of degree k-1 per element, one of degree k-1 per
// edge side, one value per vertex side. Edges and vertices on the interface
// carry one copy per region; all other entities carry a single copy.
struct DofMap {
  struct Carrier {
    int entity = -1;
    Region side = Region::Ext;
  };

  int k = 0;
  int elem_block = 0;  // dim P^{k-1}(T)
  int edge_block = 0;  // dim P^{k-1}(E)
  std::vector<Carrier> edge_carriers;
  std::vector<Carrier> vertex_carriers;
  // per mesh entity: carrier index by side (same entry twice off the interface)
  std::vector<std::array<int, 2>> edge_carrier_of;
  std::vector<std::array<int, 2>> vertex_carrier_of;
  int n_elements = 0;
  int edge_offset = 0;
  int vertex_offset = 0;
  int size = 0;
  std::vector<char> on_boundary;  // per global dof
  std::vector<int> free_dofs;
  std::vector<int> free_index;  // -1 for constrained dofs
  // (internal-side, external-side) vertex dof per interface vertex, ordered
  // like mesh.interface_vertices
  std::vector<std::array<int, 2>> interface_vertex_pairs;

  int elem_dof(int t, int j) const { return t * elem_block + j; }
  int edge_dof(int carrier, int j) const { return edge_offset + carrier * edge_block + j; }
  int vertex_dof(int carrier) const { return vertex_offset + carrier; }
  int edge_carrier(int e, Region side) const {
    return edge_carrier_of[e][static_cast<int>(side)];
  }
  int vertex_carrier(int v, Region side) const {
    return vertex_carrier_of[v][static_cast<int>(side)];
  }
};

DofMap build_dof_map(const FittedMesh& mesh, int k);

// Per-element local numbering: element block, then the edge blocks in loop
// order, then one vertex value per loop vertex.
std::vector<int> element_globals(const FittedMesh& mesh, const DofMap& dofs, int t);

}  // namespace ddr
