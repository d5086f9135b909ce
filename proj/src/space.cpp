#include "ddr/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddr {

DofMap build_dof_map(const FittedMesh& mesh, int k) {
  if (k < 0) throw std::invalid_argument("build_dof_map: k must be >= 0");
  DofMap d;
  d.k = k;
  d.elem_block = poly_dim_2d(k - 1);
  d.edge_block = poly_dim_1d(k - 1);
  d.n_elements = mesh.n_elements();

  // region seen by each edge / vertex through the adjacent elements
  std::vector<char> edge_int(mesh.n_edges(), 0), edge_ext(mesh.n_edges(), 0);
  std::vector<char> vert_int(mesh.n_vertices(), 0), vert_ext(mesh.n_vertices(), 0);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto& el = mesh.elements[t];
    auto& edge_flag = el.region == Region::Int ? edge_int : edge_ext;
    auto& vert_flag = el.region == Region::Int ? vert_int : vert_ext;
    for (int e : el.edge_loop) edge_flag[e] = 1;
    for (int v : el.vertex_loop) vert_flag[v] = 1;
  }

  d.edge_carrier_of.assign(mesh.n_edges(), {-1, -1});
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_on_interface[e]) {
      d.edge_carrier_of[e][static_cast<int>(Region::Int)] =
          static_cast<int>(d.edge_carriers.size());
      d.edge_carriers.push_back({e, Region::Int});
      d.edge_carrier_of[e][static_cast<int>(Region::Ext)] =
          static_cast<int>(d.edge_carriers.size());
      d.edge_carriers.push_back({e, Region::Ext});
    } else {
      const Region side = edge_int[e] ? Region::Int : Region::Ext;
      const int c = static_cast<int>(d.edge_carriers.size());
      d.edge_carriers.push_back({e, side});
      d.edge_carrier_of[e] = {c, c};
    }
  }
  d.vertex_carrier_of.assign(mesh.n_vertices(), {-1, -1});
  d.interface_vertex_pairs.reserve(mesh.interface_vertices.size());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (mesh.vertex_on_interface[v]) {
      const int ci = static_cast<int>(d.vertex_carriers.size());
      d.vertex_carriers.push_back({v, Region::Int});
      const int ce = static_cast<int>(d.vertex_carriers.size());
      d.vertex_carriers.push_back({v, Region::Ext});
      d.vertex_carrier_of[v] = {ci, ce};
    } else {
      if (vert_int[v] && vert_ext[v])
        throw TopologyError("build_dof_map: vertex off the interface seen from both regions");
      const Region side = vert_int[v] ? Region::Int : Region::Ext;
      const int c = static_cast<int>(d.vertex_carriers.size());
      d.vertex_carriers.push_back({v, side});
      d.vertex_carrier_of[v] = {c, c};
    }
  }

  d.edge_offset = d.n_elements * d.elem_block;
  d.vertex_offset = d.edge_offset + static_cast<int>(d.edge_carriers.size()) * d.edge_block;
  d.size = d.vertex_offset + static_cast<int>(d.vertex_carriers.size());

  for (int v : mesh.interface_vertices)
    d.interface_vertex_pairs.push_back({d.vertex_dof(d.vertex_carrier_of[v][0]),
                                        d.vertex_dof(d.vertex_carrier_of[v][1])});

  d.on_boundary.assign(d.size, 0);
  for (int e : mesh.boundary_edges) {
    const int c = d.edge_carrier_of[e][0];
    for (int j = 0; j < d.edge_block; ++j) d.on_boundary[d.edge_dof(c, j)] = 1;
    for (int v : {mesh.edges[e].v0, mesh.edges[e].v1})
      d.on_boundary[d.vertex_dof(d.vertex_carrier_of[v][0])] = 1;
  }
  d.free_index.assign(d.size, -1);
  for (int i = 0; i < d.size; ++i) {
    if (!d.on_boundary[i]) {
      d.free_index[i] = static_cast<int>(d.free_dofs.size());
      d.free_dofs.push_back(i);
    }
  }
  return d;
}

std::vector<int> element_globals(const FittedMesh& mesh, const DofMap& dofs, int t) {
  const auto& el = mesh.elements[t];
  std::vector<int> g;
  g.reserve(dofs.elem_block + el.edge_loop.size() * dofs.edge_block + el.vertex_loop.size());
  for (int j = 0; j < dofs.elem_block; ++j) g.push_back(dofs.elem_dof(t, j));
  for (int e : el.edge_loop) {
    const int c = dofs.edge_carrier(e, el.region);
    for (int j = 0; j < dofs.edge_block; ++j) g.push_back(dofs.edge_dof(c, j));
  }
  for (int v : el.vertex_loop) g.push_back(dofs.vertex_dof(dofs.vertex_carrier(v, el.region)));
  return g;
}

}  // namespace ddr
