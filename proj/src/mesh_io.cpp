#include "ddr/mesh_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace ddr {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_mesh(const FittedMesh& mesh, std::ostream& out) {
  out << "POLYMESH 1\n";
  out << mesh.n_vertices() << "\n";
  for (const Vec2& v : mesh.vertices) out << fmt_double(v.x()) << " " << fmt_double(v.y()) << "\n";
  out << mesh.n_edges() << "\n";
  for (const auto& e : mesh.edges) out << e.v0 << " " << e.v1 << "\n";
  out << mesh.n_elements() << "\n";
  for (const auto& el : mesh.elements) {
    out << (el.region == Region::Int ? "int" : "ext") << " " << el.edge_loop.size();
    for (int e : el.edge_loop) out << " " << e;
    out << "\n";
  }
  out << mesh.interface_edges.size() << "\n";
  for (const auto& ie : mesh.interface_edges) out << ie.edge << "\n";
}

FittedMesh read_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "POLYMESH" || version != 1) throw MeshError("read_mesh: bad header");
  int nv = 0;
  in >> nv;
  if (!in || nv < 3) throw MeshError("read_mesh: bad vertex count");
  std::vector<Vec2> verts(nv);
  for (auto& v : verts) in >> v.x() >> v.y();
  int ne = 0;
  in >> ne;
  std::vector<std::array<int, 2>> file_edges(ne);
  for (auto& e : file_edges) in >> e[0] >> e[1];
  int nt = 0;
  in >> nt;
  std::vector<std::vector<int>> loops(nt);
  std::vector<Region> labels(nt);
  for (int t = 0; t < nt; ++t) {
    std::string reg;
    int count = 0;
    in >> reg >> count;
    if (reg != "int" && reg != "ext") throw MeshError("read_mesh: bad region label");
    labels[t] = reg == "int" ? Region::Int : Region::Ext;
    if (count < 3) throw MeshError("read_mesh: element with fewer than 3 edges");
    std::vector<int> eids(count);
    for (int& e : eids) in >> e;
    // rebuild the vertex loop: edge i ends where edge i+1 starts
    std::vector<int> loop(count);
    for (int i = 0; i < count; ++i) {
      const auto& cur = file_edges.at(eids[i]);
      const auto& nxt = file_edges.at(eids[(i + 1) % count]);
      int shared = -1;
      for (int a : {cur[0], cur[1]})
        for (int b : {nxt[0], nxt[1]})
          if (a == b) shared = a;
      if (shared < 0) throw MeshError("read_mesh: element edges do not chain");
      loop[(i + 1) % count] = shared;
    }
    loops[t] = loop;
  }
  int ni = 0;
  in >> ni;
  std::set<int> file_interface;
  for (int i = 0; i < ni; ++i) {
    int e;
    in >> e;
    file_interface.insert(e);
  }
  if (!in) throw MeshError("read_mesh: truncated file");

  DomainBox box;
  box.lo = verts[0];
  box.hi = verts[0];
  for (const Vec2& v : verts) {
    box.lo = box.lo.cwiseMin(v);
    box.hi = box.hi.cwiseMax(v);
  }
  FittedMesh mesh = assemble_mesh(std::move(verts), loops, labels, box);
  // compare as vertex pairs so the check is independent of edge numbering
  std::set<std::pair<int, int>> derived, listed;
  for (const auto& ie : mesh.interface_edges)
    derived.insert(std::minmax(mesh.edges[ie.edge].v0, mesh.edges[ie.edge].v1));
  for (int e : file_interface) listed.insert(std::minmax(file_edges.at(e)[0], file_edges.at(e)[1]));
  if (derived != listed)
    throw MeshError("read_mesh: interface list inconsistent with region labels");
  return mesh;
}

void write_mesh_file(const FittedMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("write_mesh_file: cannot open " + path);
  write_mesh(mesh, out);
}

FittedMesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("read_mesh_file: cannot open " + path);
  return read_mesh(in);
}

}  // namespace ddr
