#include "ddr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace ddr {

double PolygonalChain::length() const {
  double l = 0;
  for (int i = 0; i < size(); ++i) l += (points[(i + 1) % size()] - points[i]).norm();
  return l;
}

double FittedMesh::total_area() const {
  double a = 0;
  for (const auto& t : elements) a += t.area;
  return a;
}

double FittedMesh::max_diameter() const {
  double h = 0;
  for (const auto& t : elements) h = std::max(h, t.diameter);
  return h;
}

std::vector<Vec2> FittedMesh::element_polygon(int t) const {
  const auto& loop = elements[t].vertex_loop;
  std::vector<Vec2> poly(loop.size());
  for (size_t i = 0; i < loop.size(); ++i) poly[i] = vertices[loop[i]];
  return poly;
}

namespace {

std::uint64_t edge_key(int a, int b) {
  const auto [lo, hi] = std::minmax(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint64_t>(hi);
}

void refresh_element_geometry(FittedMesh& mesh, int t) {
  auto& el = mesh.elements[t];
  const std::vector<Vec2> poly = mesh.element_polygon(t);
  el.area = polygon_area(poly);
  if (el.area <= 0) throw DegenerateElement("element with nonpositive area");
  el.diameter = polygon_diameter(poly);
  el.center = interior_point(poly);
}

void refresh_edge_geometry(FittedMesh& mesh, int e) {
  auto& ed = mesh.edges[e];
  const Vec2 d = mesh.vertices[ed.v1] - mesh.vertices[ed.v0];
  ed.length = d.norm();
  if (ed.length == 0) throw DegenerateElement("zero-length edge");
  ed.normal = Vec2(d.y(), -d.x()) / ed.length;
}

int find_edge_position(const MeshElement& el, int e) {
  for (size_t i = 0; i < el.edge_loop.size(); ++i)
    if (el.edge_loop[i] == e) return static_cast<int>(i);
  return -1;
}

}  // namespace

FittedMesh assemble_mesh(std::vector<Vec2> vertices, const std::vector<std::vector<int>>& loops,
                         const std::vector<Region>& labels, const DomainBox& box) {
  FittedMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.box = box;
  std::unordered_map<std::uint64_t, int> edge_of;
  mesh.elements.resize(loops.size());
  for (size_t t = 0; t < loops.size(); ++t) {
    const auto& loop = loops[t];
    if (loop.size() < 3) throw DegenerateElement("element with fewer than 3 vertices");
    auto& el = mesh.elements[t];
    el.vertex_loop = loop;
    el.region = labels.empty() ? Region::Ext : labels[t];
    const int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      const int a = loop[i], b = loop[(i + 1) % n];
      if (a == b) throw DegenerateElement("repeated consecutive vertex in element loop");
      const std::uint64_t key = edge_key(a, b);
      auto it = edge_of.find(key);
      int e;
      if (it == edge_of.end()) {
        e = static_cast<int>(mesh.edges.size());
        edge_of.emplace(key, e);
        MeshEdge ed;
        ed.v0 = a;
        ed.v1 = b;
        mesh.edges.push_back(ed);
        mesh.edge_elems.push_back({-1, -1});
      } else {
        e = it->second;
      }
      el.edge_loop.push_back(e);
      el.orientation.push_back(mesh.edges[e].v0 == a ? 1 : -1);
      auto& adj = mesh.edge_elems[e];
      if (adj[0] < 0)
        adj[0] = static_cast<int>(t);
      else if (adj[1] < 0)
        adj[1] = static_cast<int>(t);
      else
        throw TopologyError("edge shared by more than two elements");
    }
    const std::vector<Vec2> poly = mesh.element_polygon(static_cast<int>(t));
    if (!polygon_is_simple(poly)) throw DegenerateElement("element polygon is not simple");
    refresh_element_geometry(mesh, static_cast<int>(t));
  }
  for (int e = 0; e < mesh.n_edges(); ++e) refresh_edge_geometry(mesh, e);

  mesh.edge_on_interface.assign(mesh.n_edges(), 0);
  mesh.vertex_on_interface.assign(mesh.n_vertices(), 0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto& adj = mesh.edge_elems[e];
    if (adj[1] < 0) {
      mesh.boundary_edges.push_back(e);
      continue;
    }
    const Region r0 = mesh.elements[adj[0]].region;
    const Region r1 = mesh.elements[adj[1]].region;
    if (r0 == r1) continue;
    const int t_int = r0 == Region::Int ? adj[0] : adj[1];
    const int t_ext = r0 == Region::Int ? adj[1] : adj[0];
    // orient the stored edge so its normal points from the internal to the
    // external region: the internal element must traverse it v0 -> v1
    const int pos_int = find_edge_position(mesh.elements[t_int], e);
    if (mesh.elements[t_int].orientation[pos_int] < 0) {
      std::swap(mesh.edges[e].v0, mesh.edges[e].v1);
      refresh_edge_geometry(mesh, e);
      for (int side = 0; side < 2; ++side) {
        auto& el = mesh.elements[adj[side]];
        const int p = find_edge_position(el, e);
        el.orientation[p] = -el.orientation[p];
      }
    }
    mesh.interface_edges.push_back({e, t_int, t_ext});
    mesh.edge_on_interface[e] = 1;
    mesh.vertex_on_interface[mesh.edges[e].v0] = 1;
    mesh.vertex_on_interface[mesh.edges[e].v1] = 1;
  }
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (mesh.vertex_on_interface[v]) mesh.interface_vertices.push_back(v);
  for (int e : mesh.boundary_edges) {
    if (mesh.vertex_on_interface[mesh.edges[e].v0] || mesh.vertex_on_interface[mesh.edges[e].v1])
      throw TopologyError("interface touches the domain boundary");
  }
  return mesh;
}

FittedMesh build_cartesian_mesh(int n, const DomainBox& box) {
  if (n < 1) throw MeshError("build_cartesian_mesh: n must be >= 1");
  std::vector<Vec2> verts;
  verts.reserve((n + 1) * (n + 1));
  const Vec2 d = box.hi - box.lo;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(box.lo.x() + d.x() * i / n, box.lo.y() + d.y() * j / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> loops;
  loops.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return assemble_mesh(std::move(verts), loops, {}, box);
}

FittedMesh build_triangular_mesh_n(int n, const DomainBox& box) {
  if (n < 1) throw MeshError("build_triangular_mesh: n must be >= 1");
  std::vector<Vec2> verts;
  const Vec2 d = box.hi - box.lo;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(box.lo.x() + d.x() * i / n, box.lo.y() + d.y() * j / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> loops;
  loops.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      loops.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return assemble_mesh(std::move(verts), loops, {}, box);
}

FittedMesh build_triangular_mesh(double h_target, const DomainBox& box) {
  if (h_target <= 0) throw MeshError("build_triangular_mesh: h_target must be positive");
  const double side = std::max(box.hi.x() - box.lo.x(), box.hi.y() - box.lo.y());
  const int n = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0) * side / h_target)));
  return build_triangular_mesh_n(n, box);
}

namespace {

// deterministic uniform double in [0,1)
double next_uniform(std::uint64_t& state) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

}  // namespace

FittedMesh perturb_vertices(const FittedMesh& mesh, double amplitude_factor, std::uint64_t seed) {
  if (amplitude_factor < 0 || amplitude_factor >= 0.5)
    throw MeshError("perturb_vertices: amplitude_factor must lie in [0, 1/2)");
  FittedMesh out = mesh;
  if (amplitude_factor == 0) return out;

  std::vector<char> frozen(mesh.n_vertices(), 0);
  for (int e : mesh.boundary_edges) {
    frozen[mesh.edges[e].v0] = 1;
    frozen[mesh.edges[e].v1] = 1;
  }
  for (int v : mesh.interface_vertices) frozen[v] = 1;

  std::vector<double> radius(mesh.n_vertices(), std::numeric_limits<double>::max());
  std::vector<std::vector<int>> incident(mesh.n_vertices());
  for (int t = 0; t < mesh.n_elements(); ++t)
    for (int v : mesh.elements[t].vertex_loop) incident[v].push_back(t);
  for (const auto& ed : mesh.edges) {
    radius[ed.v0] = std::min(radius[ed.v0], ed.length);
    radius[ed.v1] = std::min(radius[ed.v1], ed.length);
  }

  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545F4914F6CDD1Dull;
  for (int warm = 0; warm < 8; ++warm) next_uniform(state);

  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (frozen[v]) continue;
    const double r = amplitude_factor * radius[v];
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      double dx, dy;
      do {
        dx = 2 * next_uniform(state) - 1;
        dy = 2 * next_uniform(state) - 1;
      } while (dx * dx + dy * dy > 1);
      const Vec2 cand = mesh.vertices[v] + r * Vec2(dx, dy);
      out.vertices[v] = cand;
      bool ok = true;
      for (int t : incident[v]) {
        const std::vector<Vec2> poly = out.element_polygon(t);
        if (polygon_area(poly) <= 0 || !polygon_is_simple(poly)) {
          ok = false;
          break;
        }
      }
      if (ok)
        placed = true;
      else
        out.vertices[v] = mesh.vertices[v];
    }
    if (!placed) throw DegenerateElement("perturb_vertices: no valid displacement found");
  }
  for (int e = 0; e < out.n_edges(); ++e) refresh_edge_geometry(out, e);
  for (int t = 0; t < out.n_elements(); ++t) refresh_element_geometry(out, t);
  return out;
}

// ---------------------------------------------------------------------------
// interface curves

InterfaceCurve InterfaceCurve::circle(const Vec2& center, double radius) {
  InterfaceCurve c;
  c.total_length_ = 2 * M_PI * radius;
  c.point_ = [center, radius](double u) {
    const double th = 2 * M_PI * u;
    return Vec2(center.x() + radius * std::cos(th), center.y() + radius * std::sin(th));
  };
  return c;
}

InterfaceCurve InterfaceCurve::square(const Vec2& center, double half_side) {
  InterfaceCurve c;
  const double side = 2 * half_side;
  c.total_length_ = 4 * side;
  c.corners_s_ = {0, side, 2 * side, 3 * side};
  const Vec2 c0 = center + Vec2(-half_side, -half_side);
  c.point_ = [c0, side](double u) {
    double s = u * 4 * side;
    if (s < side) return Vec2(c0.x() + s, c0.y());
    s -= side;
    if (s < side) return Vec2(c0.x() + side, c0.y() + s);
    s -= side;
    if (s < side) return Vec2(c0.x() + side - s, c0.y() + side);
    s -= side;
    return Vec2(c0.x(), c0.y() + side - s);
  };
  return c;
}

InterfaceCurve InterfaceCurve::deformed_circle(const Vec2& center, double radius, double amplitude,
                                               int lobes) {
  InterfaceCurve c;
  c.point_ = [center, radius, amplitude, lobes](double u) {
    const double th = 2 * M_PI * u;
    const double rho = radius * (1.0 + amplitude * std::cos(lobes * th));
    return Vec2(center.x() + rho * std::cos(th), center.y() + rho * std::sin(th));
  };
  c.build_table(1 << 17);
  return c;
}

void InterfaceCurve::build_table(int samples) {
  table_u_.resize(samples + 1);
  table_s_.resize(samples + 1);
  double s = 0;
  Vec2 prev = point_(0);
  table_u_[0] = 0;
  table_s_[0] = 0;
  for (int i = 1; i <= samples; ++i) {
    const double u = static_cast<double>(i) / samples;
    const Vec2 p = point_(u);
    s += (p - prev).norm();
    prev = p;
    table_u_[i] = u;
    table_s_[i] = s;
  }
  total_length_ = s;
}

Vec2 InterfaceCurve::at_arclength(double s) const {
  s = std::fmod(s, total_length_);
  if (s < 0) s += total_length_;
  if (table_s_.empty()) {
    // analytic parameterizations are arclength-proportional
    return point_(s / total_length_);
  }
  const auto it = std::upper_bound(table_s_.begin(), table_s_.end(), s);
  const size_t i = std::min(table_s_.size() - 1, static_cast<size_t>(it - table_s_.begin()));
  const double s0 = table_s_[i - 1], s1 = table_s_[i];
  const double w = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
  return point_(table_u_[i - 1] + w * (table_u_[i] - table_u_[i - 1]));
}

PolygonalChain discretize_interface(const InterfaceCurve& curve, int refinement_ratio,
                                    double h_background) {
  if (refinement_ratio < 0) throw MeshError("discretize_interface: refinement ratio must be >= 0");
  if (h_background <= 0) throw MeshError("discretize_interface: background size must be positive");
  const double total = curve.length();
  PolygonalChain chain;
  const auto& corners = curve.corner_arclengths();
  const int mult = 1 << refinement_ratio;
  if (corners.empty()) {
    const int n0 = std::max(4, static_cast<int>(std::llround(total / h_background)));
    const int n = n0 * mult;
    chain.points.reserve(n);
    for (int j = 0; j < n; ++j) chain.points.push_back(curve.at_arclength(total * j / n));
  } else {
    const int nc = static_cast<int>(corners.size());
    for (int c = 0; c < nc; ++c) {
      const double s0 = corners[c];
      const double s1 = c + 1 < nc ? corners[c + 1] : corners[0] + total;
      const double len = s1 - s0;
      const int n0 = std::max(1, static_cast<int>(std::llround(len / h_background)));
      const int n = n0 * mult;
      for (int j = 0; j < n; ++j) chain.points.push_back(curve.at_arclength(s0 + len * j / n));
    }
  }
  if (!chain.is_simple()) throw TopologyError("discretize_interface: chain is not simple");
  return chain;
}

// ---------------------------------------------------------------------------
// cutting

namespace {

struct CutWorkspace {
  std::vector<Vec2> verts;
  std::vector<std::vector<std::pair<double, int>>> edge_events;  // per bg edge: (param, vertex)
  std::vector<double> edge_tol;
};

int get_or_create_on_edge(CutWorkspace& ws, const FittedMesh& bg, int e, double s, const Vec2& pos) {
  const auto& ed = bg.edges[e];
  const double tol = ws.edge_tol[e];
  if (s * ed.length <= tol) return ed.v0;
  if ((1.0 - s) * ed.length <= tol) return ed.v1;
  for (const auto& [sp, vp] : ws.edge_events[e])
    if (std::abs(sp - s) * ed.length <= tol) return vp;
  const int vid = static_cast<int>(ws.verts.size());
  ws.verts.push_back(pos);
  ws.edge_events[e].emplace_back(s, vid);
  return vid;
}

}  // namespace

FittedMesh cut_mesh(const FittedMesh& background, const PolygonalChain& chain_in) {
  if (chain_in.size() < 3) throw TopologyError("cut_mesh: chain needs at least 3 vertices");
  if (!chain_in.is_simple()) throw TopologyError("cut_mesh: chain is not simple");

  const FittedMesh& bg = background;
  const int nv0 = bg.n_vertices();

  // tolerances: 1e-10 h_T, taken over the adjacent elements
  std::vector<double> vert_tol(nv0, 0.0);
  for (int t = 0; t < bg.n_elements(); ++t)
    for (int v : bg.elements[t].vertex_loop)
      vert_tol[v] = std::max(vert_tol[v], 1e-10 * bg.elements[t].diameter);
  CutWorkspace ws;
  ws.verts = bg.vertices;
  ws.edge_events.resize(bg.n_edges());
  ws.edge_tol.resize(bg.n_edges());
  for (int e = 0; e < bg.n_edges(); ++e)
    ws.edge_tol[e] = std::max(vert_tol[bg.edges[e].v0], vert_tol[bg.edges[e].v1]);
  const double tol_max = *std::max_element(ws.edge_tol.begin(), ws.edge_tol.end());

  // the chain must stay clear of the domain boundary
  for (const Vec2& p : chain_in.points) {
    if (p.x() <= bg.box.lo.x() + 10 * tol_max || p.x() >= bg.box.hi.x() - 10 * tol_max ||
        p.y() <= bg.box.lo.y() + 10 * tol_max || p.y() >= bg.box.hi.y() - 10 * tol_max)
      throw TopologyError("cut_mesh: chain touches the domain boundary");
  }

  // --- regularize the chain against mesh vertices and edges ---------------
  const int nc = chain_in.size();
  std::vector<Vec2> cpts = chain_in.points;
  std::vector<int> cvid(nc, -1);
  for (int i = 0; i < nc; ++i) {
    for (int v = 0; v < nv0; ++v) {
      if ((cpts[i] - bg.vertices[v]).norm() <= vert_tol[v]) {
        cpts[i] = bg.vertices[v];
        cvid[i] = v;
        break;
      }
    }
    if (cvid[i] >= 0) continue;
    for (int e = 0; e < bg.n_edges(); ++e) {
      const Vec2& a = bg.vertices[bg.edges[e].v0];
      const Vec2& b = bg.vertices[bg.edges[e].v1];
      if (point_segment_distance(cpts[i], a, b) <= ws.edge_tol[e]) {
        const double s = project_on_segment(cpts[i], a, b);
        const int vid = get_or_create_on_edge(ws, bg, e, s, a + s * (b - a));
        cpts[i] = ws.verts[vid];
        cvid[i] = vid;
        break;
      }
    }
  }

  // --- intersections of chain segments with mesh edges --------------------
  std::vector<std::vector<std::pair<double, int>>> chain_events(nc);
  for (int e = 0; e < bg.n_edges(); ++e) {
    const Vec2& a = ws.verts[bg.edges[e].v0];
    const Vec2& b = ws.verts[bg.edges[e].v1];
    const double len = bg.edges[e].length;
    const double eps_s = ws.edge_tol[e] / len;
    for (int i = 0; i < nc; ++i) {
      const Vec2& c = cpts[i];
      const Vec2& d = cpts[(i + 1) % nc];
      const double clen = (d - c).norm();
      if (std::min(a.x(), b.x()) > std::max(c.x(), d.x()) + tol_max ||
          std::max(a.x(), b.x()) < std::min(c.x(), d.x()) - tol_max ||
          std::min(a.y(), b.y()) > std::max(c.y(), d.y()) + tol_max ||
          std::max(a.y(), b.y()) < std::min(c.y(), d.y()) - tol_max)
        continue;
      const double eps_t = ws.edge_tol[e] / clen;
      const auto hit = segment_intersection(a, b, c, d, std::max(eps_s, eps_t));
      if (!hit) continue;
      const auto [s, t] = *hit;
      if (s < -eps_s || s > 1 + eps_s || t < -eps_t || t > 1 + eps_t) continue;
      // crossings at chain vertices already carried by the regularized chain
      if (t * clen <= ws.edge_tol[e] && cvid[i] >= 0) continue;
      if ((1 - t) * clen <= ws.edge_tol[e] && cvid[(i + 1) % nc] >= 0) continue;
      const double sc = std::clamp(s, 0.0, 1.0);
      const int vid = get_or_create_on_edge(ws, bg, e, sc, a + sc * (b - a));
      bool dup = false;
      for (const auto& [tp, vp] : chain_events[i]) dup = dup || vp == vid;
      if (!dup && vid != cvid[i] && vid != cvid[(i + 1) % nc])
        chain_events[i].emplace_back(std::clamp(t, 0.0, 1.0), vid);
    }
  }

  // --- refined chain as a closed list of mesh vertices ---------------------
  std::vector<int> rid;
  for (int i = 0; i < nc; ++i) {
    if (cvid[i] < 0) {
      cvid[i] = static_cast<int>(ws.verts.size());
      ws.verts.push_back(cpts[i]);
    }
    rid.push_back(cvid[i]);
    std::sort(chain_events[i].begin(), chain_events[i].end());
    for (const auto& [t, vid] : chain_events[i]) rid.push_back(vid);
  }
  {
    std::vector<int> dedup;
    for (int v : rid)
      if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
    if (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    rid = std::move(dedup);
  }
  const int nr = static_cast<int>(rid.size());
  if (nr < 3) throw TopologyError("cut_mesh: refined chain degenerated");
  std::vector<Vec2> rpos(nr);
  for (int i = 0; i < nr; ++i) rpos[i] = ws.verts[rid[i]];

  // --- split every crossed element -----------------------------------------
  std::vector<std::vector<int>> final_loops;
  std::vector<int> source_elem;
  for (int t = 0; t < bg.n_elements(); ++t) {
    const auto& el = bg.elements[t];
    const double tol_t = 1e-10 * el.diameter;
    // loop with edge events inserted
    std::vector<int> loop;
    const int ne = static_cast<int>(el.edge_loop.size());
    for (int i = 0; i < ne; ++i) {
      loop.push_back(el.vertex_loop[i]);
      auto evs = ws.edge_events[el.edge_loop[i]];
      std::sort(evs.begin(), evs.end());
      if (el.orientation[i] < 0) std::reverse(evs.begin(), evs.end());
      for (const auto& [s, vid] : evs) loop.push_back(vid);
    }
    std::vector<Vec2> poly(loop.size());
    for (size_t i = 0; i < loop.size(); ++i) poly[i] = ws.verts[loop[i]];

    // chain subsegments strictly inside this element
    std::set<int> loop_ids(loop.begin(), loop.end());
    std::vector<std::pair<int, int>> inner;
    double xlo = poly[0].x(), xhi = xlo, ylo = poly[0].y(), yhi = ylo;
    for (const Vec2& p : poly) {
      xlo = std::min(xlo, p.x());
      xhi = std::max(xhi, p.x());
      ylo = std::min(ylo, p.y());
      yhi = std::max(yhi, p.y());
    }
    for (int j = 0; j < nr; ++j) {
      const int u = rid[j], v = rid[(j + 1) % nr];
      const Vec2 m = 0.5 * (ws.verts[u] + ws.verts[v]);
      if (m.x() < xlo - tol_t || m.x() > xhi + tol_t || m.y() < ylo - tol_t || m.y() > yhi + tol_t)
        continue;
      if (!strictly_inside(m, poly, tol_t)) continue;
      for (int w : {u, v}) {
        if (loop_ids.count(w)) continue;
        if (!strictly_inside(ws.verts[w], poly, 0.0))
          throw TopologyError("cut_mesh: inconsistent chain/element intersection");
      }
      inner.emplace_back(u, v);
    }
    if (inner.empty()) {
      final_loops.push_back(loop);
      source_elem.push_back(t);
      continue;
    }

    // stitch the interior segments into polylines between boundary nodes
    std::map<int, std::vector<int>> nbr;
    for (auto [u, v] : inner) {
      nbr[u].push_back(v);
      nbr[v].push_back(u);
    }
    std::set<std::pair<int, int>> used;
    auto mark = [&used](int u, int v) { used.insert(std::minmax(u, v)); };
    auto is_used = [&used](int u, int v) { return used.count(std::minmax(u, v)) > 0; };
    std::vector<std::vector<int>> polylines;
    for (const auto& [node, neighbors] : nbr) {
      if (!loop_ids.count(node)) continue;
      for (int w : neighbors) {
        if (is_used(node, w)) continue;
        std::vector<int> line = {node, w};
        mark(node, w);
        while (!loop_ids.count(line.back())) {
          const auto& cand = nbr[line.back()];
          int nxt = -1;
          for (int x : cand)
            if (!is_used(line.back(), x)) nxt = x;
          if (nxt < 0) throw TopologyError("cut_mesh: open chain inside an element");
          mark(line.back(), nxt);
          line.push_back(nxt);
        }
        polylines.push_back(std::move(line));
      }
    }
    for (auto [u, v] : inner)
      if (!is_used(u, v)) throw TopologyError("cut_mesh: interface loop inside a single element");

    // iteratively split the containing piece
    std::vector<std::vector<int>> pieces = {loop};
    for (const auto& line : polylines) {
      const int a = line.front(), b = line.back();
      if (a == b) throw DegenerateCut("cut_mesh: chain touches an element boundary tangentially");
      int target = -1;
      for (size_t p = 0; p < pieces.size(); ++p) {
        const auto& pl = pieces[p];
        if (std::find(pl.begin(), pl.end(), a) == pl.end()) continue;
        if (std::find(pl.begin(), pl.end(), b) == pl.end()) continue;
        std::vector<Vec2> ppoly(pl.size());
        for (size_t i = 0; i < pl.size(); ++i) ppoly[i] = ws.verts[pl[i]];
        const Vec2 probe = line.size() > 2 ? ws.verts[line[1]]
                                           : 0.5 * (ws.verts[a] + ws.verts[b]);
        if (!strictly_inside(probe, ppoly, 0.0)) continue;
        target = static_cast<int>(p);
        break;
      }
      if (target < 0) throw TopologyError("cut_mesh: no piece contains a chain polyline");
      const std::vector<int> pl = pieces[target];
      const int n = static_cast<int>(pl.size());
      const int ia = static_cast<int>(std::find(pl.begin(), pl.end(), a) - pl.begin());
      const int ib = static_cast<int>(std::find(pl.begin(), pl.end(), b) - pl.begin());
      std::vector<int> piece1, piece2;
      for (int i = ia; i != ib; i = (i + 1) % n) piece1.push_back(pl[i]);
      piece1.push_back(pl[ib]);
      for (size_t i = line.size() - 2; i >= 1; --i) piece1.push_back(line[i]);
      for (int i = ib; i != ia; i = (i + 1) % n) piece2.push_back(pl[i]);
      piece2.push_back(pl[ia]);
      for (size_t i = 1; i + 1 < line.size(); ++i) piece2.push_back(line[i]);
      pieces[target] = std::move(piece1);
      pieces.push_back(std::move(piece2));
    }
    for (auto& p : pieces) {
      final_loops.push_back(std::move(p));
      source_elem.push_back(t);
    }
  }

  // --- labels and reindexing ------------------------------------------------
  std::vector<Region> labels(final_loops.size());
  for (size_t p = 0; p < final_loops.size(); ++p) {
    std::vector<Vec2> poly(final_loops[p].size());
    for (size_t i = 0; i < final_loops[p].size(); ++i) poly[i] = ws.verts[final_loops[p][i]];
    const Vec2 probe = interior_point(poly);
    labels[p] = winding_number(probe, rpos) != 0 ? Region::Int : Region::Ext;
  }
  std::vector<int> remap(ws.verts.size(), -1);
  std::vector<Vec2> used_verts;
  for (auto& lp : final_loops)
    for (int& v : lp) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(used_verts.size());
        used_verts.push_back(ws.verts[v]);
      }
      v = remap[v];
    }

  FittedMesh out = assemble_mesh(std::move(used_verts), final_loops, labels, bg.box);
  for (int p = 0; p < out.n_elements(); ++p) {
    const double hsrc = bg.elements[source_elem[p]].diameter;
    const double thresh = 1e-8 * hsrc * hsrc;
    if (out.elements[p].area < thresh) out.cut_defects.push_back({p, out.elements[p].area, thresh});
  }
  // every interface edge must lie on the chain
  for (const auto& ie : out.interface_edges) {
    const Vec2 m = 0.5 * (out.vertices[out.edges[ie.edge].v0] + out.vertices[out.edges[ie.edge].v1]);
    double dmin = std::numeric_limits<double>::max();
    for (int i = 0; i < nr; ++i)
      dmin = std::min(dmin, point_segment_distance(m, rpos[i], rpos[(i + 1) % nr]));
    if (dmin > 1e-6 * bg.max_diameter())
      throw TopologyError("cut_mesh: interface edge far from the chain");
  }
  return out;
}

}  // namespace ddr
