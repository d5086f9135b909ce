#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ddr/local_ops.hpp"
#include "ddr/study.hpp"

#include <cmath>
#include <random>

using namespace ddr;

namespace {

const DomainBox kCenteredBox{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)};

double eval_edge(const EdgeBasis& b, const Eigen::VectorXd& c, double t) {
  return c.dot(b.eval(t));
}

double eval_elem(const ElementBasis& b, const Eigen::VectorXd& c, const Vec2& x) {
  return c.dot(b.eval(x));
}

// bivariate polynomial with dense monomial coefficients
struct Poly2 {
  int degree = 0;
  std::vector<double> coef;  // degree-lex like ElementBasis
  double value(const Vec2& x) const {
    double v = 0;
    int idx = 0;
    for (int d = 0; d <= degree; ++d)
      for (int ax = d; ax >= 0; --ax)
        v += coef[idx++] * std::pow(x.x(), ax) * std::pow(x.y(), d - ax);
    return v;
  }
  Vec2 gradient(const Vec2& x) const {
    Vec2 g = Vec2::Zero();
    int idx = 0;
    for (int d = 0; d <= degree; ++d)
      for (int ax = d; ax >= 0; --ax) {
        const int ay = d - ax;
        if (ax > 0) g.x() += coef[idx] * ax * std::pow(x.x(), ax - 1) * std::pow(x.y(), ay);
        if (ay > 0) g.y() += coef[idx] * ay * std::pow(x.x(), ax) * std::pow(x.y(), ay - 1);
        ++idx;
      }
    return g;
  }
};

Poly2 random_poly(int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(-1, 1);
  Poly2 p;
  p.degree = degree;
  p.coef.resize(poly_dim_2d(degree));
  for (auto& c : p.coef) c = unif(rng);
  return p;
}

std::vector<FittedMesh> consistency_meshes() {
  std::vector<FittedMesh> meshes;
  meshes.push_back(build_level_mesh(InterfaceCurve::square(Vec2::Zero(), 0.25),
                                    MeshFamily::Cartesian, 4, 0, 1));
  meshes.push_back(build_level_mesh(InterfaceCurve::square(Vec2::Zero(), 0.25),
                                    MeshFamily::Perturbed, 4, 0, 5));
  meshes.push_back(build_level_mesh(InterfaceCurve::circle(Vec2::Zero(), 0.25),
                                    MeshFamily::Triangular, 8, 1, 2));
  return meshes;
}

}  // namespace

TEST_CASE("dof map layout and interface duplication") {
  const FittedMesh mesh = build_level_mesh(InterfaceCurve::square(Vec2::Zero(), 0.25),
                                           MeshFamily::Cartesian, 8, 0, 1);
  for (const int k : {0, 1, 2}) {
    const DofMap d = build_dof_map(mesh, k);
    CHECK(d.elem_block == poly_dim_2d(k - 1));
    CHECK(d.edge_block == k);
    const int n_iface = static_cast<int>(mesh.interface_vertices.size());
    CHECK(static_cast<int>(d.vertex_carriers.size()) == mesh.n_vertices() + n_iface);
    const int expected_edges = mesh.n_edges() + static_cast<int>(mesh.interface_edges.size());
    CHECK(static_cast<int>(d.edge_carriers.size()) == expected_edges);
    CHECK(d.size == mesh.n_elements() * d.elem_block + expected_edges * d.edge_block +
                        static_cast<int>(d.vertex_carriers.size()));
    CHECK(d.interface_vertex_pairs.size() == mesh.interface_vertices.size());
    for (const auto& pr : d.interface_vertex_pairs) CHECK(pr[0] != pr[1]);
  }
}

TEST_CASE("interpolation of constants and side selection") {
  const FittedMesh mesh = build_level_mesh(InterfaceCurve::square(Vec2::Zero(), 0.25),
                                           MeshFamily::Cartesian, 8, 0, 1);
  const DdrSpace space(mesh, 0);
  const DiscreteVector ones = space.interpolate([](const Vec2&, Region) { return 1.0; });
  for (int i = 0; i < ones.size(); ++i) CHECK(ones(i) == doctest::Approx(1.0).epsilon(1e-14));

  // continuous solution (ratio 1): duplicated interface dofs agree
  const DiscreteVector v = space.interpolate(
      [](const Vec2& x, Region) { return x.x() * x.x() - x.y() * x.y(); });
  for (const auto& pr : space.dofs().interface_vertex_pairs)
    CHECK(v(pr[0]) == doctest::Approx(v(pr[1])).epsilon(1e-14));

  // discontinuous side selection
  const DiscreteVector w = space.interpolate(
      [](const Vec2&, Region r) { return r == Region::Int ? 2.0 : 3.0; });
  for (const auto& pr : space.dofs().interface_vertex_pairs) {
    CHECK(w(pr[0]) == doctest::Approx(2.0));
    CHECK(w(pr[1]) == doctest::Approx(3.0));
  }
}

TEST_CASE("interpolation moments at k=1") {
  const FittedMesh mesh = build_cartesian_mesh(1, DomainBox{Vec2(0, 0), Vec2(1, 1)});
  const DdrSpace space(mesh, 1);
  const DiscreteVector v = space.interpolate([](const Vec2& x, Region) { return x.x(); });
  const auto& d = space.dofs();
  // element moment: the projection onto constants is the mean 1/2
  const auto& el = space.elem(0);
  Eigen::VectorXd c(1);
  c(0) = v(d.elem_dof(0, 0));
  CHECK(eval_elem(el.basis_km1, c, Vec2(0.3, 0.9)) == doctest::Approx(0.5).epsilon(1e-13));
  // edge moments: mean of x on each edge
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const int car = d.edge_carrier(e, Region::Ext);
    Eigen::VectorXd ce(1);
    ce(0) = v(d.edge_dof(car, 0));
    const Vec2 mid = 0.5 * (mesh.vertices[mesh.edges[e].v0] + mesh.vertices[mesh.edges[e].v1]);
    CHECK(eval_edge(space.edge(e).basis_km1, ce, 0.7) == doctest::Approx(mid.x()).epsilon(1e-13));
  }
}

TEST_CASE("edge potential basics at k=0") {
  const FittedMesh mesh = build_cartesian_mesh(1, DomainBox{Vec2(0, 0), Vec2(1, 1)});
  const DdrSpace space(mesh, 0);
  const auto& el = space.elem(0);
  const DiscreteVector v = space.interpolate([](const Vec2& x, Region) { return x.x(); });
  const Eigen::VectorXd vloc = space.restrict_to(0, v);
  for (size_t i = 0; i < mesh.elements[0].edge_loop.size(); ++i) {
    const int e = mesh.elements[0].edge_loop[i];
    const Eigen::VectorXd c = el.vte[i] * vloc;
    // the edge potential is the affine interpolant of the endpoint values
    for (double t : {-1.0, -0.25, 0.5, 1.0}) {
      const Vec2 a = mesh.vertices[mesh.edges[e].v0];
      const Vec2 b = mesh.vertices[mesh.edges[e].v1];
      const Vec2 x = 0.5 * (1 - t) * a + 0.5 * (1 + t) * b;
      CHECK(eval_edge(space.edge(e).basis_kp1, c, t) == doctest::Approx(x.x()).epsilon(1e-13));
    }
  }
}

TEST_CASE("edge potential reproduces quadratic traces at k=1") {
  const FittedMesh mesh = build_cartesian_mesh(2, kCenteredBox);
  const DdrSpace space(mesh, 1);
  Poly2 q;
  q.degree = 2;
  q.coef = {0.3, -1.2, 0.7, 0.5, 1.1, -0.4};
  const DiscreteVector v = space.interpolate([&](const Vec2& x, Region) { return q.value(x); });
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Eigen::VectorXd vloc = space.restrict_to(t, v);
    const auto& el = space.elem(t);
    for (size_t i = 0; i < mesh.elements[t].edge_loop.size(); ++i) {
      const int e = mesh.elements[t].edge_loop[i];
      const Eigen::VectorXd c = el.vte[i] * vloc;
      const Vec2 a = mesh.vertices[mesh.edges[e].v0];
      const Vec2 b = mesh.vertices[mesh.edges[e].v1];
      for (double tt : {-0.8, 0.0, 0.6}) {
        const Vec2 x = 0.5 * (1 - tt) * a + 0.5 * (1 + tt) * b;
        CHECK(eval_edge(space.edge(e).basis_kp1, c, tt) ==
              doctest::Approx(q.value(x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("boundary edges carry zero potential on the homogeneous subspace") {
  const FittedMesh mesh = build_level_mesh(InterfaceCurve::square(Vec2::Zero(), 0.25),
                                           MeshFamily::Cartesian, 4, 0, 1);
  const DdrSpace space(mesh, 1);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1, 1);
  DiscreteVector v(space.dofs().size);
  for (int i = 0; i < v.size(); ++i) v(i) = space.dofs().on_boundary[i] ? 0.0 : unif(rng);
  for (int e : mesh.boundary_edges) {
    const int t = space.mesh().edge_elems[e][0];
    const Eigen::VectorXd vloc = space.restrict_to(t, v);
    const auto& me = mesh.elements[t];
    for (size_t i = 0; i < me.edge_loop.size(); ++i) {
      if (me.edge_loop[i] != e) continue;
      const Eigen::VectorXd c = space.elem(t).vte[i] * vloc;
      CHECK(c.norm() <= 1e-13);
    }
  }
}

TEST_CASE("gradient of the interpolate of x is (1,0) at k=0") {
  const FittedMesh mesh = build_cartesian_mesh(1, DomainBox{Vec2(0, 0), Vec2(1, 1)});
  const DdrSpace space(mesh, 0);
  const DiscreteVector v = space.interpolate([](const Vec2& x, Region) { return x.x(); });
  const Eigen::VectorXd g = space.elem(0).grad * space.restrict_to(0, v);
  const auto& bk = space.elem(0).basis_k;
  CHECK(eval_elem(bk, g.head(1), Vec2(0.2, 0.8)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(eval_elem(bk, g.tail(1), Vec2(0.2, 0.8)) == doctest::Approx(0.0).epsilon(1e-13));
  // constants have zero gradient
  const DiscreteVector one = space.interpolate([](const Vec2&, Region) { return 42.0; });
  CHECK((space.elem(0).grad * space.restrict_to(0, one)).norm() <= 1e-12);
}

TEST_CASE("potential of the interpolate of x is x at k=0") {
  const FittedMesh mesh = build_cartesian_mesh(1, DomainBox{Vec2(0, 0), Vec2(1, 1)});
  const DdrSpace space(mesh, 0);
  const DiscreteVector v = space.interpolate([](const Vec2& x, Region) { return x.x(); });
  const Eigen::VectorXd p = space.elem(0).pot * space.restrict_to(0, v);
  for (const Vec2 x : {Vec2(0.1, 0.2), Vec2(0.9, 0.4), Vec2(0.5, 0.5)})
    CHECK(eval_elem(space.elem(0).basis_kp1, p, x) == doctest::Approx(x.x()).epsilon(1e-13));
  // constants reproduced
  const DiscreteVector one = space.interpolate([](const Vec2&, Region) { return 1.0; });
  const Eigen::VectorXd p1 = space.elem(0).pot * space.restrict_to(0, one);
  CHECK(eval_elem(space.elem(0).basis_kp1, p1, Vec2(0.77, 0.13)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("defining relations hold for random dofs") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (const int k : {0, 1}) {
    const FittedMesh mesh = build_level_mesh(InterfaceCurve::circle(Vec2::Zero(), 0.25),
                                             MeshFamily::Triangular, 4, 0, 3);
    const DdrSpace space(mesh, k);
    DiscreteVector v(space.dofs().size);
    for (int i = 0; i < v.size(); ++i) v(i) = unif(rng);
    for (int t = 0; t < mesh.n_elements(); ++t) {
      const auto& el = space.elem(t);
      const auto& me = mesh.elements[t];
      const Eigen::VectorXd vloc = space.restrict_to(t, v);
      const int nk = el.basis_k.size();
      const Eigen::VectorXd gx = el.grad.topRows(nk) * vloc;
      const Eigen::VectorXd gy = el.grad.bottomRows(nk) * vloc;
      const Eigen::VectorXd p = el.pot * vloc;
      // gradient relation, tau ranging over the P^k(T)^2 basis
      Eigen::VectorXd lhs_x = Eigen::VectorXd::Zero(nk), lhs_y = Eigen::VectorXd::Zero(nk);
      Eigen::VectorXd rhs_x = Eigen::VectorXd::Zero(nk), rhs_y = Eigen::VectorXd::Zero(nk);
      for (const auto& qp : el.quad) {
        const Eigen::VectorXd bk = el.basis_k.eval(qp.x);
        lhs_x += qp.w * bk.dot(gx) * bk;
        lhs_y += qp.w * bk.dot(gy) * bk;
        if (el.basis_km1.size() > 0) {
          const double vtv = el.basis_km1.eval(qp.x).dot(vloc.head(el.basis_km1.size()));
          const Eigen::MatrixX2d gk = el.basis_k.grad(qp.x);
          rhs_x -= qp.w * vtv * gk.col(0);
          rhs_y -= qp.w * vtv * gk.col(1);
        }
      }
      for (size_t i = 0; i < me.edge_loop.size(); ++i) {
        const int e = me.edge_loop[i];
        const auto& ed = space.edge(e);
        const Eigen::VectorXd vte_c = el.vte[i] * vloc;
        const Vec2 n = mesh.edges[e].normal;
        for (const auto& qp : ed.quad) {
          const double vte_v = vte_c.dot(ed.basis_kp1.eval(qp.t));
          const Eigen::VectorXd bk = el.basis_k.eval(qp.x);
          rhs_x += me.orientation[i] * qp.w * vte_v * n.x() * bk;
          rhs_y += me.orientation[i] * qp.w * vte_v * n.y() * bk;
        }
      }
      const double scale = std::max(1.0, vloc.norm());
      CHECK((lhs_x - rhs_x).norm() <= 1e-11 * scale);
      CHECK((lhs_y - rhs_y).norm() <= 1e-11 * scale);

      // integrated-by-parts identity: for tau in P^k(T)^2,
      // int grad p . tau = int G . tau + sum_E w int_E (p - v_TE) tau.n
      Eigen::VectorXd ibp_x = Eigen::VectorXd::Zero(nk), ibp_y = Eigen::VectorXd::Zero(nk);
      for (const auto& qp : el.quad) {
        const Eigen::MatrixX2d gkp1 = el.basis_kp1.grad(qp.x);
        const Vec2 gp = gkp1.transpose() * p;
        const Eigen::VectorXd bk = el.basis_k.eval(qp.x);
        ibp_x += qp.w * (gp.x() - bk.dot(gx)) * bk;
        ibp_y += qp.w * (gp.y() - bk.dot(gy)) * bk;
      }
      for (size_t i = 0; i < me.edge_loop.size(); ++i) {
        const int e = me.edge_loop[i];
        const auto& ed = space.edge(e);
        const Eigen::VectorXd diff_c = el.stab[i] * vloc;  // trace(p) - v_TE
        const Vec2 n = mesh.edges[e].normal;
        for (const auto& qp : ed.quad) {
          const double dv = diff_c.dot(ed.basis_kp1.eval(qp.t));
          const Eigen::VectorXd bk = el.basis_k.eval(qp.x);
          ibp_x -= me.orientation[i] * qp.w * dv * n.x() * bk;
          ibp_y -= me.orientation[i] * qp.w * dv * n.y() * bk;
        }
      }
      CHECK(ibp_x.norm() <= 1e-11 * scale);
      CHECK(ibp_y.norm() <= 1e-11 * scale);
    }
  }
}

TEST_CASE("polynomial consistency of the reconstructions") {
  std::mt19937 rng(23);
  for (const int k : {0, 1}) {
    for (const auto& mesh : consistency_meshes()) {
      const DdrSpace space(mesh, k);
      for (int trial = 0; trial < 34; ++trial) {
        const Poly2 q = random_poly(k + 1, rng);
        const DiscreteVector v =
            space.interpolate([&](const Vec2& x, Region) { return q.value(x); });
        double scale = 0;
        for (const double c : q.coef) scale = std::max(scale, std::abs(c));
        for (int t = 0; t < mesh.n_elements(); ++t) {
          const auto& el = space.elem(t);
          const Eigen::VectorXd vloc = space.restrict_to(t, v);
          const int nk = el.basis_k.size();
          const Eigen::VectorXd g = el.grad * vloc;
          const Eigen::VectorXd p = el.pot * vloc;
          for (const auto& qp : el.quad) {
            const Vec2 gq = q.gradient(qp.x);
            CHECK(eval_elem(el.basis_k, g.head(nk), qp.x) ==
                  doctest::Approx(gq.x()).epsilon(1e-10).scale(scale));
            CHECK(eval_elem(el.basis_k, g.tail(nk), qp.x) ==
                  doctest::Approx(gq.y()).epsilon(1e-10).scale(scale));
            CHECK(eval_elem(el.basis_kp1, p, qp.x) ==
                  doctest::Approx(q.value(qp.x)).epsilon(1e-10).scale(scale));
          }
          // edge potentials match traces, stabilization differences vanish
          for (size_t i = 0; i < mesh.elements[t].edge_loop.size(); ++i) {
            const int e = mesh.elements[t].edge_loop[i];
            const auto& ed = space.edge(e);
            const Eigen::VectorXd c = el.vte[i] * vloc;
            for (const auto& qp : ed.quad)
              CHECK(eval_edge(ed.basis_kp1, c, qp.t) ==
                    doctest::Approx(q.value(qp.x)).epsilon(1e-10).scale(scale));
            const Eigen::VectorXd d = el.stab[i] * vloc;
            CHECK(d.norm() <= 1e-10 * std::max(1.0, scale));
          }
        }
      }
    }
  }
}

TEST_CASE("gradient bound for the potential reconstruction") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unif(-1, 1);
  double worst = 0;
  for (const int k : {0, 1}) {
    for (const auto& mesh : consistency_meshes()) {
      const DdrSpace space(mesh, k);
      DiscreteVector v(space.dofs().size);
      for (int trial = 0; trial < 56; ++trial) {
        for (int i = 0; i < v.size(); ++i) v(i) = unif(rng);
        for (int t = 0; t < mesh.n_elements(); ++t) {
          const auto& el = space.elem(t);
          const auto& me = mesh.elements[t];
          const Eigen::VectorXd vloc = space.restrict_to(t, v);
          const Eigen::VectorXd p = el.pot * vloc;
          const double grad_p = std::sqrt(p.dot(el.stiff_kp1 * p));
          const int nk = el.basis_k.size();
          const Eigen::VectorXd g = el.grad * vloc;
          double rhs2 = g.head(nk).dot(el.mass_k * g.head(nk)) +
                        g.tail(nk).dot(el.mass_k * g.tail(nk));
          for (size_t i = 0; i < me.edge_loop.size(); ++i) {
            const Eigen::VectorXd d = el.stab[i] * vloc;
            rhs2 += d.dot(space.edge(me.edge_loop[i]).mass_kp1 * d) / me.diameter;
          }
          if (rhs2 < 1e-24) continue;
          worst = std::max(worst, grad_p / std::sqrt(rhs2));
        }
      }
    }
  }
  MESSAGE("measured gradient-bound constant: ", worst);
  CHECK(worst <= 10.0);
}

TEST_CASE("edge potential is element independent off the interface") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (const int k : {0, 1}) {
    const FittedMesh mesh = build_level_mesh(InterfaceCurve::circle(Vec2::Zero(), 0.25),
                                             MeshFamily::Triangular, 6, 0, 9);
    const DdrSpace space(mesh, k);
    DiscreteVector v(space.dofs().size);
    for (int i = 0; i < v.size(); ++i) v(i) = unif(rng);
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const auto& adj = mesh.edge_elems[e];
      if (adj[1] < 0 || mesh.edge_on_interface[e]) continue;
      Eigen::VectorXd c[2];
      for (int s = 0; s < 2; ++s) {
        const auto& me = mesh.elements[adj[s]];
        for (size_t i = 0; i < me.edge_loop.size(); ++i)
          if (me.edge_loop[i] == e)
            c[s] = space.elem(adj[s]).vte[i] * space.restrict_to(adj[s], v);
      }
      CHECK((c[0] - c[1]).norm() <= 1e-12 * std::max(1.0, c[0].norm()));
    }
  }
}
