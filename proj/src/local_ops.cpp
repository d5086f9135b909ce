#include "ddr/local_ops.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace ddr {

namespace {

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

void check_condition(const Eigen::MatrixXd& m, const char* what) {
  if (condition_number(m) > 1e12) {
    throw IllConditioned(std::string("local solve exceeds condition 1e12: ") + what);
  }
}

}  // namespace

DdrSpace::DdrSpace(const FittedMesh& mesh, int k) : mesh_(&mesh), k_(k) {
  dofs_ = build_dof_map(mesh, k);
  const bool ortho = k >= 1;
  const int nk = poly_dim_2d(k);
  const int nkp1 = poly_dim_2d(k + 1);

  edges_.resize(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    auto& ed = edges_[e];
    const Vec2& a = mesh.vertices[mesh.edges[e].v0];
    const Vec2& b = mesh.vertices[mesh.edges[e].v1];
    ed.quad = edge_quadrature(a, b, edge_quad_degree());
    ed.basis_km1 = EdgeBasis(k - 1);
    ed.basis_k = EdgeBasis(k);
    ed.basis_kp1 = EdgeBasis(k + 1);
    if (ortho) {
      ed.basis_km1.orthonormalize(ed.quad);
      ed.basis_k.orthonormalize(ed.quad);
      ed.basis_kp1.orthonormalize(ed.quad);
    }
    ed.mass_km1 = gram_matrix(ed.basis_km1, ed.quad);
    ed.mass_kp1 = gram_matrix(ed.basis_kp1, ed.quad);
    ed.cross_k_kp1 = Eigen::MatrixXd::Zero(k + 1, k + 2);
    for (const auto& qp : ed.quad)
      ed.cross_k_kp1 += qp.w * ed.basis_k.eval(qp.t) * ed.basis_kp1.eval(qp.t).transpose();
  }

  elems_.resize(mesh.n_elements());
  globals_.resize(mesh.n_elements());
  for (int t = 0; t < mesh.n_elements(); ++t) {
    auto& el = elems_[t];
    const auto& me = mesh.elements[t];
    const int ne = static_cast<int>(me.edge_loop.size());
    const int nv = ne;
    globals_[t] = element_globals(mesh, dofs_, t);

    el.quad = element_quadrature(mesh.element_polygon(t), me.center, elem_quad_degree());
    el.basis_km1 = ElementBasis(k - 1, me.center, me.diameter);
    el.basis_k = ElementBasis(k, me.center, me.diameter);
    el.basis_kp1 = ElementBasis(k + 1, me.center, me.diameter);
    if (ortho) {
      el.basis_km1.orthonormalize(el.quad);
      el.basis_k.orthonormalize(el.quad);
      el.basis_kp1.orthonormalize(el.quad);
    }
    el.mass_km1 = gram_matrix(el.basis_km1, el.quad);
    el.mass_k = gram_matrix(el.basis_k, el.quad);
    el.mass_kp1 = gram_matrix(el.basis_kp1, el.quad);
    el.stiff_kp1 = Eigen::MatrixXd::Zero(nkp1, nkp1);
    for (const auto& qp : el.quad) {
      const Eigen::MatrixX2d g = el.basis_kp1.grad(qp.x);
      el.stiff_kp1 += qp.w * g * g.transpose();
    }

    el.ndof = dofs_.elem_block + ne * dofs_.edge_block + nv;
    const auto edge_col0 = [&](int i) { return dofs_.elem_block + i * dofs_.edge_block; };
    const auto vertex_col = [&](int i) { return dofs_.elem_block + ne * dofs_.edge_block + i; };

    // edge potentials: endpoint values plus moments against P^{k-1}(E)
    el.vte.resize(ne);
    el.trace_k.resize(ne);
    el.trace_kp1.resize(ne);
    for (int i = 0; i < ne; ++i) {
      const int e = me.edge_loop[i];
      const auto& ed = edges_[e];
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 2, k + 2);
      sys.row(0) = ed.basis_kp1.eval(-1.0).transpose();
      sys.row(1) = ed.basis_kp1.eval(1.0).transpose();
      Eigen::MatrixXd cross_km1_kp1 = Eigen::MatrixXd::Zero(k, k + 2);
      for (const auto& qp : ed.quad)
        cross_km1_kp1 += qp.w * ed.basis_km1.eval(qp.t) * ed.basis_kp1.eval(qp.t).transpose();
      sys.bottomRows(k) = cross_km1_kp1;
      check_condition(sys, "edge potential");

      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k + 2, el.ndof);
      // local index of the stored endpoints within the vertex loop
      const int i_next = (i + 1) % ne;
      const int lv0 = me.orientation[i] > 0 ? i : i_next;
      const int lv1 = me.orientation[i] > 0 ? i_next : i;
      rhs(0, vertex_col(lv0)) = 1.0;
      rhs(1, vertex_col(lv1)) = 1.0;
      rhs.block(2, edge_col0(i), k, dofs_.edge_block) = ed.mass_km1;
      el.vte[i] = sys.partialPivLu().solve(rhs);

      // traces of element polynomials in the edge bases
      Eigen::MatrixXd wk = Eigen::MatrixXd::Zero(k + 1, nk);
      Eigen::MatrixXd wkp1 = Eigen::MatrixXd::Zero(k + 2, nkp1);
      Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (const auto& qp : ed.quad) {
        const Eigen::VectorXd ek = ed.basis_k.eval(qp.t);
        wk += qp.w * ek * el.basis_k.eval(qp.x).transpose();
        wkp1 += qp.w * ed.basis_kp1.eval(qp.t) * el.basis_kp1.eval(qp.x).transpose();
        mk += qp.w * ek * ek.transpose();
      }
      el.trace_k[i] = mk.llt().solve(wk);
      el.trace_kp1[i] = ed.mass_kp1.llt().solve(wkp1);
    }

    // gradient: int_T G . tau = -int_T v_T div tau + sum_E w_TE int_E v_TE tau.n
    Eigen::MatrixXd bx = Eigen::MatrixXd::Zero(nk, el.ndof);
    Eigen::MatrixXd by = Eigen::MatrixXd::Zero(nk, el.ndof);
    if (dofs_.elem_block > 0) {
      Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(nk, dofs_.elem_block);
      Eigen::MatrixXd dy = Eigen::MatrixXd::Zero(nk, dofs_.elem_block);
      for (const auto& qp : el.quad) {
        const Eigen::MatrixX2d g = el.basis_k.grad(qp.x);
        const Eigen::VectorXd v = el.basis_km1.eval(qp.x);
        dx += qp.w * g.col(0) * v.transpose();
        dy += qp.w * g.col(1) * v.transpose();
      }
      bx.leftCols(dofs_.elem_block) = -dx;
      by.leftCols(dofs_.elem_block) = -dy;
    }
    for (int i = 0; i < ne; ++i) {
      const int e = me.edge_loop[i];
      const auto& ed = edges_[e];
      Eigen::MatrixXd x_cross = Eigen::MatrixXd::Zero(nk, k + 2);
      for (const auto& qp : ed.quad)
        x_cross += qp.w * el.basis_k.eval(qp.x) * ed.basis_kp1.eval(qp.t).transpose();
      const Vec2 n = mesh.edges[e].normal;
      const double w = me.orientation[i];
      bx += w * n.x() * x_cross * el.vte[i];
      by += w * n.y() * x_cross * el.vte[i];
    }
    Eigen::LLT<Eigen::MatrixXd> mass_k_llt(el.mass_k);
    el.grad = Eigen::MatrixXd(2 * nk, el.ndof);
    el.grad.topRows(nk) = mass_k_llt.solve(bx);
    el.grad.bottomRows(nk) = mass_k_llt.solve(by);

    // potential: int_T p div tau = -int_T G . tau + sum_E w_TE int_E v_TE tau.n
    // for tau = (x - x_T) q, q in P^{k+1}(T)
    Eigen::MatrixXd b_div = Eigen::MatrixXd::Zero(nkp1, nkp1);
    Eigen::MatrixXd cx = Eigen::MatrixXd::Zero(nk, nkp1);
    Eigen::MatrixXd cy = Eigen::MatrixXd::Zero(nk, nkp1);
    for (const auto& qp : el.quad) {
      const Eigen::VectorXd q = el.basis_kp1.eval(qp.x);
      const Eigen::MatrixX2d gq = el.basis_kp1.grad(qp.x);
      const Vec2 r = qp.x - me.center;
      const Eigen::VectorXd divtau = 2.0 * q + gq * r;
      b_div += qp.w * divtau * q.transpose();
      const Eigen::VectorXd vk = el.basis_k.eval(qp.x);
      cx += qp.w * r.x() * vk * q.transpose();
      cy += qp.w * r.y() * vk * q.transpose();
    }
    check_condition(b_div, "potential");
    Eigen::MatrixXd rhs_pot = -(cx.transpose() * el.grad.topRows(nk) +
                                cy.transpose() * el.grad.bottomRows(nk));
    for (int i = 0; i < ne; ++i) {
      const int e = me.edge_loop[i];
      const auto& ed = edges_[e];
      const Vec2 n = mesh.edges[e].normal;
      Eigen::MatrixXd y = Eigen::MatrixXd::Zero(k + 2, nkp1);
      for (const auto& qp : ed.quad) {
        const double rn = (qp.x - me.center).dot(n);
        y += qp.w * rn * ed.basis_kp1.eval(qp.t) * el.basis_kp1.eval(qp.x).transpose();
      }
      rhs_pot += me.orientation[i] * y.transpose() * el.vte[i];
    }
    el.pot = b_div.partialPivLu().solve(rhs_pot);

    // stabilization differences and the sigma-free local bilinear block
    el.stab.resize(ne);
    el.a_local = el.grad.topRows(nk).transpose() * el.mass_k * el.grad.topRows(nk) +
                 el.grad.bottomRows(nk).transpose() * el.mass_k * el.grad.bottomRows(nk);
    for (int i = 0; i < ne; ++i) {
      const int e = me.edge_loop[i];
      el.stab[i] = el.trace_kp1[i] * el.pot - el.vte[i];
      el.a_local += (1.0 / me.diameter) * el.stab[i].transpose() * edges_[e].mass_kp1 * el.stab[i];
    }
  }
}

DiscreteVector DdrSpace::interpolate(const RegionFn& v) const {
  DiscreteVector out = DiscreteVector::Zero(dofs_.size);
  const auto& mesh = *mesh_;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    if (dofs_.elem_block == 0) break;
    const Region r = mesh.elements[t].region;
    const Eigen::VectorXd c = l2_project([&](const Vec2& x) { return v(x, r); },
                                         elems_[t].basis_km1, elems_[t].quad);
    for (int j = 0; j < dofs_.elem_block; ++j) out(dofs_.elem_dof(t, j)) = c(j);
  }
  for (size_t ci = 0; ci < dofs_.edge_carriers.size(); ++ci) {
    if (dofs_.edge_block == 0) break;
    const auto& car = dofs_.edge_carriers[ci];
    const auto& ed = edges_[car.entity];
    const Eigen::VectorXd c = l2_project([&](const Vec2& x) { return v(x, car.side); },
                                         ed.basis_km1, ed.quad);
    for (int j = 0; j < dofs_.edge_block; ++j)
      out(dofs_.edge_dof(static_cast<int>(ci), j)) = c(j);
  }
  for (size_t ci = 0; ci < dofs_.vertex_carriers.size(); ++ci) {
    const auto& car = dofs_.vertex_carriers[ci];
    out(dofs_.vertex_dof(static_cast<int>(ci))) = v(mesh.vertices[car.entity], car.side);
  }
  return out;
}

Eigen::VectorXd DdrSpace::restrict_to(int t, const DiscreteVector& v) const {
  const auto& g = globals_[t];
  Eigen::VectorXd out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out(i) = v(g[i]);
  return out;
}

}  // namespace ddr
