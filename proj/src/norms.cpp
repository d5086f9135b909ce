#include "ddr/norms.hpp"

#include <cmath>

namespace ddr {

namespace {

double energy_sq_bulk(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v) {
  const auto& mesh = space.mesh();
  double s = 0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const double sigma = mesh.elements[t].region == Region::Int ? w.sigma_int : w.sigma_ext;
    const Eigen::VectorXd vt = space.restrict_to(t, v);
    s += sigma * vt.dot(space.elem(t).a_local * vt);
  }
  return s;
}

double jump_sq(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v) {
  const auto& mesh = space.mesh();
  double s = 0;
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const auto& ie = mesh.interface_edges[i];
    const auto ops = interface_edge_ops(space, static_cast<int>(i), w);
    Eigen::VectorXd vloc(ops.globals.size());
    for (size_t j = 0; j < ops.globals.size(); ++j) vloc(j) = v(ops.globals[j]);
    const Eigen::VectorXd jmp = ops.jump * vloc;
    s += w.alpha / mesh.edges[ie.edge].length *
         jmp.dot(space.edge(ie.edge).mass_kp1 * jmp);
  }
  return s;
}

}  // namespace

double energy_norm(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v) {
  return std::sqrt(energy_sq_bulk(space, w, v) + jump_sq(space, w, v));
}

double jump_seminorm(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v) {
  return std::sqrt(jump_sq(space, w, v));
}

double l2_component_norm(const DdrSpace& space, const DiscreteVector& v) {
  const auto& dofs = space.dofs();
  if (dofs.elem_block == 0 && dofs.edge_block == 0) return 0.0;
  const auto& mesh = space.mesh();
  double s = 0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto& el = space.elem(t);
    const auto& me = mesh.elements[t];
    if (dofs.elem_block > 0) {
      Eigen::VectorXd c(dofs.elem_block);
      for (int j = 0; j < dofs.elem_block; ++j) c(j) = v(dofs.elem_dof(t, j));
      s += c.dot(el.mass_km1 * c);
    }
    if (dofs.edge_block > 0) {
      for (int e : me.edge_loop) {
        const int car = dofs.edge_carrier(e, me.region);
        Eigen::VectorXd c(dofs.edge_block);
        for (int j = 0; j < dofs.edge_block; ++j) c(j) = v(dofs.edge_dof(car, j));
        s += me.diameter * c.dot(space.edge(e).mass_km1 * c);
      }
    }
  }
  return std::sqrt(s);
}

double reconstruction_l2_error(const DdrSpace& space, const DiscreteVector& v, const RegionFn& u,
                               double* norm_of_exact) {
  const auto& mesh = space.mesh();
  double err = 0, nrm = 0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto& el = space.elem(t);
    const Region r = mesh.elements[t].region;
    const Eigen::VectorXd p = el.pot * space.restrict_to(t, v);
    for (const auto& qp : el.quad) {
      const double ue = u(qp.x, r);
      const double uh = p.dot(el.basis_kp1.eval(qp.x));
      err += qp.w * (uh - ue) * (uh - ue);
      nrm += qp.w * ue * ue;
    }
  }
  if (norm_of_exact) *norm_of_exact = std::sqrt(nrm);
  return std::sqrt(err);
}

ErrorReport compute_errors(const DdrSpace& space, const InterfaceWeights& w, const RegionFn& u,
                           const DiscreteVector& u_h) {
  ErrorReport rep;
  rep.h = space.mesh().max_diameter();
  rep.ndof = space.dofs().size;
  const DiscreteVector iu = space.interpolate(u);
  const DiscreteVector e = u_h - iu;
  rep.err_energy = energy_norm(space, w, e);
  rep.norm_energy = energy_norm(space, w, u_h);
  rep.err_energy_rel = rep.norm_energy > 0 ? rep.err_energy / rep.norm_energy : rep.err_energy;
  rep.err_l2h = l2_component_norm(space, e);
  rep.norm_l2h = l2_component_norm(space, u_h);
  rep.err_l2h_rel = rep.norm_l2h > 0 ? rep.err_l2h / rep.norm_l2h : rep.err_l2h;
  rep.err_reco = reconstruction_l2_error(space, u_h, u, &rep.norm_u_l2);
  rep.err_reco_rel = rep.norm_u_l2 > 0 ? rep.err_reco / rep.norm_u_l2 : rep.err_reco;
  rep.err_jump = jump_seminorm(space, w, e);
  return rep;
}

std::vector<double> eoc(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> orders;
  for (size_t i = 0; i + 1 < h.size(); ++i)
    orders.push_back(std::log(err[i] / err[i + 1]) / std::log(h[i] / h[i + 1]));
  return orders;
}

double eoc_fit(const std::vector<double>& h, const std::vector<double>& err) {
  const size_t n = h.size();
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ddr
