#include "ddr/ldm.hpp"

#include "ddr/norms.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <map>

namespace ddr {

InterfaceChain build_interface_chain(const FittedMesh& mesh) {
  InterfaceChain chain;
  if (mesh.interface_edges.empty()) return chain;
  std::map<int, std::vector<int>> nbr;  // vertex -> neighbors along interface edges
  for (const auto& ie : mesh.interface_edges) {
    const auto& e = mesh.edges[ie.edge];
    nbr[e.v0].push_back(e.v1);
    nbr[e.v1].push_back(e.v0);
  }
  for (const auto& [v, ns] : nbr)
    if (ns.size() != 2)
      throw TopologyError("build_interface_chain: interface is not a single closed loop");
  const int start = nbr.begin()->first;
  chain.vertex_ids.push_back(start);
  int prev = start, cur = nbr[start][0];
  while (cur != start) {
    chain.vertex_ids.push_back(cur);
    const auto& ns = nbr[cur];
    const int nxt = ns[0] == prev ? ns[1] : ns[0];
    prev = cur;
    cur = nxt;
  }
  if (chain.size() != static_cast<int>(mesh.interface_edges.size()))
    throw TopologyError("build_interface_chain: interface is not a single closed loop");
  chain.chain_index_of_vertex.assign(mesh.n_vertices(), -1);
  for (int i = 0; i < chain.size(); ++i) chain.chain_index_of_vertex[chain.vertex_ids[i]] = i;
  chain.edge_endpoints.resize(mesh.interface_edges.size());
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const auto& e = mesh.edges[mesh.interface_edges[i].edge];
    chain.edge_endpoints[i] = {chain.chain_index_of_vertex[e.v0],
                               chain.chain_index_of_vertex[e.v1]};
  }
  return chain;
}

SpMat interface_mass_matrix(const FittedMesh& mesh, const InterfaceChain& chain) {
  std::vector<Eigen::Triplet<double>> trips;
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const double len = mesh.edges[mesh.interface_edges[i].edge].length;
    const auto [a, b] = chain.edge_endpoints[i];
    trips.emplace_back(a, a, len / 3);
    trips.emplace_back(b, b, len / 3);
    trips.emplace_back(a, b, len / 6);
    trips.emplace_back(b, a, len / 6);
  }
  SpMat m(chain.size(), chain.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

namespace {

// flux moments against the two chain hats of one interface edge, as a matrix
// acting on the stacked local dofs: rows (hat at v0, hat at v1)
Eigen::MatrixXd edge_flux_moments(const DdrSpace& space, const InterfaceEdgeOps& ops, int edge) {
  const auto& ed = space.edge(edge);
  const int nk = space.k() + 1;
  Eigen::MatrixXd hats = Eigen::MatrixXd::Zero(2, nk);
  for (const auto& qp : ed.quad) {
    const Eigen::VectorXd v = ed.basis_k.eval(qp.t);
    hats.row(0) += qp.w * 0.5 * (1.0 - qp.t) * v.transpose();
    hats.row(1) += qp.w * 0.5 * (1.0 + qp.t) * v.transpose();
  }
  return hats * ops.flux_avg_n;
}

}  // namespace

Eigen::VectorXd jump_rhs(const DdrSpace& space, const InterfaceWeights& w,
                         const InterfaceChain& chain, const DiscreteVector& u) {
  const auto& mesh = space.mesh();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(chain.size());
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const auto ops = interface_edge_ops(space, static_cast<int>(i), w);
    Eigen::VectorXd uloc(ops.globals.size());
    for (size_t j = 0; j < ops.globals.size(); ++j) uloc(j) = u(ops.globals[j]);
    const Eigen::Vector2d m = edge_flux_moments(space, ops, mesh.interface_edges[i].edge) * uloc;
    const auto [a, b] = chain.edge_endpoints[i];
    r(a) += m(0);
    r(b) += m(1);
  }
  return r;
}

Eigen::VectorXd advance_jump(const SpMat& mass, const Eigen::SimplicialLLT<SpMat>& mass_factor,
                             double capacitance, double tau, const Eigen::VectorXd& jump,
                             const Eigen::VectorXd& r) {
  const Eigen::VectorXd dj = mass_factor.solve(r);
  const double res = (mass * dj - r).norm();
  if (res > 1e-10 * std::max(1.0, r.norm()))
    throw SolveFailure("advance_jump: mass solve residual too large");
  return jump - (tau / capacitance) * dj;
}

LdmResult run_ldm(const DdrSpace& space, const LdmSetup& setup, const InterfaceWeights& w,
                  int steps) {
  if (steps < 0) throw std::invalid_argument("run_ldm: negative step count");
  const auto& mesh = space.mesh();
  const auto& dofs = space.dofs();
  LdmResult res;
  res.h = mesh.max_diameter();
  res.ndof = dofs.size;
  res.steps = steps;
  res.tau = steps > 0 ? setup.t_final / steps : 0.0;
  const double tau = res.tau;

  const InterfaceChain chain = build_interface_chain(mesh);
  const SpMat mass = interface_mass_matrix(mesh, chain);
  Eigen::SimplicialLLT<SpMat> mass_llt(mass);
  if (mass_llt.info() != Eigen::Success)
    throw SolveFailure("run_ldm: interface mass factorization failed");

  // stationary operator, factorized once (sigma, mesh, eta fixed in time)
  const SpMat a = assemble_bilinear(space, w);
  LinearSystem sys = apply_dirichlet(space, a, Eigen::VectorXd::Zero(dofs.size),
                                     [](const Vec2&) { return 0.0; });
  Eigen::SparseLU<SpMat> lu;
  lu.compute(sys.a_ff);
  if (lu.info() != Eigen::Success) throw SolveFailure("run_ldm: factorization failed");

  // jump-data contribution to the right-hand side, linear in the chain values
  std::vector<Eigen::Triplet<double>> bj_trips;
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const auto& ie = mesh.interface_edges[i];
    const auto ops = interface_edge_ops(space, static_cast<int>(i), w);
    const auto& ed = space.edge(ie.edge);
    const double he = mesh.edges[ie.edge].length;
    Eigen::MatrixXd hat_mom = Eigen::MatrixXd::Zero(space.k() + 2, 2);
    for (const auto& qp : ed.quad) {
      const Eigen::VectorXd v = ed.basis_kp1.eval(qp.t);
      hat_mom.col(0) += qp.w * 0.5 * (1.0 - qp.t) * v;
      hat_mom.col(1) += qp.w * 0.5 * (1.0 + qp.t) * v;
    }
    const Eigen::MatrixXd be = (w.eta * w.alpha / he) * ops.jump.transpose() * hat_mom;
    const auto [ca, cb] = chain.edge_endpoints[i];
    for (size_t row = 0; row < ops.globals.size(); ++row) {
      bj_trips.emplace_back(ops.globals[row], ca, be(row, 0));
      bj_trips.emplace_back(ops.globals[row], cb, be(row, 1));
    }
  }
  SpMat b_of_jump(dofs.size, chain.size());
  b_of_jump.setFromTriplets(bj_trips.begin(), bj_trips.end());

  // flux-moment operator r = R u
  std::vector<Eigen::Triplet<double>> r_trips;
  for (size_t i = 0; i < mesh.interface_edges.size(); ++i) {
    const auto ops = interface_edge_ops(space, static_cast<int>(i), w);
    const Eigen::MatrixXd m = edge_flux_moments(space, ops, mesh.interface_edges[i].edge);
    const auto [ca, cb] = chain.edge_endpoints[i];
    for (size_t col = 0; col < ops.globals.size(); ++col) {
      r_trips.emplace_back(ca, ops.globals[col], m(0, col));
      r_trips.emplace_back(cb, ops.globals[col], m(1, col));
    }
  }
  SpMat flux_op(chain.size(), dofs.size);
  flux_op.setFromTriplets(r_trips.begin(), r_trips.end());

  const int nf = static_cast<int>(dofs.free_dofs.size());
  std::vector<int> fixed_index(dofs.size, -1);
  {
    int c = 0;
    for (int i = 0; i < dofs.size; ++i)
      if (dofs.on_boundary[i]) fixed_index[i] = c++;
  }

  const double equil_amp = 2.0 * std::abs(setup.field) * setup.radius;
  Eigen::VectorXd jump = Eigen::VectorXd::Zero(chain.size());
  double acc_energy = 0, acc_jump = 0;
  for (int n = 0; n <= steps; ++n) {
    const double t = n * tau;
    // exact jump sampled at the chain vertices
    Eigen::VectorXd jump_exact(chain.size());
    for (int i = 0; i < chain.size(); ++i)
      jump_exact(i) = setup.jump_exact(mesh.vertices[chain.vertex_ids[i]], t);
    const Eigen::VectorXd jerr = jump - jump_exact;
    LdmStep step;
    step.t = t;
    step.err_jump = std::sqrt(jerr.dot(mass * jerr));
    if (n >= 1) acc_jump += tau * step.err_jump * step.err_jump;
    if (n == steps) {
      res.series.push_back(step);
      break;
    }

    // stationary solve with the current jump data
    const RegionFn u_t = [&](const Vec2& x, Region r) { return setup.u_exact(x, r, t); };
    Eigen::VectorXd fixed = Eigen::VectorXd::Zero(dofs.size);
    for (int e : mesh.boundary_edges) {
      const int c = dofs.edge_carrier_of[e][0];
      if (dofs.edge_block > 0) {
        const auto& ed = space.edge(e);
        const Eigen::VectorXd coef = l2_project(
            [&](const Vec2& x) { return u_t(x, Region::Ext); }, ed.basis_km1, ed.quad);
        for (int j = 0; j < dofs.edge_block; ++j) fixed(dofs.edge_dof(c, j)) = coef(j);
      }
      for (int v : {mesh.edges[e].v0, mesh.edges[e].v1})
        fixed(dofs.vertex_dof(dofs.vertex_carrier_of[v][0])) =
            u_t(mesh.vertices[v], Region::Ext);
    }
    Eigen::VectorXd xc(dofs.size - nf);
    for (int i = 0; i < dofs.size; ++i)
      if (fixed_index[i] >= 0) xc(fixed_index[i]) = fixed(i);
    const Eigen::VectorXd b_full = b_of_jump * jump;
    Eigen::VectorXd b_f(nf);
    for (int i = 0; i < nf; ++i) b_f(i) = b_full(dofs.free_dofs[i]);
    b_f -= sys.a_fc * xc;
    const Eigen::VectorXd uf = lu.solve(b_f);
    DiscreteVector u = fixed;
    for (int i = 0; i < nf; ++i) u(dofs.free_dofs[i]) = uf(i);

    const DiscreteVector iu = space.interpolate(u_t);
    step.err_energy = energy_norm(space, w, u - iu);
    acc_energy += tau * step.err_energy * step.err_energy;
    double flux2 = 0;
    for (int ti = 0; ti < mesh.n_elements(); ++ti) {
      if (mesh.elements[ti].region != Region::Int) continue;
      const auto& el = space.elem(ti);
      const int nk = el.basis_k.size();
      const Eigen::VectorXd g = el.grad * space.restrict_to(ti, u);
      flux2 += g.head(nk).dot(el.mass_k * g.head(nk)) + g.tail(nk).dot(el.mass_k * g.tail(nk));
    }
    step.flux_int = std::sqrt(flux2);
    res.series.push_back(step);

    const Eigen::VectorXd r = flux_op * u;
    jump = advance_jump(mass, mass_llt, setup.capacitance, tau, jump, r);
    if (jump.lpNorm<Eigen::Infinity>() > 1e3 * equil_amp)
      throw Instability("run_ldm: explicit step diverged, reduce the time step");
  }
  res.temporal_err_energy = std::sqrt(acc_energy);
  res.temporal_err_jump = std::sqrt(acc_jump);
  return res;
}

}  // namespace ddr
