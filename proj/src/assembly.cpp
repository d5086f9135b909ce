#include "ddr/assembly.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ddr {

InterfaceWeights interface_weights(double sigma_int, double sigma_ext, double eta) {
  if (sigma_int <= 0 || sigma_ext <= 0)
    throw std::invalid_argument("interface_weights: diffusion coefficients must be positive");
  InterfaceWeights w;
  w.sigma_int = sigma_int;
  w.sigma_ext = sigma_ext;
  w.lambda_int = sigma_ext / (sigma_int + sigma_ext);
  w.lambda_ext = sigma_int / (sigma_int + sigma_ext);
  w.alpha = 2 * sigma_int * sigma_ext / (sigma_int + sigma_ext);
  w.eta = eta;
  return w;
}

double estimate_trace_constant(const DdrSpace& space) {
  double c2 = 0;
  const auto& mesh = space.mesh();
  for (const auto& ie : mesh.interface_edges) {
    const double he = mesh.edges[ie.edge].length;
    for (int t : {ie.elem_int, ie.elem_ext}) {
      const auto& el = space.elem(t);
      // edge Gram of the element P^k basis
      const int nk = el.basis_k.size();
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nk, nk);
      for (const auto& qp : space.edge(ie.edge).quad) {
        const Eigen::VectorXd v = el.basis_k.eval(qp.x);
        w += qp.w * v * v.transpose();
      }
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(w, el.mass_k);
      c2 = std::max(c2, he * eig.eigenvalues().maxCoeff());
    }
  }
  return std::sqrt(c2);
}

int max_interface_edges_per_element(const DdrSpace& space) {
  const auto& mesh = space.mesh();
  std::vector<int> count(mesh.n_elements(), 0);
  for (const auto& ie : mesh.interface_edges) {
    ++count[ie.elem_int];
    ++count[ie.elem_ext];
  }
  int n = 0;
  for (int c : count) n = std::max(n, c);
  return n;
}

double default_eta(const DdrSpace& space) {
  if (space.mesh().interface_edges.empty()) return 1.0;
  const double ctr = estimate_trace_constant(space);
  const int nb = max_interface_edges_per_element(space);
  return 3.0 * ctr * ctr * nb;
}

InterfaceEdgeOps interface_edge_ops(const DdrSpace& space, int interface_edge_index,
                                    const InterfaceWeights& w) {
  const auto& mesh = space.mesh();
  const auto& ie = mesh.interface_edges[interface_edge_index];
  const auto& gi = space.globals(ie.elem_int);
  const auto& ge = space.globals(ie.elem_ext);
  const int ni = static_cast<int>(gi.size());
  const int ntot = ni + static_cast<int>(ge.size());

  InterfaceEdgeOps ops;
  ops.globals = gi;
  ops.globals.insert(ops.globals.end(), ge.begin(), ge.end());

  const int k = space.k();
  ops.jump = Eigen::MatrixXd::Zero(k + 2, ntot);
  ops.skew_avg = Eigen::MatrixXd::Zero(k + 2, ntot);
  ops.flux_avg_n = Eigen::MatrixXd::Zero(k + 1, ntot);
  const Vec2 n = mesh.edges[ie.edge].normal;  // points from int to ext
  for (int side = 0; side < 2; ++side) {
    const int t = side == 0 ? ie.elem_int : ie.elem_ext;
    const auto& el = space.elem(t);
    const auto& me = mesh.elements[t];
    int pos = -1;
    for (size_t i = 0; i < me.edge_loop.size(); ++i)
      if (me.edge_loop[i] == ie.edge) pos = static_cast<int>(i);
    const int col0 = side == 0 ? 0 : ni;
    const int ncols = side == 0 ? ni : ntot - ni;
    const double sgn_jump = side == 0 ? 1.0 : -1.0;
    const double lam_skew = side == 0 ? w.lambda_ext : w.lambda_int;
    const double lam_flux = side == 0 ? w.lambda_int : w.lambda_ext;
    const double sigma = side == 0 ? w.sigma_int : w.sigma_ext;
    ops.jump.middleCols(col0, ncols) = sgn_jump * el.vte[pos];
    ops.skew_avg.middleCols(col0, ncols) = lam_skew * el.vte[pos];
    const int nk = el.basis_k.size();
    ops.flux_avg_n.middleCols(col0, ncols) =
        lam_flux * sigma *
        (n.x() * el.trace_k[pos] * el.grad.topRows(nk) +
         n.y() * el.trace_k[pos] * el.grad.bottomRows(nk));
  }
  return ops;
}

SpMat assemble_bilinear(const DdrSpace& space, const InterfaceWeights& w) {
  const auto& mesh = space.mesh();
  std::vector<Eigen::Triplet<double>> trips;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const double sigma = mesh.elements[t].region == Region::Int ? w.sigma_int : w.sigma_ext;
    const auto& g = space.globals(t);
    const Eigen::MatrixXd a = sigma * space.elem(t).a_local;
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = 0; j < g.size(); ++j) trips.emplace_back(g[i], g[j], a(i, j));
  }
  for (size_t iedge = 0; iedge < mesh.interface_edges.size(); ++iedge) {
    const auto ops = interface_edge_ops(space, static_cast<int>(iedge), w);
    const auto& ed = space.edge(mesh.interface_edges[iedge].edge);
    const double he = mesh.edges[mesh.interface_edges[iedge].edge].length;
    // rows test the jump, columns carry the flux of the trial function
    const Eigen::MatrixXd consistency =
        -ops.jump.transpose() * ed.cross_k_kp1.transpose() * ops.flux_avg_n;
    const Eigen::MatrixXd penalty =
        (w.eta * w.alpha / he) * ops.jump.transpose() * ed.mass_kp1 * ops.jump;
    for (size_t i = 0; i < ops.globals.size(); ++i)
      for (size_t j = 0; j < ops.globals.size(); ++j)
        trips.emplace_back(ops.globals[i], ops.globals[j], consistency(i, j) + penalty(i, j));
  }
  SpMat a(space.dofs().size, space.dofs().size);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Eigen::VectorXd assemble_rhs(const DdrSpace& space, const InterfaceWeights& w, const RegionFn& f,
                             const PointFn& flux_jump, const PointFn& jump) {
  const auto& mesh = space.mesh();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dofs().size);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto& el = space.elem(t);
    const Region r = mesh.elements[t].region;
    Eigen::VectorXd mom = Eigen::VectorXd::Zero(el.basis_kp1.size());
    for (const auto& qp : el.quad) mom += qp.w * f(qp.x, r) * el.basis_kp1.eval(qp.x);
    const Eigen::VectorXd bt = el.pot.transpose() * mom;
    const auto& g = space.globals(t);
    for (size_t i = 0; i < g.size(); ++i) b(g[i]) += bt(i);
  }
  for (size_t iedge = 0; iedge < mesh.interface_edges.size(); ++iedge) {
    const auto& ie = mesh.interface_edges[iedge];
    const auto ops = interface_edge_ops(space, static_cast<int>(iedge), w);
    const auto& ed = space.edge(ie.edge);
    const double he = mesh.edges[ie.edge].length;
    Eigen::VectorXd mphi = Eigen::VectorXd::Zero(space.k() + 2);
    Eigen::VectorXd mjump = Eigen::VectorXd::Zero(space.k() + 2);
    for (const auto& qp : ed.quad) {
      const Eigen::VectorXd v = ed.basis_kp1.eval(qp.t);
      mphi += qp.w * flux_jump(qp.x) * v;
      mjump += qp.w * jump(qp.x) * v;
    }
    const Eigen::VectorXd be =
        ops.skew_avg.transpose() * mphi +
        (w.eta * w.alpha / he) * ops.jump.transpose() * mjump;
    for (size_t i = 0; i < ops.globals.size(); ++i) b(ops.globals[i]) += be(i);
  }
  return b;
}

LinearSystem apply_dirichlet(const DdrSpace& space, SpMat a, Eigen::VectorXd b, const PointFn& g) {
  const auto& dofs = space.dofs();
  const auto& mesh = space.mesh();
  LinearSystem sys;
  sys.fixed = Eigen::VectorXd::Zero(dofs.size);
  for (int e : mesh.boundary_edges) {
    const int c = dofs.edge_carrier_of[e][0];
    if (dofs.edge_block > 0) {
      const auto& ed = space.edge(e);
      const Eigen::VectorXd coef = l2_project(g, ed.basis_km1, ed.quad);
      for (int j = 0; j < dofs.edge_block; ++j) sys.fixed(dofs.edge_dof(c, j)) = coef(j);
    }
    for (int v : {mesh.edges[e].v0, mesh.edges[e].v1})
      sys.fixed(dofs.vertex_dof(dofs.vertex_carrier_of[v][0])) = g(mesh.vertices[v]);
  }

  const int nf = static_cast<int>(dofs.free_dofs.size());
  const int nc = dofs.size - nf;
  std::vector<int> fixed_index(dofs.size, -1);
  int cidx = 0;
  for (int i = 0; i < dofs.size; ++i)
    if (dofs.on_boundary[i]) fixed_index[i] = cidx++;
  std::vector<Eigen::Triplet<double>> tff, tfc;
  for (int col = 0; col < a.outerSize(); ++col) {
    for (SpMat::InnerIterator it(a, col); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = col;
      if (dofs.free_index[i] < 0) continue;
      if (dofs.free_index[j] >= 0)
        tff.emplace_back(dofs.free_index[i], dofs.free_index[j], it.value());
      else
        tfc.emplace_back(dofs.free_index[i], fixed_index[j], it.value());
    }
  }
  sys.a_ff.resize(nf, nf);
  sys.a_ff.setFromTriplets(tff.begin(), tff.end());
  sys.a_fc.resize(nf, nc);
  sys.a_fc.setFromTriplets(tfc.begin(), tfc.end());
  Eigen::VectorXd xc(nc);
  for (int i = 0; i < dofs.size; ++i)
    if (fixed_index[i] >= 0) xc(fixed_index[i]) = sys.fixed(i);
  sys.b_f.resize(nf);
  for (int i = 0; i < nf; ++i) sys.b_f(i) = b(dofs.free_dofs[i]);
  sys.b_f -= sys.a_fc * xc;
  sys.a = std::move(a);
  sys.b = std::move(b);
  return sys;
}

DiscreteVector solve(const DdrSpace& space, const LinearSystem& sys) {
  const auto& dofs = space.dofs();
  DiscreteVector u = sys.fixed;
  if (sys.a_ff.rows() > 0) {
    Eigen::SparseLU<SpMat> lu;
    lu.compute(sys.a_ff);
    if (lu.info() != Eigen::Success) throw SolveFailure("solve: factorization failed");
    const Eigen::VectorXd uf = lu.solve(sys.b_f);
    const double bnorm = sys.b_f.norm();
    const double res = (sys.a_ff * uf - sys.b_f).norm();
    if (res > 1e-10 * std::max(bnorm, 1e-30))
      throw SolveFailure("solve: relative residual " + std::to_string(res / bnorm));
    for (int i = 0; i < static_cast<int>(dofs.free_dofs.size()); ++i)
      u(dofs.free_dofs[i]) = uf(i);
  }
  return u;
}

void dump_system(const LinearSystem& sys, std::ostream& out) {
  out << sys.a_ff.rows() << " " << sys.a_ff.cols() << " " << sys.a_ff.nonZeros() << "\n";
  for (int col = 0; col < sys.a_ff.outerSize(); ++col)
    for (SpMat::InnerIterator it(sys.a_ff, col); it; ++it)
      out << it.row() + 1 << " " << col + 1 << " " << it.value() << "\n";
  for (int i = 0; i < sys.b_f.size(); ++i) out << sys.b_f(i) << "\n";
}

}  // namespace ddr
