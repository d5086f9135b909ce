#pragma once

#include "ddr/assembly.hpp"
#include "ddr/scenario.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace ddr {

struct Instability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interface vertices chained into the closed loop carried by the interface
// edges; values attached to these vertices form the interface variable space
// (one real per vertex, piecewise affine along the chain).
struct InterfaceChain {
  std::vector<int> vertex_ids;                   // mesh vertex ids in loop order
  std::vector<int> chain_index_of_vertex;        // mesh vertex id -> loop position (-1 off chain)
  std::vector<std::array<int, 2>> edge_endpoints;  // per interface edge: loop positions of (v0,v1)
  int size() const { return static_cast<int>(vertex_ids.size()); }
};

InterfaceChain build_interface_chain(const FittedMesh& mesh);

// Mass matrix of the piecewise-affine hat functions on the chain; symmetric
// positive definite with row sums equal to the adjacent half edge lengths.
SpMat interface_mass_matrix(const FittedMesh& mesh, const InterfaceChain& chain);

// Moments of the weighted interface flux average against the chain hats:
// r[V] = sum_E int_E ({sigma G u}.n_E) phi_V.
Eigen::VectorXd jump_rhs(const DdrSpace& space, const InterfaceWeights& w,
                         const InterfaceChain& chain, const DiscreteVector& u);

// One explicit step of the capacitive jump evolution. The flux moments drive
// the jump toward equilibrium: (C/tau) M (J_next - J) = -r.
Eigen::VectorXd advance_jump(const SpMat& mass, const Eigen::SimplicialLLT<SpMat>& mass_factor,
                             double capacitance, double tau, const Eigen::VectorXd& jump,
                             const Eigen::VectorXd& r);

struct LdmStep {
  double t = 0;
  double err_energy = 0;  // ||u^n_h - I_h u(t_n)||_en
  double err_jump = 0;    // ||J^n - J(t_n)||_{0,Gamma,h}
  double flux_int = 0;    // ||G_h u^n||_{L2(Omega_int)}
};

struct LdmResult {
  double h = 0;
  int ndof = 0;
  int steps = 0;
  double tau = 0;
  std::vector<LdmStep> series;
  double temporal_err_energy = 0;  // sqrt(tau sum_n err_energy(u^n)^2)
  double temporal_err_jump = 0;    // sqrt(tau sum_n err_jump(J^n)^2), n >= 1
};

// Explicit-Euler loop: u^n solves the stationary problem with jump data J^n
// and exact Dirichlet trace at t_n, then J^{n+1} advances from the flux of
// u^n. The stationary matrix is factorized once.
LdmResult run_ldm(const DdrSpace& space, const LdmSetup& setup, const InterfaceWeights& w,
                  int steps);

}  // namespace ddr
