#pragma once

#include "ddr/local_ops.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <iosfwd>
#include <string>

namespace ddr {

struct SolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SpMat = Eigen::SparseMatrix<double>;

// Diffusion-weighted interface quantities: lambda_int + lambda_ext = 1 and
// 2 lambda_int sigma_int = 2 lambda_ext sigma_ext = alpha.
struct InterfaceWeights {
  double sigma_int = 1, sigma_ext = 1;
  double lambda_int = 0.5, lambda_ext = 0.5;
  double alpha = 1;
  double eta = 1;
};

InterfaceWeights interface_weights(double sigma_int, double sigma_ext, double eta);

// Largest constant of the discrete trace inequality
// ||phi||_E <= C h_E^{-1/2} ||phi||_T over phi in P^k(T), maximized over the
// interface edges and their two adjacent elements.
double estimate_trace_constant(const DdrSpace& space);

// Max number of interface edges on the boundary of a single element.
int max_interface_edges_per_element(const DdrSpace& space);

// Penalty default 3 C_tr^2 N_boundary (stability margin with epsilon = 1/2);
// 1 when the mesh carries no interface.
double default_eta(const DdrSpace& space);

// Jump, skewed average, and weighted flux-normal maps of one interface edge,
// acting on the stacked local dofs [T_int | T_ext].
struct InterfaceEdgeOps {
  std::vector<int> globals;   // stacked dof ids
  Eigen::MatrixXd jump;       // (k+2) x n, edge-potential jump
  Eigen::MatrixXd skew_avg;   // (k+2) x n, lambda_ext int-side + lambda_int ext-side
  Eigen::MatrixXd flux_avg_n; // (k+1) x n, {sigma G}.n_E in the edge P^k basis
};

InterfaceEdgeOps interface_edge_ops(const DdrSpace& space, int interface_edge_index,
                                    const InterfaceWeights& w);

SpMat assemble_bilinear(const DdrSpace& space, const InterfaceWeights& w);

Eigen::VectorXd assemble_rhs(const DdrSpace& space, const InterfaceWeights& w, const RegionFn& f,
                             const PointFn& flux_jump, const PointFn& jump);

struct LinearSystem {
  SpMat a;                    // full operator
  Eigen::VectorXd b;          // full right-hand side
  Eigen::VectorXd fixed;      // prescribed values on constrained dofs (0 elsewhere)
  SpMat a_ff;                 // free-free block
  SpMat a_fc;                 // free-constrained block
  Eigen::VectorXd b_f;        // reduced right-hand side
};

// Constrains the boundary edge and vertex dofs to the interpolate of g.
LinearSystem apply_dirichlet(const DdrSpace& space, SpMat a, Eigen::VectorXd b, const PointFn& g);

// Sparse LU on the free block; relative residual must reach 1e-10.
DiscreteVector solve(const DdrSpace& space, const LinearSystem& sys);

// Coordinate-format dump (1-based indices) of the reduced system.
void dump_system(const LinearSystem& sys, std::ostream& out);

}  // namespace ddr
