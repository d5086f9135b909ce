#pragma once

#include "ddr/space.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ddr {

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-edge bases and quadrature; the normalized coordinate runs from -1 at
// the stored first endpoint to +1 at the second, so both adjacent elements
// see the same functions.
struct EdgeData {
  std::vector<EdgeQuadPoint> quad;
  EdgeBasis basis_km1, basis_k, basis_kp1;
  Eigen::MatrixXd mass_km1, mass_kp1;
  Eigen::MatrixXd cross_k_kp1;  // int e^k_i e^{k+1}_j
};

// Per-element bases, quadrature, and the local reconstruction matrices, all
// expressed in the local dof numbering of element_globals.
struct ElementData {
  std::vector<QuadPoint> quad;
  ElementBasis basis_km1, basis_k, basis_kp1;
  Eigen::MatrixXd mass_km1, mass_k, mass_kp1;
  Eigen::MatrixXd stiff_kp1;  // int grad phi . grad phi on P^{k+1}
  int ndof = 0;
  std::vector<Eigen::MatrixXd> vte;       // per edge: (k+2) x ndof (edge potential)
  Eigen::MatrixXd grad;                   // 2 Nk x ndof, x block above y block
  Eigen::MatrixXd pot;                    // N_{k+1} x ndof
  std::vector<Eigen::MatrixXd> stab;      // per edge: (k+2) x ndof (trace of pot - vte)
  std::vector<Eigen::MatrixXd> trace_k;   // per edge: (k+1) x Nk
  std::vector<Eigen::MatrixXd> trace_kp1; // per edge: (k+2) x N_{k+1}
  Eigen::MatrixXd a_local;                // grad-grad + stabilization, sigma-free
};

// Discrete space of degree k on a fitted mesh: dof map plus all local data.
class DdrSpace {
 public:
  DdrSpace(const FittedMesh& mesh, int k);

  const FittedMesh& mesh() const { return *mesh_; }
  int k() const { return k_; }
  const DofMap& dofs() const { return dofs_; }
  const ElementData& elem(int t) const { return elems_[t]; }
  const EdgeData& edge(int e) const { return edges_[e]; }
  const std::vector<int>& globals(int t) const { return globals_[t]; }

  DiscreteVector interpolate(const RegionFn& v) const;

  // Gathers the local dof values of element t.
  Eigen::VectorXd restrict_to(int t, const DiscreteVector& v) const;

  // Edge quadrature degree 2k+4, element degree 2k+5.
  int edge_quad_degree() const { return 2 * k_ + 4; }
  int elem_quad_degree() const { return 2 * k_ + 5; }

 private:
  const FittedMesh* mesh_;
  int k_;
  DofMap dofs_;
  std::vector<ElementData> elems_;
  std::vector<EdgeData> edges_;
  std::vector<std::vector<int>> globals_;
};

}  // namespace ddr
