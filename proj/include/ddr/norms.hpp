#pragma once

#include "ddr/assembly.hpp"

#include <vector>

namespace ddr {

// Energy norm: sigma-weighted gradient and stabilization terms plus the
// interface jump seminorm (eta-free).
double energy_norm(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v);

// Interface jump seminorm sqrt(sum_E alpha/h_E ||[v]||_E^2).
double jump_seminorm(const DdrSpace& space, const InterfaceWeights& w, const DiscreteVector& v);

// Component norm sqrt(sum_T ||v_T||_T^2 + h_T sum_E ||v_E||_E^2);
// identically zero for k = 0 where both blocks are empty.
double l2_component_norm(const DdrSpace& space, const DiscreteVector& v);

// L2 distance between the element potential reconstruction of v and a given
// exact field; `norm_of_exact` receives ||u||_{L2} for normalization.
double reconstruction_l2_error(const DdrSpace& space, const DiscreteVector& v, const RegionFn& u,
                               double* norm_of_exact = nullptr);

struct ErrorReport {
  double h = 0;
  int ndof = 0;
  double err_energy = 0;        // ||u_h - I_h u||_en
  double err_energy_rel = 0;    // normalized by ||u_h||_en
  double err_l2h = 0;           // component norm of u_h - I_h u
  double err_l2h_rel = 0;
  double err_reco = 0;          // ||p_T u_h - u||_L2
  double err_reco_rel = 0;      // normalized by ||u||_L2
  double err_jump = 0;          // jump seminorm of u_h - I_h u
  double norm_energy = 0;
  double norm_l2h = 0;
  double norm_u_l2 = 0;
};

ErrorReport compute_errors(const DdrSpace& space, const InterfaceWeights& w, const RegionFn& u,
                           const DiscreteVector& u_h);

// Orders log(e_i/e_{i+1}) / log(h_i/h_{i+1}) per refinement step.
std::vector<double> eoc(const std::vector<double>& h, const std::vector<double>& err);

// Least-squares slope of log(err) against log(h).
double eoc_fit(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace ddr
