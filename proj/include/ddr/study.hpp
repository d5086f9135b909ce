#pragma once

#include "ddr/ldm.hpp"
#include "ddr/norms.hpp"
#include "ddr/scenario.hpp"

#include <string>
#include <vector>

namespace ddr {

enum class MeshFamily { Cartesian, Perturbed, Triangular };

MeshFamily mesh_family_from_string(const std::string& s);
std::string to_string(MeshFamily f);

// Builds the fitted mesh of one study level: background of the requested
// family with n cells per side over (-1/2,1/2)^2, cut along the scenario
// interface discretized with the given refinement ratio.
FittedMesh build_level_mesh(const InterfaceCurve& curve, MeshFamily family, int n,
                            int refinement_ratio, std::uint64_t seed);

struct LevelResult {
  int n = 0;
  double h = 0;
  int ndof = 0;
  double eta = 0;
  ErrorReport err;
};

struct ConvergenceResult {
  std::vector<LevelResult> levels;
  std::vector<double> eoc_energy;  // per refinement step
  std::vector<double> eoc_reco;
  double fit_energy = 0;  // least-squares observed orders
  double fit_reco = 0;
};

struct SolveOptions {
  double eta = -1;  // negative selects the per-mesh default
};

// Stationary solve of one scenario on one mesh.
DiscreteVector solve_scenario(const DdrSpace& space, const Scenario& sc, const InterfaceWeights& w);

ConvergenceResult run_convergence(const Scenario& sc, MeshFamily family, int k,
                                  const std::vector<int>& n_values, int refinement_ratio,
                                  std::uint64_t seed, const SolveOptions& opts = {});

// CSV with columns level,h,ndof,err_energy,eoc_energy,err_l2,eoc_l2,err_jump
// (energy and l2 errors normalized, jump raw).
std::string convergence_csv(const ConvergenceResult& res);

// Atomic write (temporary file plus rename).
void write_file_atomic(const std::string& path, const std::string& content);

struct LdmStudyLevel {
  int n = 0;
  LdmResult result;
};

struct LdmStudyResult {
  std::vector<LdmStudyLevel> levels;
  std::vector<double> eoc_energy, eoc_jump;  // against h
  double fit_energy = 0, fit_jump = 0;
};

// Time step divided by four per spatial refinement level.
LdmStudyResult run_ldm_study(const LdmSetup& setup, const std::vector<int>& n_values,
                             int refinement_ratio, int steps0, int k = 0,
                             const SolveOptions& opts = {});

std::string ldm_series_csv(const LdmResult& res);

}  // namespace ddr
