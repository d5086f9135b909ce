#include "ddr/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ddr {

MeshFamily mesh_family_from_string(const std::string& s) {
  if (s == "cartesian") return MeshFamily::Cartesian;
  if (s == "perturbed") return MeshFamily::Perturbed;
  if (s == "triangular") return MeshFamily::Triangular;
  throw std::invalid_argument("unknown mesh family '" + s + "'");
}

std::string to_string(MeshFamily f) {
  switch (f) {
    case MeshFamily::Cartesian: return "cartesian";
    case MeshFamily::Perturbed: return "perturbed";
    default: return "triangular";
  }
}

FittedMesh build_level_mesh(const InterfaceCurve& curve, MeshFamily family, int n,
                            int refinement_ratio, std::uint64_t seed) {
  const DomainBox box{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)};
  FittedMesh bg = family == MeshFamily::Triangular ? build_triangular_mesh_n(n, box)
                                                   : build_cartesian_mesh(n, box);
  // reference size: the cell side for cartesian grids (so aligned interfaces
  // fall on mesh lines), the element diameter for triangulations
  const double h_bg =
      family == MeshFamily::Triangular ? bg.max_diameter() : (box.hi.x() - box.lo.x()) / n;
  const PolygonalChain chain = discretize_interface(curve, refinement_ratio, h_bg);
  FittedMesh fitted = cut_mesh(bg, chain);
  if (family == MeshFamily::Perturbed) fitted = perturb_vertices(fitted, 0.2, seed);
  return fitted;
}

DiscreteVector solve_scenario(const DdrSpace& space, const Scenario& sc,
                              const InterfaceWeights& w) {
  const SpMat a = assemble_bilinear(space, w);
  const Eigen::VectorXd b = assemble_rhs(space, w, sc.f, sc.flux_jump, sc.jump);
  const LinearSystem sys = apply_dirichlet(space, a, b, sc.dirichlet);
  return solve(space, sys);
}

ConvergenceResult run_convergence(const Scenario& sc, MeshFamily family, int k,
                                  const std::vector<int>& n_values, int refinement_ratio,
                                  std::uint64_t seed, const SolveOptions& opts) {
  ConvergenceResult out;
  std::vector<double> hs, errs_en, errs_reco;
  for (size_t lvl = 0; lvl < n_values.size(); ++lvl) {
    const FittedMesh mesh =
        build_level_mesh(sc.curve, family, n_values[lvl], refinement_ratio, seed + lvl);
    const DdrSpace space(mesh, k);
    const double eta = opts.eta > 0 ? opts.eta : default_eta(space);
    const InterfaceWeights w = interface_weights(sc.sigma_int, sc.sigma_ext, eta);
    const DiscreteVector u_h = solve_scenario(space, sc, w);
    LevelResult lr;
    lr.n = n_values[lvl];
    lr.eta = eta;
    lr.err = compute_errors(space, w, sc.u, u_h);
    lr.h = lr.err.h;
    lr.ndof = lr.err.ndof;
    out.levels.push_back(lr);
    hs.push_back(lr.h);
    errs_en.push_back(lr.err.err_energy_rel);
    errs_reco.push_back(lr.err.err_reco_rel);
  }
  out.eoc_energy = eoc(hs, errs_en);
  out.eoc_reco = eoc(hs, errs_reco);
  out.fit_energy = eoc_fit(hs, errs_en);
  out.fit_reco = eoc_fit(hs, errs_reco);
  return out;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

}  // namespace

std::string convergence_csv(const ConvergenceResult& res) {
  std::ostringstream os;
  os << "level,h,ndof,err_energy,eoc_energy,err_l2,eoc_l2,err_jump\n";
  for (size_t i = 0; i < res.levels.size(); ++i) {
    const auto& lr = res.levels[i];
    os << i << "," << fmt(lr.h) << "," << lr.ndof << "," << fmt(lr.err.err_energy_rel) << ",";
    if (i > 0) os << fmt(res.eoc_energy[i - 1]);
    os << "," << fmt(lr.err.err_reco_rel) << ",";
    if (i > 0) os << fmt(res.eoc_reco[i - 1]);
    os << "," << fmt(lr.err.err_jump) << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

LdmStudyResult run_ldm_study(const LdmSetup& setup, const std::vector<int>& n_values,
                             int refinement_ratio, int steps0, int k, const SolveOptions& opts) {
  LdmStudyResult out;
  std::vector<double> hs, errs_en, errs_j;
  int steps = steps0;
  for (size_t lvl = 0; lvl < n_values.size(); ++lvl) {
    const FittedMesh mesh = build_level_mesh(setup.curve(), MeshFamily::Triangular, n_values[lvl],
                                             refinement_ratio, 0);
    const DdrSpace space(mesh, k);
    const double eta = opts.eta > 0 ? opts.eta : default_eta(space);
    const InterfaceWeights w = interface_weights(setup.sigma_int, setup.sigma_ext, eta);
    LdmStudyLevel lev;
    lev.n = n_values[lvl];
    lev.result = run_ldm(space, setup, w, steps);
    out.levels.push_back(std::move(lev));
    hs.push_back(out.levels.back().result.h);
    errs_en.push_back(out.levels.back().result.temporal_err_energy);
    errs_j.push_back(out.levels.back().result.temporal_err_jump);
    steps *= 4;
  }
  out.eoc_energy = eoc(hs, errs_en);
  out.eoc_jump = eoc(hs, errs_j);
  out.fit_energy = eoc_fit(hs, errs_en);
  out.fit_jump = eoc_fit(hs, errs_j);
  return out;
}

std::string ldm_series_csv(const LdmResult& res) {
  std::ostringstream os;
  os << "step,t,err_energy,err_jump,flux_int\n";
  for (size_t i = 0; i < res.series.size(); ++i) {
    const auto& s = res.series[i];
    os << i << "," << fmt(s.t) << "," << fmt(s.err_energy) << "," << fmt(s.err_jump) << ","
       << fmt(s.flux_int) << "\n";
  }
  return os.str();
}

}  // namespace ddr
