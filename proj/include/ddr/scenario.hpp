#pragma once

#include "ddr/space.hpp"

#include <map>
#include <string>

namespace ddr {

// A manufactured or physical case: diffusion pair, exact solution and
// gradient, source, interface data, Dirichlet trace, and the interface curve
// the fitted mesh is cut along.
struct Scenario {
  std::string name;
  double sigma_int = 1, sigma_ext = 1;
  RegionFn u;
  RegionGradFn grad_u;
  RegionFn f;
  PointFn jump;       // potential jump data on the chain
  PointFn flux_jump;  // flux jump data on the chain
  PointFn dirichlet;
  InterfaceCurve curve;
  bool has_exact = true;
};

// Piecewise (sigma_ext/sigma_int) (x^2-y^2) / (x^2-y^2) over the square
// interface of half-side 1/4 in the square domain of side 1.
Scenario square_scenario(double sigma_int, double sigma_ext);

// Harmonic two-phase field over the circle of radius R: linear inside,
// dipole-corrected far field outside, constant potential jump -1 across the
// interface.
Scenario circle_scenario(double sigma_int, double sigma_ext, double radius = 0.25);

// Square-interface solution family over a deformed circle
// rho(theta) = R (1 + 0.2 cos 3 theta).
Scenario generic_scenario(double sigma_int, double sigma_ext, double radius = 0.25);

// Affine-per-region solution over the square interface; exercises exactness
// of the scheme.
Scenario patch_scenario(double sigma_int, double sigma_ext);

Scenario make_scenario(const std::string& name, double sigma_int, double sigma_ext);

// Relaxation of a circular capacitive interface in a uniform far field: the
// potential jump grows from zero toward electrostatic equilibrium with time
// constant t_c = C R (1/sigma_int + 1/sigma_ext).
struct LdmSetup {
  double sigma_int = 0.1, sigma_ext = 1.0;
  double radius = 0.25;
  double field = 1.0;       // far-field strength along x
  double capacitance = 0;   // derived from t_c when 0
  double t_c = 1.0;
  double t_final = 2.0;

  double u0(const Vec2& x, Region r) const;
  double u_inf(const Vec2& x, Region r) const;
  double u_exact(const Vec2& x, Region r, double t) const;
  Vec2 grad_u_exact(const Vec2& x, Region r, double t) const;
  double jump_exact(const Vec2& x, double t) const;
  InterfaceCurve curve() const;
};

LdmSetup make_ldm_setup(double sigma_int, double sigma_ext, double radius, double field,
                        double t_c, double t_final);

}  // namespace ddr
