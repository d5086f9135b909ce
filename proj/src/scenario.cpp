#include "ddr/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace ddr {

namespace {

const double kSquareHalf = 0.25;

// outward normal of the square interface at a point of its boundary
Vec2 square_normal(const Vec2& x) {
  if (std::abs(x.x()) >= std::abs(x.y())) return Vec2(x.x() > 0 ? 1 : -1, 0);
  return Vec2(0, x.y() > 0 ? 1 : -1);
}

}  // namespace

Scenario square_scenario(double sigma_int, double sigma_ext) {
  Scenario s;
  s.name = "square";
  s.sigma_int = sigma_int;
  s.sigma_ext = sigma_ext;
  const double r = sigma_ext / sigma_int;
  s.u = [r](const Vec2& x, Region reg) {
    const double base = x.x() * x.x() - x.y() * x.y();
    return reg == Region::Int ? r * base : base;
  };
  s.grad_u = [r](const Vec2& x, Region reg) {
    const Vec2 g(2 * x.x(), -2 * x.y());
    return reg == Region::Int ? Vec2(r * g) : g;
  };
  s.f = [](const Vec2&, Region) { return 0.0; };
  s.jump = [r](const Vec2& x) { return (r - 1) * (x.x() * x.x() - x.y() * x.y()); };
  s.flux_jump = [](const Vec2&) { return 0.0; };
  s.dirichlet = [](const Vec2& x) { return x.x() * x.x() - x.y() * x.y(); };
  s.curve = InterfaceCurve::square(Vec2::Zero(), kSquareHalf);
  return s;
}

Scenario circle_scenario(double sigma_int, double sigma_ext, double radius) {
  Scenario s;
  s.name = "circle";
  s.sigma_int = sigma_int;
  s.sigma_ext = sigma_ext;
  const double ci = 2 * sigma_ext / (sigma_ext + sigma_int);
  const double c = (sigma_ext - sigma_int) / (sigma_ext + sigma_int);
  const double r2c = c * radius * radius;
  auto u_int = [ci](const Vec2& x) { return ci * x.x(); };
  auto u_ext = [r2c](const Vec2& x) {
    const double rr = x.squaredNorm();
    return 1.0 + (1.0 + r2c / rr) * x.x();
  };
  s.u = [u_int, u_ext](const Vec2& x, Region reg) {
    return reg == Region::Int ? u_int(x) : u_ext(x);
  };
  s.grad_u = [ci, r2c](const Vec2& x, Region reg) {
    if (reg == Region::Int) return Vec2(ci, 0.0);
    const double rr = x.squaredNorm();
    return Vec2(1.0 + r2c * (x.y() * x.y() - x.x() * x.x()) / (rr * rr),
                -2.0 * r2c * x.x() * x.y() / (rr * rr));
  };
  s.f = [](const Vec2&, Region) { return 0.0; };
  s.jump = [u_int, u_ext](const Vec2& x) { return u_int(x) - u_ext(x); };
  s.flux_jump = [](const Vec2&) { return 0.0; };
  s.dirichlet = u_ext;
  s.curve = InterfaceCurve::circle(Vec2::Zero(), radius);
  return s;
}

Scenario generic_scenario(double sigma_int, double sigma_ext, double radius) {
  Scenario s = square_scenario(sigma_int, sigma_ext);
  s.name = "generic";
  s.curve = InterfaceCurve::deformed_circle(Vec2::Zero(), radius, 0.2, 3);
  return s;
}

Scenario patch_scenario(double sigma_int, double sigma_ext) {
  Scenario s;
  s.name = "patch";
  s.sigma_int = sigma_int;
  s.sigma_ext = sigma_ext;
  const Vec2 gi(2.0, -1.0);
  const Vec2 ge(0.5, 1.2);
  const double ai = 0.7, ae = -0.3;
  s.u = [=](const Vec2& x, Region reg) {
    return reg == Region::Int ? ai + gi.dot(x) : ae + ge.dot(x);
  };
  s.grad_u = [=](const Vec2&, Region reg) { return reg == Region::Int ? gi : ge; };
  s.f = [](const Vec2&, Region) { return 0.0; };
  s.jump = [=](const Vec2& x) { return (ai + gi.dot(x)) - (ae + ge.dot(x)); };
  s.flux_jump = [=](const Vec2& x) {
    return (sigma_int * gi - sigma_ext * ge).dot(square_normal(x));
  };
  s.dirichlet = [=](const Vec2& x) { return ae + ge.dot(x); };
  s.curve = InterfaceCurve::square(Vec2::Zero(), kSquareHalf);
  return s;
}

Scenario make_scenario(const std::string& name, double sigma_int, double sigma_ext) {
  if (name == "square") return square_scenario(sigma_int, sigma_ext);
  if (name == "circle") return circle_scenario(sigma_int, sigma_ext);
  if (name == "generic") return generic_scenario(sigma_int, sigma_ext);
  if (name == "patch") return patch_scenario(sigma_int, sigma_ext);
  throw std::invalid_argument("make_scenario: unknown case '" + name + "'");
}

double LdmSetup::u0(const Vec2& x, Region r) const {
  if (r == Region::Int) return field * 2 * sigma_ext / (sigma_ext + sigma_int) * x.x();
  const double c = (sigma_ext - sigma_int) / (sigma_ext + sigma_int);
  return field * (1.0 + c * radius * radius / x.squaredNorm()) * x.x();
}

double LdmSetup::u_inf(const Vec2& x, Region r) const {
  if (r == Region::Int) return 0.0;
  return field * (1.0 + radius * radius / x.squaredNorm()) * x.x();
}

double LdmSetup::u_exact(const Vec2& x, Region r, double t) const {
  const double decay = std::exp(-t / t_c);
  return decay * (u0(x, r) - u_inf(x, r)) + u_inf(x, r);
}

Vec2 LdmSetup::grad_u_exact(const Vec2& x, Region r, double t) const {
  const double decay = std::exp(-t / t_c);
  auto dipole_grad = [&](double coeff) {
    const double rr = x.squaredNorm();
    return Vec2(field * (1.0 + coeff * (x.y() * x.y() - x.x() * x.x()) / (rr * rr)),
                field * (-2.0 * coeff * x.x() * x.y() / (rr * rr)));
  };
  const double c = (sigma_ext - sigma_int) / (sigma_ext + sigma_int);
  const double r2 = radius * radius;
  if (r == Region::Int) {
    const Vec2 g0(field * 2 * sigma_ext / (sigma_ext + sigma_int), 0.0);
    return Vec2(decay * g0);
  }
  const Vec2 g0 = dipole_grad(c * r2);
  const Vec2 ginf = dipole_grad(r2);
  return Vec2(decay * (g0 - ginf) + ginf);
}

double LdmSetup::jump_exact(const Vec2& x, double t) const {
  const double decay = std::exp(-t / t_c);
  const double j0 = u0(x, Region::Int) - u0(x, Region::Ext);
  const double jinf = u_inf(x, Region::Int) - u_inf(x, Region::Ext);
  return decay * (j0 - jinf) + jinf;
}

InterfaceCurve LdmSetup::curve() const { return InterfaceCurve::circle(Vec2::Zero(), radius); }

LdmSetup make_ldm_setup(double sigma_int, double sigma_ext, double radius, double field,
                        double t_c, double t_final) {
  LdmSetup s;
  s.sigma_int = sigma_int;
  s.sigma_ext = sigma_ext;
  s.radius = radius;
  s.field = field;
  s.t_c = t_c;
  s.t_final = t_final;
  s.capacitance = t_c / (radius * (1.0 / sigma_int + 1.0 / sigma_ext));
  return s;
}

}  // namespace ddr
