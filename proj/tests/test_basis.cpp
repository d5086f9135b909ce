#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ddr/basis.hpp"

#include <cmath>
#include <random>

using namespace ddr;

namespace {

std::vector<Vec2> unit_square() {
  return {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
}

}  // namespace

TEST_CASE("space dimensions") {
  CHECK(poly_dim_2d(-1) == 0);
  CHECK(poly_dim_2d(0) == 1);
  CHECK(poly_dim_2d(1) == 3);
  CHECK(poly_dim_2d(2) == 6);
  CHECK(poly_dim_1d(-1) == 0);
  CHECK(poly_dim_1d(2) == 3);
}

TEST_CASE("element projection examples") {
  const auto sq = unit_square();
  const Vec2 c(0.5, 0.5);
  const auto rule = element_quadrature(sq, c, 6);
  // mean of x over the unit square
  ElementBasis p0(0, c, 1.0);
  const Eigen::VectorXd cf = l2_project([](const Vec2& x) { return x.x(); }, p0, rule);
  CHECK(cf.size() == 1);
  CHECK(cf(0) == doctest::Approx(0.5).epsilon(1e-13));
  // degree -1 space is empty
  ElementBasis pm1;
  CHECK(l2_project([](const Vec2&) { return 1.0; }, pm1, rule).size() == 0);
}

TEST_CASE("edge projection reproduces the space") {
  const auto rule = edge_quadrature(Vec2(0, 0), Vec2(1, 1), 6);
  EdgeBasis p1(1);
  // f affine along the edge: f = 2 + 3 (x + y - 1) = 2 + 3 t
  const Eigen::VectorXd cf =
      l2_project([](const Vec2& x) { return 2.0 + 3.0 * (x.x() + x.y() - 1.0); }, p1, rule);
  for (const auto& qp : rule) {
    const double f = 2.0 + 3.0 * qp.t;
    CHECK(cf.dot(p1.eval(qp.t)) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("projector idempotency") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(-1, 1);
  const std::vector<Vec2> poly = {Vec2(-0.2, -0.3), Vec2(1, 0), Vec2(1.2, 0.9), Vec2(0, 1)};
  const Vec2 c = interior_point(poly);
  const auto rule = element_quadrature(poly, c, 8);
  for (int deg = 0; deg <= 3; ++deg) {
    ElementBasis basis(deg, c, polygon_diameter(poly));
    for (int trial = 0; trial < 25; ++trial) {
      auto f = [&](const Vec2& x) {
        return std::sin(3 * x.x()) + std::cos(2 * x.y()) + unif(rng) * 0;
      };
      const Eigen::VectorXd c1 = l2_project(f, basis, rule);
      auto pf = [&](const Vec2& x) { return c1.dot(basis.eval(x)); };
      const Eigen::VectorXd c2 = l2_project(pf, basis, rule);
      CHECK((c1 - c2).norm() <= 1e-12 * std::max(1.0, c1.norm()));
    }
  }
}

TEST_CASE("orthonormalized basis has identity Gram") {
  const std::vector<Vec2> poly = {Vec2(0, 0), Vec2(0.03, 0), Vec2(0.03, 1), Vec2(0, 1)};
  const Vec2 c = interior_point(poly);
  const auto rule = element_quadrature(poly, c, 8);
  ElementBasis basis(2, c, polygon_diameter(poly));
  basis.orthonormalize(rule);
  const Eigen::MatrixXd g = gram_matrix(basis, rule);
  CHECK((g - Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-10);
}

TEST_CASE("divergence matrix of the Raviart-type space") {
  const auto sq = unit_square();
  const Vec2 c(0.5, 0.5);
  const auto rule = element_quadrature(sq, c, 8);
  // m = 1: basis (x - x_T) spans, div = 2 regardless of the scalar scale
  ElementBasis p0(0, c, 1.0);
  const Eigen::MatrixXd d1 = divergence_matrix(p0, rule);
  REQUIRE(d1.rows() == 1);
  CHECK(d1(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
  // raw scaled monomials diagonalize the divergence: entries 2 + |alpha|
  ElementBasis p1(1, c, polygon_diameter(sq));
  const Eigen::MatrixXd d2 = divergence_matrix(p1, rule);
  REQUIRE(d2.rows() == 3);
  CHECK((d2 - Eigen::Vector3d(2, 3, 3).asDiagonal().toDenseMatrix()).norm() <= 1e-12);
  // translation of the center leaves the m=1 matrix unchanged
  ElementBasis p0_shift(0, Vec2(0.1, 0.9), 1.0);
  const Eigen::MatrixXd d1s = divergence_matrix(p0_shift, rule);
  CHECK(d1s(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("divergence map is an isomorphism on stretched cells") {
  const std::vector<std::vector<Vec2>> polys = {
      unit_square(),
      {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)},
      {Vec2(0, 0), Vec2(1, 0), Vec2(1, 0.02), Vec2(0, 0.02)},
      {Vec2(0, 0), Vec2(2, 0), Vec2(2, 1), Vec2(1, 1), Vec2(1, 2), Vec2(0, 2)},
  };
  for (const auto& poly : polys) {
    const Vec2 c = interior_point(poly);
    const auto rule = element_quadrature(poly, c, 10);
    for (int m = 1; m <= 3; ++m) {
      ElementBasis basis(m - 1, c, polygon_diameter(poly));
      basis.orthonormalize(rule);
      const Eigen::MatrixXd d = divergence_matrix(basis, rule);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
      CHECK(svd.singularValues().minCoeff() > 1e-10);
    }
  }
}
