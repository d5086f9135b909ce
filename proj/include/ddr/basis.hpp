#pragma once

#include "ddr/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace ddr {

// Dimension of the bivariate polynomial space of total degree m (0 for m < 0).
inline int poly_dim_2d(int m) { return m < 0 ? 0 : (m + 1) * (m + 2) / 2; }
inline int poly_dim_1d(int m) { return m < 0 ? 0 : m + 1; }

// Scaled monomials ((x - center)/h)^alpha on an element, optionally
// re-combined into an L2-orthonormal set through a Cholesky factorization of
// the Gram matrix. The degree -1 space is empty.
class ElementBasis {
 public:
  ElementBasis() = default;
  ElementBasis(int degree, const Vec2& center, double h);

  int degree() const { return degree_; }
  int size() const { return poly_dim_2d(degree_); }
  const Vec2& center() const { return center_; }
  double scale() const { return h_; }

  Eigen::VectorXd eval(const Vec2& x) const;
  // One row per function, columns (d/dx, d/dy).
  Eigen::MatrixX2d grad(const Vec2& x) const;

  void orthonormalize(const std::vector<QuadPoint>& rule);

 private:
  Eigen::VectorXd monomials(const Vec2& x) const;
  int degree_ = -1;
  Vec2 center_ = Vec2::Zero();
  double h_ = 1.0;
  Eigen::MatrixXd coeff_;  // size x size transform over raw monomials
  std::vector<std::array<int, 2>> exps_;
};

// Scaled 1D monomials t^j of the normalized arclength t in [-1,1].
class EdgeBasis {
 public:
  EdgeBasis() = default;
  explicit EdgeBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return poly_dim_1d(degree_); }

  Eigen::VectorXd eval(double t) const;

  void orthonormalize(const std::vector<EdgeQuadPoint>& rule);

 private:
  int degree_ = -1;
  Eigen::MatrixXd coeff_;
};

Eigen::MatrixXd gram_matrix(const ElementBasis& basis, const std::vector<QuadPoint>& rule);
Eigen::MatrixXd gram_matrix(const EdgeBasis& basis, const std::vector<EdgeQuadPoint>& rule);

// L2-orthogonal projection: coefficients of the projection of f onto the
// basis span (empty vector for the degree -1 space).
Eigen::VectorXd l2_project(const std::function<double(const Vec2&)>& f, const ElementBasis& basis,
                           const std::vector<QuadPoint>& rule);
Eigen::VectorXd l2_project(const std::function<double(const Vec2&)>& f, const EdgeBasis& basis,
                           const std::vector<EdgeQuadPoint>& rule);

// Matrix of the divergence from the space (x - center) P^{m-1}(T) onto
// P^{m-1}(T): row alpha holds the coefficients of div((x - c) phi_alpha) in
// the scalar basis. The map is an isomorphism; for raw scaled monomials it
// is diagonal with entries 2 + |alpha|.
Eigen::MatrixXd divergence_matrix(const ElementBasis& scalar_basis,
                                  const std::vector<QuadPoint>& rule);

}  // namespace ddr
