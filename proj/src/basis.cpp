#include "ddr/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ddr {

ElementBasis::ElementBasis(int degree, const Vec2& center, double h)
    : degree_(degree), center_(center), h_(h) {
  const int n = size();
  coeff_ = Eigen::MatrixXd::Identity(n, n);
  exps_.clear();
  for (int d = 0; d <= degree; ++d)
    for (int ax = d; ax >= 0; --ax) exps_.push_back({ax, d - ax});
}

Eigen::VectorXd ElementBasis::monomials(const Vec2& x) const {
  const int n = size();
  Eigen::VectorXd m(n);
  const double xs = (x.x() - center_.x()) / h_;
  const double ys = (x.y() - center_.y()) / h_;
  for (int i = 0; i < n; ++i)
    m(i) = std::pow(xs, exps_[i][0]) * std::pow(ys, exps_[i][1]);
  return m;
}

Eigen::VectorXd ElementBasis::eval(const Vec2& x) const {
  if (size() == 0) return Eigen::VectorXd();
  return coeff_ * monomials(x);
}

Eigen::MatrixX2d ElementBasis::grad(const Vec2& x) const {
  const int n = size();
  Eigen::MatrixX2d g(n, 2);
  if (n == 0) return g;
  const double xs = (x.x() - center_.x()) / h_;
  const double ys = (x.y() - center_.y()) / h_;
  Eigen::MatrixX2d mono_g(n, 2);
  for (int i = 0; i < n; ++i) {
    const int ax = exps_[i][0], ay = exps_[i][1];
    mono_g(i, 0) = ax == 0 ? 0.0 : ax / h_ * std::pow(xs, ax - 1) * std::pow(ys, ay);
    mono_g(i, 1) = ay == 0 ? 0.0 : ay / h_ * std::pow(xs, ax) * std::pow(ys, ay - 1);
  }
  g = coeff_ * mono_g;
  return g;
}

void ElementBasis::orthonormalize(const std::vector<QuadPoint>& rule) {
  const int n = size();
  if (n == 0) return;
  const Eigen::MatrixXd g = gram_matrix(*this, rule);
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("ElementBasis::orthonormalize: Gram matrix not SPD");
  const Eigen::MatrixXd l = llt.matrixL();
  coeff_ = l.triangularView<Eigen::Lower>().solve(coeff_);
}

EdgeBasis::EdgeBasis(int degree) : degree_(degree) {
  const int n = size();
  coeff_ = Eigen::MatrixXd::Identity(n, n);
}

Eigen::VectorXd EdgeBasis::eval(double t) const {
  const int n = size();
  if (n == 0) return Eigen::VectorXd();
  Eigen::VectorXd m(n);
  double p = 1.0;
  for (int i = 0; i < n; ++i) {
    m(i) = p;
    p *= t;
  }
  return coeff_ * m;
}

void EdgeBasis::orthonormalize(const std::vector<EdgeQuadPoint>& rule) {
  const int n = size();
  if (n == 0) return;
  const Eigen::MatrixXd g = gram_matrix(*this, rule);
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("EdgeBasis::orthonormalize: Gram matrix not SPD");
  const Eigen::MatrixXd l = llt.matrixL();
  coeff_ = l.triangularView<Eigen::Lower>().solve(coeff_);
}

Eigen::MatrixXd gram_matrix(const ElementBasis& basis, const std::vector<QuadPoint>& rule) {
  const int n = basis.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (const auto& qp : rule) {
    const Eigen::VectorXd v = basis.eval(qp.x);
    g += qp.w * v * v.transpose();
  }
  return g;
}

Eigen::MatrixXd gram_matrix(const EdgeBasis& basis, const std::vector<EdgeQuadPoint>& rule) {
  const int n = basis.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (const auto& qp : rule) {
    const Eigen::VectorXd v = basis.eval(qp.t);
    g += qp.w * v * v.transpose();
  }
  return g;
}

Eigen::VectorXd l2_project(const std::function<double(const Vec2&)>& f, const ElementBasis& basis,
                           const std::vector<QuadPoint>& rule) {
  const int n = basis.size();
  if (n == 0) return Eigen::VectorXd();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  for (const auto& qp : rule) m += qp.w * f(qp.x) * basis.eval(qp.x);
  return gram_matrix(basis, rule).llt().solve(m);
}

Eigen::VectorXd l2_project(const std::function<double(const Vec2&)>& f, const EdgeBasis& basis,
                           const std::vector<EdgeQuadPoint>& rule) {
  const int n = basis.size();
  if (n == 0) return Eigen::VectorXd();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  for (const auto& qp : rule) m += qp.w * f(qp.x) * basis.eval(qp.t);
  return gram_matrix(basis, rule).llt().solve(m);
}

Eigen::MatrixXd divergence_matrix(const ElementBasis& scalar_basis,
                                  const std::vector<QuadPoint>& rule) {
  const int n = scalar_basis.size();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  // moments B(alpha,beta) = int div((x-c) phi_alpha) phi_beta
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  const Vec2 c = scalar_basis.center();
  for (const auto& qp : rule) {
    const Eigen::VectorXd v = scalar_basis.eval(qp.x);
    const Eigen::MatrixX2d g = scalar_basis.grad(qp.x);
    const Eigen::VectorXd divtau = 2.0 * v + g * (qp.x - c);
    b += qp.w * divtau * v.transpose();
  }
  return gram_matrix(scalar_basis, rule).llt().solve(b.transpose()).transpose();
}

}  // namespace ddr
