#include "infogeo/quadrature.hpp"

#include "infogeo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace infogeo {

namespace {

// Nodes are the eigenvalues of the Jacobi matrix; weights are mu0 times the
// squared first component of each normalized eigenvector.
QuadratureRule golub_welsch(const Eigen::VectorXd& off_diagonal, double mu0) {
  const Eigen::Index n = off_diagonal.size() + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = off_diagonal[i];
    jacobi(i + 1, i) = off_diagonal[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite(int count) {
  if (count < 1) throw BadParamError("gauss_hermite: need at least one node");
  Eigen::VectorXd beta(count - 1);
  for (int k = 1; k < count; ++k) beta[k - 1] = std::sqrt(k / 2.0);
  return golub_welsch(beta, std::sqrt(std::numbers::pi));
}

QuadratureRule gauss_legendre(int count) {
  if (count < 1) throw BadParamError("gauss_legendre: need at least one node");
  Eigen::VectorXd beta(count - 1);
  for (int k = 1; k < count; ++k) beta[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(beta, 2.0);
}

QuadratureRule trapezoid(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw BadParamError("trapezoid: need two nodes and lo < hi");
  const double step = (hi - lo) / (count - 1);
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights = Eigen::VectorXd::Constant(count, step);
  for (int k = 0; k < count; ++k) rule.nodes[k] = lo + k * step;
  rule.weights[0] = rule.weights[count - 1] = step / 2.0;
  return rule;
}

}  // namespace infogeo
