#pragma once

#include "infogeo/derived.hpp"
#include "infogeo/expfam.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace infogeo {

/// Step of the directional third-difference stencil on psi.
inline constexpr double kThirdDerivativeStep = 1e-3;

/// Order-k symmetric multilinear form depending on a base point theta.
class SymmetricTensorField {
 public:
  using Evaluator =
      std::function<double(const Eigen::VectorXd&, std::span<const Eigen::VectorXd>)>;

  SymmetricTensorField(std::string label, int order, Eigen::Index dim, Evaluator eval);

  const std::string& label() const { return label_; }
  int order() const { return order_; }
  Eigen::Index dim() const { return dim_; }

  /// Throws PreconditionError unless exactly order() directions of size dim()
  /// are given.
  double operator()(const Eigen::VectorXd& theta, std::span<const Eigen::VectorXd> dirs) const;
  /// eval(theta, a, ..., a).
  double diagonal(const Eigen::VectorXd& theta, const Eigen::VectorXd& a) const;

 private:
  std::string label_;
  int order_;
  Eigen::Index dim_;
  Evaluator eval_;
};

/// Sum over x of p_theta(x) prod_j a_j·(T(x) - tau_theta). Needs k >= 2.
double amari_chentsov(const ExpFamily& family, const Eigen::VectorXd& theta,
                      std::span<const Eigen::VectorXd> dirs);

/// d^3/dt^3 psi(theta + t a) at t = 0 from the stencil
/// [psi(+2h) - 2 psi(+h) + 2 psi(-h) - psi(-2h)] / (2 h^3).
double third_derivative_fd(const ExpFamily& family, const Eigen::VectorXd& theta,
                           const Eigen::VectorXd& a, double step = kThirdDerivativeStep);

struct ScalingReport {
  double lhs = 0.0;       ///< order-k integral of the score on N_n
  double rhs = 0.0;       ///< the same on N_1
  double residual = 0.0;  ///< |lhs - n^{k/2} rhs|
  double exponent = 0.0;  ///< log(lhs / rhs) / log(n); NaN for n = 1 or a sign change
};

ScalingReport higher_scaling_check(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& a, int n, int k);
ScalingReport higher_scaling_check(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& a, int n, int k, const FiniteMeasure& qn);

/// c' [g(u,v) g(w,m) + g(u,w) g(v,m) + g(u,m) g(v,w)] with g = Sigma_theta.
double symmetric_power_eval(const ExpFamily& family, const Eigen::VectorXd& theta,
                            std::span<const Eigen::VectorXd> dirs, double c_prime);

/// Recovers T(v_1, ..., v_k) from the diagonal q(v) = T(v, ..., v) by the
/// k-th mixed difference
///   (1/k!) sum over S of (-1)^(k - |S|) q(sum_{i in S} v_i).
/// Exact for homogeneous q of degree k.
double polarize_symmetric(const std::function<double(const Eigen::VectorXd&)>& diagonal,
                          std::span<const Eigen::VectorXd> dirs);

struct OddVanishing {
  double value = 0.0;          ///< |eval(a, ..., a)|
  double antisymmetry = 0.0;   ///< |eval(a, ..., a) + eval(-a, ..., -a)| / 2
  double hypothesis = 0.0;     ///< |eval(a, ..., a) - c^k g(u,u)^{k/2}|, when c is given
  double residual = 0.0;       ///< max of the above
};

/// For odd k, an invariant tensor is odd in a yet equal to c^k |u|^k, so it
/// vanishes. Reports how far `field` is from that.
OddVanishing odd_k_vanishing_check(const SymmetricTensorField& field, const ExpFamily& family,
                                   const Eigen::VectorXd& theta, const Eigen::VectorXd& a,
                                   std::optional<double> c = std::nullopt);

/// Largest |T(sigma(dirs)) - T(dirs)| over all permutations sigma.
double permutation_defect(const SymmetricTensorField& field, const Eigen::VectorXd& theta,
                          std::span<const Eigen::VectorXd> dirs);

SymmetricTensorField amari_chentsov_field(const ExpFamily& family, int order);
/// c times the sum over perfect matchings of products of g^F; the zero field
/// for odd k. For k = 4 this is symmetric_power_eval.
SymmetricTensorField invariant_power_field(const ExpFamily& family, int order, double c);
SymmetricTensorField zero_tensor_field(Eigen::Index dim, int order);

}  // namespace infogeo
