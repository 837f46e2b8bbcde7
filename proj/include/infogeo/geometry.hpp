#pragma once

#include "infogeo/expfam.hpp"
#include "infogeo/measures.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>

namespace infogeo {

/// Riemannian metric on a parameter box: theta -> symmetric positive
/// definite matrix.
class MetricField {
 public:
  using Evaluator = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

  MetricField(std::string label, Eigen::Index dim, Evaluator eval);

  const std::string& label() const { return label_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::MatrixXd operator()(const Eigen::VectorXd& theta) const;

 private:
  std::string label_;
  Eigen::Index dim_;
  Evaluator eval_;
};

/// The Fisher metric of `family` in natural coordinates.
MetricField fisher_field(const ExpFamily& family,
                         FisherRoute route = FisherRoute::kCovariance);
MetricField constant_field(const Eigen::MatrixXd& matrix);
MetricField scaled_field(const MetricField& field, double factor);
/// theta -> factor(theta) * field(theta).
MetricField modulated_field(const MetricField& field,
                            std::function<double(const Eigen::VectorXd&)> factor,
                            std::string label);
/// (1 + amplitude sin theta_1) times the Fisher metric; not invariant.
MetricField sinusoidal_fisher_field(const ExpFamily& family, double amplitude = 0.2);

/// g(u, v) = a^T g_theta b. Throws BasePointMismatchError.
double metric_eval(const MetricField& field, const TangentCoord& u, const TangentCoord& v);
double norm_of_tangent(const MetricField& field, const TangentCoord& u);

using SquaredNorm = std::function<double(const TangentCoord&)>;

/// g(u, v) = [h^2(u + v) - h^2(u - v)] / 4.
double polarize(const SquaredNorm& h2, const TangentCoord& u, const TangentCoord& v);

/// y -> c·y.
struct LinearFunction {
  Eigen::VectorXd coefficients;

  /// Values on the support points of `p`.
  Eigen::VectorXd values_on(const FiniteMeasure& p) const;
};

/// A functional H on pairs (P, f·P), the object constrained by the
/// invariance axioms. Always defined on finite-support P; optionally also on
/// (Phi, f Phi) for linear f, evaluated in closed form.
class NormFunctional {
 public:
  using MeasureEval = std::function<double(const FiniteMeasure&, const Eigen::VectorXd&)>;
  using GaussianEval = std::function<double(const GaussianReference&, const Eigen::VectorXd&)>;

  NormFunctional(std::string name, MeasureEval on_measure, GaussianEval on_gaussian = {});

  const std::string& name() const { return name_; }

  /// `values` holds f at each support point of `p`.
  double operator()(const FiniteMeasure& p, const Eigen::VectorXd& values) const;
  double operator()(const FiniteMeasure& p, const LinearFunction& f) const;
  /// H(Phi, f Phi). Throws PreconditionError if the functional has no
  /// closed form on the Gaussian.
  double operator()(const GaussianReference& phi, const LinearFunction& f) const;
  /// H(P, A) with f = dA/dP.
  double operator()(const TangentPair& pair) const;

 private:
  std::string name_;
  MeasureEval on_measure_;
  GaussianEval on_gaussian_;
};

/// H^F(P, f) = sqrt(sum_j w_j f(y_j)^2), the L2(P) norm.
NormFunctional fisher_norm_functional();
NormFunctional scaled_functional(const NormFunctional& base, double factor);
/// H^F(P, f) + eps * sum_j w_j |f(y_j)|; violates the invariance axioms for
/// eps != 0.
NormFunctional l1_perturbed_functional(double eps = 0.1);

/// Invariant Fisher form: integral of (dA/dP)(dB/dP) dP for two tangent
/// pairs over the same base measure.
double invariant_fisher_form(const TangentPair& u, const TangentPair& v);

}  // namespace infogeo
