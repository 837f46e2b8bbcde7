#include "infogeo/geometry.hpp"

#include <cmath>
#include <utility>

namespace infogeo {

MetricField::MetricField(std::string label, Eigen::Index dim, Evaluator eval)
    : label_(std::move(label)), dim_(dim), eval_(std::move(eval)) {}

Eigen::MatrixXd MetricField::operator()(const Eigen::VectorXd& theta) const {
  Eigen::MatrixXd g = eval_(theta);
  if (g.rows() != dim_ || g.cols() != dim_)
    throw PreconditionError("metric field '" + label_ + "' returned a matrix of the wrong size");
  return g;
}

MetricField fisher_field(const ExpFamily& family, FisherRoute route) {
  return MetricField("fisher", family.dim(), [family, route](const Eigen::VectorXd& theta) {
    return fisher_information(family, theta, route);
  });
}

MetricField constant_field(const Eigen::MatrixXd& matrix) {
  return MetricField("constant", matrix.rows(), [matrix](const Eigen::VectorXd&) { return matrix; });
}

MetricField scaled_field(const MetricField& field, double factor) {
  return MetricField(std::to_string(factor) + "*" + field.label(), field.dim(),
                     [field, factor](const Eigen::VectorXd& theta) -> Eigen::MatrixXd { return factor * field(theta); });
}

MetricField modulated_field(const MetricField& field,
                            std::function<double(const Eigen::VectorXd&)> factor, std::string label) {
  return MetricField(std::move(label), field.dim(),
                     [field, factor = std::move(factor)](const Eigen::VectorXd& theta) -> Eigen::MatrixXd {
                       return factor(theta) * field(theta);
                     });
}

MetricField sinusoidal_fisher_field(const ExpFamily& family, double amplitude) {
  return modulated_field(
      fisher_field(family), [amplitude](const Eigen::VectorXd& theta) { return 1.0 + amplitude * std::sin(theta[0]); },
      "sinusoidal_fisher");
}

double metric_eval(const MetricField& field, const TangentCoord& u, const TangentCoord& v) {
  require_same_base(u, v);
  if (u.a.size() != field.dim()) throw PreconditionError("metric_eval: direction has wrong dimension");
  return u.a.dot(field(u.theta) * v.a);
}

double norm_of_tangent(const MetricField& field, const TangentCoord& u) {
  return std::sqrt(std::max(0.0, metric_eval(field, u, u)));
}

double polarize(const SquaredNorm& h2, const TangentCoord& u, const TangentCoord& v) {
  return (h2(u + v) - h2(u - v)) / 4.0;
}

Eigen::VectorXd LinearFunction::values_on(const FiniteMeasure& p) const {
  if (coefficients.size() != p.dim())
    throw PreconditionError("linear function and measure differ in dimension");
  return p.points().transpose() * coefficients;
}

NormFunctional::NormFunctional(std::string name, MeasureEval on_measure, GaussianEval on_gaussian)
    : name_(std::move(name)), on_measure_(std::move(on_measure)), on_gaussian_(std::move(on_gaussian)) {}

double NormFunctional::operator()(const FiniteMeasure& p, const Eigen::VectorXd& values) const {
  if (values.size() != p.size())
    throw PreconditionError("norm functional: one value per support point required");
  return on_measure_(p, values);
}

double NormFunctional::operator()(const FiniteMeasure& p, const LinearFunction& f) const {
  return (*this)(p, f.values_on(p));
}

double NormFunctional::operator()(const GaussianReference& phi, const LinearFunction& f) const {
  if (!on_gaussian_)
    throw PreconditionError("norm functional '" + name_ + "' has no closed form on the Gaussian");
  return on_gaussian_(phi, f.coefficients);
}

double NormFunctional::operator()(const TangentPair& pair) const {
  return (*this)(pair.base(), pair.score());
}

NormFunctional fisher_norm_functional() {
  return NormFunctional(
      "fisher",
      [](const FiniteMeasure& p, const Eigen::VectorXd& f) {
        return std::sqrt(p.weights().dot(f.cwiseAbs2()));
      },
      [](const GaussianReference& phi, const Eigen::VectorXd& c) { return phi.linear_l2_norm(c); });
}

NormFunctional scaled_functional(const NormFunctional& base, double factor) {
  return NormFunctional(
      std::to_string(factor) + "*" + base.name(),
      [base, factor](const FiniteMeasure& p, const Eigen::VectorXd& f) { return factor * base(p, f); },
      [base, factor](const GaussianReference& phi, const Eigen::VectorXd& c) {
        return factor * base(phi, LinearFunction{c});
      });
}

NormFunctional l1_perturbed_functional(double eps) {
  const NormFunctional fisher = fisher_norm_functional();
  return NormFunctional(
      "fisher+l1",
      [fisher, eps](const FiniteMeasure& p, const Eigen::VectorXd& f) {
        return fisher(p, f) + eps * p.weights().dot(f.cwiseAbs());
      },
      [eps](const GaussianReference& phi, const Eigen::VectorXd& c) {
        return phi.linear_l2_norm(c) + eps * phi.linear_l1_norm(c);
      });
}

double invariant_fisher_form(const TangentPair& u, const TangentPair& v) {
  const FiniteMeasure& p = u.base();
  if (p.size() != v.base().size() || p.points() != v.base().points() ||
      p.weights() != v.base().weights())
    throw BasePointMismatchError("invariant_fisher_form: tangent pairs have different base measures");
  return p.weights().dot(u.score().cwiseProduct(v.score()));
}

}  // namespace infogeo
