#include "infogeo/expfam.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace infogeo {

namespace {

std::string format_vector(const Eigen::VectorXd& v) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Eigen::VectorXd exponents(const ExpFamily& family, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd& w = family.base().weights();
  Eigen::VectorXd e = family.stat_values().transpose() * theta;
  for (Eigen::Index i = 0; i < e.size(); ++i)
    e[i] += w[i] > 0.0 ? std::log(w[i]) : -std::numeric_limits<double>::infinity();
  return e;
}

}  // namespace

ThetaBox ThetaBox::cube(Eigen::Index dim, double lo, double hi) {
  return {Eigen::VectorXd::Constant(dim, lo), Eigen::VectorXd::Constant(dim, hi)};
}

bool ThetaBox::contains(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim()) return false;
  return (theta.array() >= lower.array()).all() && (theta.array() <= upper.array()).all();
}

std::vector<Eigen::VectorXd> ThetaBox::grid() const {
  constexpr std::array<double, 5> kOffsets{-0.25, -0.125, 0.0, 0.125, 0.25};
  const Eigen::VectorXd half = 0.5 * (upper - lower);
  Eigen::VectorXd direction(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) direction[i] = i % 2 == 0 ? 1.0 : -0.5;
  std::vector<Eigen::VectorXd> points;
  for (double t : kOffsets) points.push_back(center() + t * half.cwiseProduct(direction));
  return points;
}

void require_same_base(const TangentCoord& u, const TangentCoord& v) {
  if (u.theta.size() != v.theta.size() || u.theta != v.theta)
    throw BasePointMismatchError("tangent vectors at different base points " +
                                 format_vector(u.theta) + " and " + format_vector(v.theta));
  if (u.a.size() != v.a.size()) throw PreconditionError("tangent directions differ in dimension");
}

TangentCoord operator+(const TangentCoord& u, const TangentCoord& v) {
  require_same_base(u, v);
  return {u.theta, u.a + v.a};
}

TangentCoord operator-(const TangentCoord& u, const TangentCoord& v) {
  require_same_base(u, v);
  return {u.theta, u.a - v.a};
}

TangentCoord operator*(double s, const TangentCoord& u) { return {u.theta, s * u.a}; }

ExpFamily::ExpFamily(std::string name, FiniteMeasure base, Eigen::MatrixXd stat_values,
                     ThetaBox domain, bool quadrature)
    : name_(std::move(name)),
      base_(std::move(base)),
      stat_values_(std::move(stat_values)),
      domain_(std::move(domain)),
      quadrature_(quadrature) {
  if (stat_values_.cols() != base_.size())
    throw BadParamError(name_ + ": one statistic value per base point required");
  if (domain_.dim() != dim() || domain_.upper.size() != dim())
    throw BadParamError(name_ + ": theta domain dimension differs from the statistic");
  if (!(domain_.lower.array() < domain_.upper.array()).all())
    throw BadParamError(name_ + ": empty theta domain");
  if (!(base_.total_mass() > 0.0)) throw BadParamError(name_ + ": base measure has no mass");
  // Full rank of T on the support, tested through Sigma at the center.
  cov_statistic(*this, domain_.center());
}

ExpFamily ExpFamily::from_statistic(std::string name, FiniteMeasure base,
                                    const Statistic& statistic, ThetaBox domain,
                                    bool quadrature) {
  if (base.size() == 0) throw BadParamError(name + ": empty base measure");
  const Eigen::VectorXd first = statistic(base.point(0));
  Eigen::MatrixXd values(first.size(), base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) values.col(i) = statistic(base.point(i));
  return ExpFamily(std::move(name), std::move(base), std::move(values), std::move(domain),
                   quadrature);
}

void ExpFamily::require_in_domain(const Eigen::VectorXd& theta) const {
  if (!domain_.contains(theta))
    throw DomainError(name_ + ": theta " + format_vector(theta) + " outside the declared domain");
}

double log_partition(const ExpFamily& family, const Eigen::VectorXd& theta) {
  family.require_in_domain(theta);
  const Eigen::VectorXd e = exponents(family, theta);
  const double shift = e.maxCoeff();
  if (!std::isfinite(shift)) throw OverflowError(family.name() + ": log-partition exponent overflow");
  const double shifted = (e.array() - shift).exp().sum();
  const double psi = shift + std::log(shifted);
  if (!std::isfinite(psi)) throw OverflowError(family.name() + ": log-partition overflow");
  return psi;
}

Eigen::VectorXd density_weights(const ExpFamily& family, const Eigen::VectorXd& theta) {
  const double psi = log_partition(family, theta);
  return (exponents(family, theta).array() - psi).exp();
}

FiniteMeasure density_measure(const ExpFamily& family, const Eigen::VectorXd& theta) {
  return FiniteMeasure(family.base().points(), density_weights(family, theta));
}

Eigen::VectorXd mean_statistic(const ExpFamily& family, const Eigen::VectorXd& theta) {
  return family.stat_values() * density_weights(family, theta);
}

Eigen::MatrixXd cov_statistic(const ExpFamily& family, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd p = density_weights(family, theta);
  const Eigen::VectorXd tau = family.stat_values() * p;
  const Eigen::MatrixXd centered = family.stat_values().colwise() - tau;
  Eigen::MatrixXd sigma = centered * p.asDiagonal() * centered.transpose();
  sigma = 0.5 * (sigma + sigma.transpose());
  const double smallest = min_eigenvalue(sigma);
  if (smallest < kRankFloor)
    throw RankError(family.name() + ": statistic covariance is singular at theta " +
                    format_vector(theta) + " (smallest eigenvalue " + std::to_string(smallest) + ")");
  return sigma;
}

FisherRoute parse_fisher_route(std::string_view text) {
  if (text == "A" || text == "a" || text == "covariance") return FisherRoute::kCovariance;
  if (text == "B" || text == "b" || text == "score") return FisherRoute::kScoreOuterProduct;
  if (text == "C" || text == "c" || text == "hessian") return FisherRoute::kHessian;
  throw BadParamError("unknown Fisher route '" + std::string(text) + "' (expected A, B or C)");
}

std::string_view route_label(FisherRoute route) {
  switch (route) {
    case FisherRoute::kCovariance: return "A";
    case FisherRoute::kScoreOuterProduct: return "B";
    case FisherRoute::kHessian: return "C";
  }
  return "?";
}

namespace {

Eigen::MatrixXd score_outer_product(const ExpFamily& family, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd p = density_weights(family, theta);
  const Eigen::VectorXd tau = mean_statistic(family, theta);
  const Eigen::Index d = family.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const Eigen::VectorXd score = family.stat_values().col(k) - tau;
    g.noalias() += p[k] * score * score.transpose();
  }
  return g;
}

Eigen::MatrixXd log_partition_hessian(const ExpFamily& family, const Eigen::VectorXd& theta) {
  const Eigen::Index d = family.dim();
  const double h = kHessianStep;
  auto psi_at = [&](const Eigen::VectorXd& shift) {
    const Eigen::VectorXd point = theta + shift;
    if (!family.domain().contains(point))
      throw DomainError(family.name() + ": Hessian stencil leaves the domain near theta " +
                        format_vector(theta));
    return log_partition(family, point);
  };
  Eigen::MatrixXd hess(d, d);
  const double center = log_partition(family, theta);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::VectorXd ei = h * Eigen::VectorXd::Unit(d, i);
    hess(i, i) = (psi_at(ei) - 2.0 * center + psi_at(-ei)) / (h * h);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Eigen::VectorXd ej = h * Eigen::VectorXd::Unit(d, j);
      const double mixed =
          (psi_at(ei + ej) - psi_at(ei - ej) - psi_at(-ei + ej) + psi_at(-ei - ej)) / (4.0 * h * h);
      hess(i, j) = hess(j, i) = mixed;
    }
  }
  return hess;
}

}  // namespace

Eigen::MatrixXd fisher_information(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   FisherRoute route) {
  switch (route) {
    case FisherRoute::kCovariance: return cov_statistic(family, theta);
    case FisherRoute::kScoreOuterProduct: return score_outer_product(family, theta);
    case FisherRoute::kHessian: return log_partition_hessian(family, theta);
  }
  throw BadParamError("fisher_information: unknown route");
}

TangentPair model_tangent(const ExpFamily& family, const TangentCoord& u) {
  if (u.a.size() != family.dim()) throw PreconditionError("model_tangent: direction has wrong dimension");
  const FiniteMeasure p = density_measure(family, u.theta);
  const Eigen::VectorXd tau = family.stat_values() * p.weights();
  const Eigen::VectorXd score =
      (family.stat_values().transpose() * u.a).array() - tau.dot(u.a);
  return TangentPair(p, with_density(p, score));
}

}  // namespace infogeo
