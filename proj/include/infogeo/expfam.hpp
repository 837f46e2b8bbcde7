#pragma once

#include "infogeo/measures.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace infogeo {

/// Smallest admissible eigenvalue of the statistic covariance.
inline constexpr double kRankFloor = 1e-10;
/// Step of the central-difference Hessian of the log-partition.
inline constexpr double kHessianStep = 1e-4;

/// Axis-aligned box of natural parameters on which the family is declared
/// normalizable.
struct ThetaBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static ThetaBox cube(Eigen::Index dim, double lo, double hi);

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }

  /// Five interior test points: center + t * halfwidth for
  /// t in {-1/4, -1/8, 0, 1/8, 1/4}, moving along +1 on even axes and -1/2 on
  /// odd axes so that d > 1 grids are not confined to the diagonal.
  std::vector<Eigen::VectorXd> grid() const;
};

/// Tangent vector u = (theta, a) to the parameter space.
struct TangentCoord {
  Eigen::VectorXd theta;
  Eigen::VectorXd a;
};

/// Vector-space operations on a single tangent space. Throw
/// BasePointMismatchError when the base points differ.
TangentCoord operator+(const TangentCoord& u, const TangentCoord& v);
TangentCoord operator-(const TangentCoord& u, const TangentCoord& v);
TangentCoord operator*(double s, const TangentCoord& u);
void require_same_base(const TangentCoord& u, const TangentCoord& v);

/// Regular exponential family p_theta(x) = exp(theta·T(x) - psi(theta)) with
/// respect to a finitely supported base measure mu.
class ExpFamily {
 public:
  using Statistic = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  /// `stat_values` is d x N with column i equal to T at base point i.
  /// Throws RankError when the statistic covariance is singular at the
  /// domain center.
  ExpFamily(std::string name, FiniteMeasure base, Eigen::MatrixXd stat_values, ThetaBox domain,
            bool quadrature = false);

  /// Evaluates `statistic` on every base point.
  static ExpFamily from_statistic(std::string name, FiniteMeasure base, const Statistic& statistic,
                                  ThetaBox domain, bool quadrature = false);

  const std::string& name() const { return name_; }
  const FiniteMeasure& base() const { return base_; }
  const Eigen::MatrixXd& stat_values() const { return stat_values_; }
  const ThetaBox& domain() const { return domain_; }
  /// Order d of the family (dimension of the statistic).
  Eigen::Index dim() const { return stat_values_.rows(); }
  /// Dimension m of the sample space.
  Eigen::Index sample_dim() const { return base_.dim(); }
  /// True when the base measure discretizes a continuous one.
  bool is_quadrature() const { return quadrature_; }

  /// Throws DomainError unless theta lies in the declared domain.
  void require_in_domain(const Eigen::VectorXd& theta) const;

 private:
  std::string name_;
  FiniteMeasure base_;
  Eigen::MatrixXd stat_values_;
  ThetaBox domain_;
  bool quadrature_;
};

/// psi(theta) = log sum_i w_i exp(theta·T(x_i)), evaluated with a max shift.
double log_partition(const ExpFamily& family, const Eigen::VectorXd& theta);

/// Probability weights p_theta(x_i) w_i aligned with the base support.
Eigen::VectorXd density_weights(const ExpFamily& family, const Eigen::VectorXd& theta);

/// P_theta = p_theta mu.
FiniteMeasure density_measure(const ExpFamily& family, const Eigen::VectorXd& theta);

/// tau_theta, the mean of T under P_theta.
Eigen::VectorXd mean_statistic(const ExpFamily& family, const Eigen::VectorXd& theta);

/// Sigma_theta, the covariance of T under P_theta. Throws RankError when its
/// smallest eigenvalue falls below kRankFloor.
Eigen::MatrixXd cov_statistic(const ExpFamily& family, const Eigen::VectorXd& theta);

enum class FisherRoute {
  kCovariance,        ///< Sigma_theta
  kScoreOuterProduct, ///< E[(d_i log p)(d_j log p)]
  kHessian,           ///< central-difference Hessian of psi
};

FisherRoute parse_fisher_route(std::string_view text);
std::string_view route_label(FisherRoute route);

Eigen::MatrixXd fisher_information(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   FisherRoute route);

/// The tangent pair (P_theta, sum_i a_i d p_theta / d theta_i mu).
TangentPair model_tangent(const ExpFamily& family, const TangentCoord& u);

}  // namespace infogeo
