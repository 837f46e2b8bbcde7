#pragma once

#include "infogeo/expfam.hpp"
#include "infogeo/measures.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace infogeo {

/// Largest support a convolution may produce before SupportBlowupError.
inline constexpr std::size_t kDefaultSupportCap = 2'000'000;
/// Smallest |det M| accepted for an invertible affine map.
inline constexpr double kInvertibleDetFloor = 1e-12;

/// Invertible affine map y -> M y + c of R^d.
class AffineMap {
 public:
  AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd offset);
  static AffineMap identity(Eigen::Index dim);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  Eigen::Index dim() const { return offset_.size(); }

  Eigen::VectorXd operator()(const Eigen::VectorXd& y) const { return matrix_ * y + offset_; }
  AffineMap inverse() const;

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd offset_;
};

/// Symmetric square root and inverse square root of an SPD matrix through its
/// eigendecomposition. Eigenvalues are clamped at kRankFloor; a smaller
/// eigenvalue raises RankError.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& sigma);
Eigen::MatrixXd spd_inverse_sqrt(const Eigen::MatrixXd& sigma);

/// Distribution of X + Y for independent X ~ a, Y ~ b.
FiniteMeasure convolve_sum(const FiniteMeasure& a, const FiniteMeasure& b,
                           std::size_t support_cap = kDefaultSupportCap);

/// Q_1 = T_* P_theta, a probability measure on R^d.
FiniteMeasure nef_base(const ExpFamily& family, const Eigen::VectorXd& theta);

/// Q_n, the law of the mean of n IID draws from Q_1, by n-1 exact
/// convolutions followed by the scaling 1/n.
FiniteMeasure nef_distribution(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                               std::size_t support_cap = kDefaultSupportCap);

/// Q_n for every n in `ns` (any order, duplicates allowed), sharing the
/// convolution chain. Results are returned in the order of `ns`.
std::vector<FiniteMeasure> nef_distributions(const ExpFamily& family, const Eigen::VectorXd& theta,
                                             std::span<const int> ns,
                                             std::size_t support_cap = kDefaultSupportCap);

/// Tangent (Q_n, A_n) with dA_n(y) = n a·(y - tau_theta) dQ_n(y).
TangentPair nef_tangent(const ExpFamily& family, const TangentCoord& u, int n);
/// As above with Q_n already computed.
TangentPair nef_tangent(const ExpFamily& family, const TangentCoord& u, int n,
                        const FiniteMeasure& qn);

/// L(y) = sqrt(n) Sigma_theta^{-1/2} (y - tau_theta); L_* Q_n is standardized.
AffineMap standardizing_map(const ExpFamily& family, const Eigen::VectorXd& theta, int n);

/// L_**(P, A) = (L_* P, L_* A).
TangentPair affine_pushforward_pair(const AffineMap& map, const TangentPair& pair);

/// Fisher metric of the n-fold IID extension in theta coordinates: n Sigma.
Eigen::MatrixXd iid_fisher(const ExpFamily& family, const Eigen::VectorXd& theta, int n);

/// Materialized product measure P_theta^n on X^n (points in R^{m n}) with the
/// averaged statistic T_n evaluated on each product point.
struct ProductModel {
  FiniteMeasure measure;
  Eigen::MatrixXd mean_statistic;  ///< d x N, column k is T_n at product point k
};

/// Throws SupportBlowupError when |supp mu|^n exceeds the cap.
ProductModel iid_product(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                         std::size_t support_cap = kDefaultSupportCap);

}  // namespace infogeo
