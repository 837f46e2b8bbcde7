#pragma once

#include "infogeo/errors.hpp"
#include "infogeo/quantize.hpp"

#include <Eigen/Core>

#include <cmath>
#include <memory>
#include <optional>
#include <utility>

namespace infogeo {

/// Tolerance on the total mass of a probability measure.
inline constexpr double kProbabilityMassTol = 1e-12;
/// Tolerance on the total mass of a tangent direction.
inline constexpr double kTangentMassTol = 1e-10;

enum class Sign { kNonNegative, kSigned };

/// A measure with finite support on R^m: weighted points, stored column-wise.
///
/// Construction merges points that coincide after quantization (see
/// quantize.hpp), summing their weights; the first occurrence is kept as the
/// representative coordinate. Values are immutable once built.
template <Sign S>
class WeightedPoints {
 public:
  WeightedPoints() = default;

  /// `points` is dim x count; `weights` has count entries. Non-negative
  /// measures reject negative or non-finite weights.
  WeightedPoints(Eigen::MatrixXd points, Eigen::VectorXd weights);

  static WeightedPoints point_mass(const Eigen::VectorXd& x, double weight = 1.0);

  Eigen::Index dim() const { return points_.rows(); }
  Eigen::Index size() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  auto point(Eigen::Index i) const { return points_.col(i); }
  double weight(Eigen::Index i) const { return weights_[i]; }

  double total_mass() const { return weights_.sum(); }
  bool is_probability(double tol = kProbabilityMassTol) const {
    return std::abs(total_mass() - 1.0) <= tol;
  }

  /// Index of the support point that coincides with `x` after quantization.
  std::optional<Eigen::Index> locate(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Same support, weights multiplied by `factor`.
  WeightedPoints scaled(double factor) const;

 private:
  struct Merged {};
  WeightedPoints(Merged, Eigen::MatrixXd points, Eigen::VectorXd weights,
                 std::shared_ptr<const QuantizedIndex> index);

  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
  std::shared_ptr<const QuantizedIndex> index_;
};

using FiniteMeasure = WeightedPoints<Sign::kNonNegative>;
using SignedFiniteMeasure = WeightedPoints<Sign::kSigned>;

extern template class WeightedPoints<Sign::kNonNegative>;
extern template class WeightedPoints<Sign::kSigned>;

/// Push-forward phi_* m. `phi` maps a point of R^m (as an Eigen vector) to a
/// point of R^k; images that coincide after quantization have their weights
/// summed, so total mass is preserved.
template <Sign S, class Map>
WeightedPoints<S> push_forward(const WeightedPoints<S>& m, Map&& phi) {
  if (m.size() == 0) return m;
  const Eigen::VectorXd first = phi(Eigen::VectorXd(m.point(0)));
  Eigen::MatrixXd images(first.size(), m.size());
  images.col(0) = first;
  for (Eigen::Index i = 1; i < m.size(); ++i) {
    const Eigen::VectorXd y = phi(Eigen::VectorXd(m.point(i)));
    if (y.size() != first.size())
      throw PreconditionError("push_forward: map changes output dimension between points");
    images.col(i) = y;
  }
  return WeightedPoints<S>(std::move(images), m.weights());
}

struct Moments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Mean and covariance of a probability measure.
Moments moments(const FiniteMeasure& p);

/// Pointwise density dA/dP on the support of P (0 where A has no mass).
/// Throws AbsoluteContinuityError when A charges a point P does not.
Eigen::VectorXd radon_nikodym(const SignedFiniteMeasure& a, const FiniteMeasure& p);

/// The signed measure f·P for per-point values f aligned with P's support.
SignedFiniteMeasure with_density(const FiniteMeasure& p, const Eigen::VectorXd& f);

SignedFiniteMeasure as_signed(const FiniteMeasure& p);

/// Marginal of `p` on one coordinate axis.
FiniteMeasure marginal(const FiniteMeasure& p, Eigen::Index axis);

/// The standard normal distribution on R^d, evaluated in closed form only.
class GaussianReference {
 public:
  explicit GaussianReference(Eigen::Index dim) : dim_(dim) {}
  Eigen::Index dim() const { return dim_; }

  /// Marginal CDF along any axis.
  static double cdf(double x);

  /// L2(Phi) norm of the linear function y -> c·y, which is |c|.
  double linear_l2_norm(const Eigen::VectorXd& c) const;

  /// E|c·Y| under Phi, i.e. |c| sqrt(2/pi).
  double linear_l1_norm(const Eigen::VectorXd& c) const;

 private:
  Eigen::Index dim_;
};

/// Statistical tangent vector (P, A): a probability measure and a signed
/// measure of total mass zero supported inside supp(P).
class TangentPair {
 public:
  TangentPair(FiniteMeasure base, SignedFiniteMeasure direction);

  const FiniteMeasure& base() const { return base_; }
  const SignedFiniteMeasure& direction() const { return direction_; }

  /// dA/dP on the support of P.
  Eigen::VectorXd score() const { return radon_nikodym(direction_, base_); }

 private:
  FiniteMeasure base_;
  SignedFiniteMeasure direction_;
};

}  // namespace infogeo
