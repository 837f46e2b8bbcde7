#include "infogeo/measures.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>

namespace infogeo {

namespace {

std::span<const double> column_span(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), static_cast<std::size_t>(m.rows())};
}

}  // namespace

template <Sign S>
WeightedPoints<S>::WeightedPoints(Eigen::MatrixXd points, Eigen::VectorXd weights) {
  if (points.cols() != weights.size())
    throw PreconditionError("measure: " + std::to_string(points.cols()) + " points but " +
                            std::to_string(weights.size()) + " weights");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) throw PreconditionError("measure: non-finite weight");
    if constexpr (S == Sign::kNonNegative) {
      if (weights[i] < 0.0) throw PreconditionError("measure: negative weight in a non-negative measure");
    }
  }
  if (!points.allFinite()) throw PreconditionError("measure: non-finite point coordinate");

  auto index = std::make_shared<QuantizedIndex>(quantization_steps(points),
                                                static_cast<std::size_t>(points.cols()));
  std::vector<Eigen::Index> representative;
  std::vector<double> merged;
  representative.reserve(static_cast<std::size_t>(points.cols()));
  merged.reserve(static_cast<std::size_t>(points.cols()));
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const auto [slot, inserted] = index->insert(column_span(points, i));
    if (inserted) {
      representative.push_back(i);
      merged.push_back(weights[i]);
    } else {
      merged[slot] += weights[i];
    }
  }

  if (static_cast<Eigen::Index>(representative.size()) == points.cols()) {
    points_ = std::move(points);
    weights_ = std::move(weights);
  } else {
    points_.resize(points.rows(), static_cast<Eigen::Index>(representative.size()));
    weights_.resize(static_cast<Eigen::Index>(merged.size()));
    for (std::size_t k = 0; k < representative.size(); ++k) {
      points_.col(static_cast<Eigen::Index>(k)) = points.col(representative[k]);
      weights_[static_cast<Eigen::Index>(k)] = merged[k];
    }
  }
  index_ = std::move(index);
}

template <Sign S>
WeightedPoints<S>::WeightedPoints(Merged, Eigen::MatrixXd points, Eigen::VectorXd weights,
                                  std::shared_ptr<const QuantizedIndex> index)
    : points_(std::move(points)), weights_(std::move(weights)), index_(std::move(index)) {}

template <Sign S>
WeightedPoints<S> WeightedPoints<S>::point_mass(const Eigen::VectorXd& x, double weight) {
  Eigen::MatrixXd pts(x.size(), 1);
  pts.col(0) = x;
  return WeightedPoints(std::move(pts), Eigen::VectorXd::Constant(1, weight));
}

template <Sign S>
std::optional<Eigen::Index> WeightedPoints<S>::locate(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (!index_ || x.size() != dim()) return std::nullopt;
  const Eigen::VectorXd copy = x;
  const auto found = index_->find({copy.data(), static_cast<std::size_t>(copy.size())});
  if (!found) return std::nullopt;
  return static_cast<Eigen::Index>(*found);
}

template <Sign S>
WeightedPoints<S> WeightedPoints<S>::scaled(double factor) const {
  if constexpr (S == Sign::kNonNegative) {
    if (factor < 0.0) throw PreconditionError("measure: negative scale for a non-negative measure");
  }
  return WeightedPoints(Merged{}, points_, weights_ * factor, index_);
}

template class WeightedPoints<Sign::kNonNegative>;
template class WeightedPoints<Sign::kSigned>;

Moments moments(const FiniteMeasure& p) {
  const double mass = p.total_mass();
  if (p.size() == 0 || !(mass > 0.0)) throw PreconditionError("moments: empty measure");
  Moments out;
  out.mean = p.points() * p.weights() / mass;
  const Eigen::MatrixXd centered = p.points().colwise() - out.mean;
  out.covariance = centered * p.weights().asDiagonal() * centered.transpose() / mass;
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

Eigen::VectorXd radon_nikodym(const SignedFiniteMeasure& a, const FiniteMeasure& p) {
  Eigen::VectorXd density = Eigen::VectorXd::Zero(p.size());
  if (a.size() > 0 && a.dim() != p.dim())
    throw AbsoluteContinuityError("radon_nikodym: measures live in different dimensions");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double wa = a.weight(i);
    const auto j = p.locate(a.point(i));
    if (!j) {
      if (wa != 0.0)
        throw AbsoluteContinuityError("radon_nikodym: signed measure charges a point outside supp(P)");
      continue;
    }
    const double wp = p.weight(*j);
    if (wp == 0.0) {
      if (wa != 0.0)
        throw AbsoluteContinuityError("radon_nikodym: signed measure charges a P-null point");
      continue;
    }
    density[*j] += wa / wp;
  }
  return density;
}

SignedFiniteMeasure with_density(const FiniteMeasure& p, const Eigen::VectorXd& f) {
  if (f.size() != p.size()) throw PreconditionError("with_density: values do not match support size");
  return SignedFiniteMeasure(p.points(), p.weights().cwiseProduct(f));
}

SignedFiniteMeasure as_signed(const FiniteMeasure& p) {
  return SignedFiniteMeasure(p.points(), p.weights());
}

FiniteMeasure marginal(const FiniteMeasure& p, Eigen::Index axis) {
  if (axis < 0 || axis >= p.dim()) throw PreconditionError("marginal: axis out of range");
  return FiniteMeasure(p.points().row(axis), p.weights());
}

double GaussianReference::cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double GaussianReference::linear_l2_norm(const Eigen::VectorXd& c) const {
  if (c.size() != dim_) throw PreconditionError("GaussianReference: dimension mismatch");
  return c.norm();
}

double GaussianReference::linear_l1_norm(const Eigen::VectorXd& c) const {
  return linear_l2_norm(c) * std::sqrt(2.0 / std::numbers::pi);
}

TangentPair::TangentPair(FiniteMeasure base, SignedFiniteMeasure direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  if (std::abs(direction_.total_mass()) > kTangentMassTol)
    throw PreconditionError("TangentPair: direction must have total mass zero");
  for (Eigen::Index i = 0; i < direction_.size(); ++i) {
    if (!base_.locate(direction_.point(i)))
      throw AbsoluteContinuityError("TangentPair: direction support not inside base support");
  }
}

}  // namespace infogeo
