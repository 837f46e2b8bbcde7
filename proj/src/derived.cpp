#include "infogeo/derived.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace infogeo {

namespace {

void require_positive_n(int n) {
  if (n < 1) throw PreconditionError("sample size n must be at least 1, got " + std::to_string(n));
}

Eigen::MatrixXd spd_function(const Eigen::MatrixXd& sigma, double power) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sigma + sigma.transpose()));
  const Eigen::VectorXd& eig = solver.eigenvalues();
  if (eig.minCoeff() < kRankFloor)
    throw RankError("matrix is not positive definite (smallest eigenvalue " +
                    std::to_string(eig.minCoeff()) + ")");
  const Eigen::VectorXd scaled = eig.cwiseMax(kRankFloor).array().pow(power);
  return solver.eigenvectors() * scaled.asDiagonal() * solver.eigenvectors().transpose();
}

FiniteMeasure scale_points(const FiniteMeasure& m, double factor) {
  return FiniteMeasure(m.points() * factor, m.weights());
}

}  // namespace

AffineMap::AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != offset_.size())
    throw PreconditionError("AffineMap: matrix must be square and match the offset");
  if (!(std::abs(matrix_.determinant()) > kInvertibleDetFloor))
    throw PreconditionError("AffineMap: matrix is not invertible");
}

AffineMap AffineMap::identity(Eigen::Index dim) {
  return {Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim)};
}

AffineMap AffineMap::inverse() const {
  const Eigen::MatrixXd inv = matrix_.inverse();
  return {inv, -inv * offset_};
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& sigma) { return spd_function(sigma, 0.5); }

Eigen::MatrixXd spd_inverse_sqrt(const Eigen::MatrixXd& sigma) { return spd_function(sigma, -0.5); }

FiniteMeasure convolve_sum(const FiniteMeasure& a, const FiniteMeasure& b, std::size_t support_cap) {
  if (a.dim() != b.dim()) throw PreconditionError("convolve_sum: dimension mismatch");
  const Eigen::Index d = a.dim();
  Eigen::VectorXd steps(d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const double scale = a.points().row(r).cwiseAbs().maxCoeff() + b.points().row(r).cwiseAbs().maxCoeff();
    steps[r] = quantization_step(scale);
  }
  QuantizedIndex index(steps, static_cast<std::size_t>(a.size() + b.size()));
  std::vector<double> coords;
  std::vector<double> weights;
  Eigen::VectorXd sum(d);
  const std::span<const double> sum_view(sum.data(), static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double wa = a.weight(i);
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      sum = a.point(i) + b.point(j);
      const auto [slot, inserted] = index.insert(sum_view);
      if (inserted) {
        if (index.size() > support_cap)
          throw SupportBlowupError("convolution support exceeds the cap of " +
                                   std::to_string(support_cap) + " points");
        coords.insert(coords.end(), sum.data(), sum.data() + d);
        weights.push_back(wa * b.weight(j));
      } else {
        weights[slot] += wa * b.weight(j);
      }
    }
  }
  const auto count = static_cast<Eigen::Index>(weights.size());
  Eigen::MatrixXd points = Eigen::Map<const Eigen::MatrixXd>(coords.data(), d, count);
  return FiniteMeasure(std::move(points), Eigen::Map<const Eigen::VectorXd>(weights.data(), count));
}

FiniteMeasure nef_base(const ExpFamily& family, const Eigen::VectorXd& theta) {
  // T_* P_theta: the statistic values carry the density weights; coinciding
  // values are merged by the measure constructor.
  return FiniteMeasure(family.stat_values(), density_weights(family, theta));
}

FiniteMeasure nef_distribution(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                               std::size_t support_cap) {
  const int ns[] = {n};
  return nef_distributions(family, theta, ns, support_cap).front();
}

std::vector<FiniteMeasure> nef_distributions(const ExpFamily& family, const Eigen::VectorXd& theta,
                                             std::span<const int> ns, std::size_t support_cap) {
  for (int n : ns) require_positive_n(n);
  std::vector<FiniteMeasure> out(ns.size());
  if (ns.empty()) return out;
  const FiniteMeasure q1 = nef_base(family, theta);
  if (q1.size() > static_cast<Eigen::Index>(support_cap))
    throw SupportBlowupError("Q_1 support exceeds the cap");

  std::map<int, std::vector<std::size_t>> wanted;
  for (std::size_t k = 0; k < ns.size(); ++k) wanted[ns[k]].push_back(k);

  FiniteMeasure sum = q1;  // law of Y_1 + ... + Y_count
  int count = 1;
  for (const auto& [n, slots] : wanted) {
    for (; count < n; ++count) sum = convolve_sum(sum, q1, support_cap);
    const FiniteMeasure qn = n == 1 ? q1 : scale_points(sum, 1.0 / n);
    for (std::size_t slot : slots) out[slot] = qn;
  }
  return out;
}

TangentPair nef_tangent(const ExpFamily& family, const TangentCoord& u, int n) {
  return nef_tangent(family, u, n, nef_distribution(family, u.theta, n));
}

TangentPair nef_tangent(const ExpFamily& family, const TangentCoord& u, int n,
                        const FiniteMeasure& qn) {
  require_positive_n(n);
  if (u.a.size() != family.dim()) throw PreconditionError("nef_tangent: direction has wrong dimension");
  const Eigen::VectorXd tau = mean_statistic(family, u.theta);
  const Eigen::VectorXd score = n * ((qn.points().transpose() * u.a).array() - tau.dot(u.a));
  return TangentPair(qn, with_density(qn, score));
}

AffineMap standardizing_map(const ExpFamily& family, const Eigen::VectorXd& theta, int n) {
  require_positive_n(n);
  const Eigen::MatrixXd m = std::sqrt(static_cast<double>(n)) * spd_inverse_sqrt(cov_statistic(family, theta));
  const Eigen::VectorXd tau = mean_statistic(family, theta);
  return {m, -m * tau};
}

TangentPair affine_pushforward_pair(const AffineMap& map, const TangentPair& pair) {
  return TangentPair(push_forward(pair.base(), map), push_forward(pair.direction(), map));
}

Eigen::MatrixXd iid_fisher(const ExpFamily& family, const Eigen::VectorXd& theta, int n) {
  require_positive_n(n);
  return n * cov_statistic(family, theta);
}

ProductModel iid_product(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                         std::size_t support_cap) {
  require_positive_n(n);
  const FiniteMeasure p = density_measure(family, theta);
  const Eigen::Index base_size = p.size();
  const double total = std::pow(static_cast<double>(base_size), n);
  if (total > static_cast<double>(support_cap))
    throw SupportBlowupError("product measure on X^" + std::to_string(n) + " would have " +
                             std::to_string(static_cast<long long>(total)) + " points");
  const auto count = static_cast<Eigen::Index>(total);
  const Eigen::Index m = p.dim();
  const Eigen::Index d = family.dim();
  Eigen::MatrixXd points(m * n, count);
  Eigen::VectorXd weights(count);
  Eigen::MatrixXd stats(d, count);
  std::vector<Eigen::Index> digits(static_cast<std::size_t>(n), 0);
  for (Eigen::Index k = 0; k < count; ++k) {
    double w = 1.0;
    Eigen::VectorXd t = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < n; ++j) {
      const Eigen::Index i = digits[static_cast<std::size_t>(j)];
      points.block(j * m, k, m, 1) = p.point(i);
      w *= p.weight(i);
      t += family.stat_values().col(i);
    }
    weights[k] = w;
    stats.col(k) = t / n;
    for (int j = n - 1; j >= 0; --j) {  // odometer increment
      auto& digit = digits[static_cast<std::size_t>(j)];
      if (++digit < base_size) break;
      digit = 0;
    }
  }
  FiniteMeasure measure(std::move(points), std::move(weights));
  if (measure.size() != count) throw PreconditionError("iid_product: product points collided");
  return {std::move(measure), std::move(stats)};
}

}  // namespace infogeo
