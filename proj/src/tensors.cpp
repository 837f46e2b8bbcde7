#include "infogeo/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace infogeo {

namespace {

void require_order(int k, int minimum) {
  if (k < minimum)
    throw PreconditionError("tensor order must be at least " + std::to_string(minimum) + ", got " +
                            std::to_string(k));
}

std::vector<Eigen::VectorXd> repeated(const Eigen::VectorXd& a, int k) {
  return std::vector<Eigen::VectorXd>(static_cast<std::size_t>(k), a);
}

// All ways to split {0..k-1} into unordered pairs; empty for odd k.
using Matching = std::vector<std::pair<int, int>>;

void extend_matchings(std::vector<int>& free, Matching& current, std::vector<Matching>& out) {
  if (free.empty()) {
    out.push_back(current);
    return;
  }
  const int first = free.front();
  for (std::size_t j = 1; j < free.size(); ++j) {
    const int partner = free[j];
    std::vector<int> rest;
    for (std::size_t i = 1; i < free.size(); ++i)
      if (i != j) rest.push_back(free[i]);
    current.emplace_back(first, partner);
    extend_matchings(rest, current, out);
    current.pop_back();
  }
}

std::vector<Matching> perfect_matchings(int k) {
  std::vector<Matching> out;
  if (k % 2 != 0) return out;
  std::vector<int> free(static_cast<std::size_t>(k));
  std::iota(free.begin(), free.end(), 0);
  Matching current;
  extend_matchings(free, current, out);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double order_k_moment(const Eigen::VectorXd& weights, const Eigen::VectorXd& values, int k) {
  return weights.dot(values.array().pow(k).matrix());
}

}  // namespace

SymmetricTensorField::SymmetricTensorField(std::string label, int order, Eigen::Index dim,
                                           Evaluator eval)
    : label_(std::move(label)), order_(order), dim_(dim), eval_(std::move(eval)) {
  require_order(order_, 1);
}

double SymmetricTensorField::operator()(const Eigen::VectorXd& theta,
                                        std::span<const Eigen::VectorXd> dirs) const {
  if (static_cast<int>(dirs.size()) != order_)
    throw PreconditionError("tensor '" + label_ + "' takes " + std::to_string(order_) +
                            " directions, got " + std::to_string(dirs.size()));
  for (const auto& a : dirs)
    if (a.size() != dim_) throw PreconditionError("tensor '" + label_ + "': direction has wrong dimension");
  return eval_(theta, dirs);
}

double SymmetricTensorField::diagonal(const Eigen::VectorXd& theta, const Eigen::VectorXd& a) const {
  const auto dirs = repeated(a, order_);
  return (*this)(theta, dirs);
}

double amari_chentsov(const ExpFamily& family, const Eigen::VectorXd& theta,
                      std::span<const Eigen::VectorXd> dirs) {
  require_order(static_cast<int>(dirs.size()), 2);
  family.require_in_domain(theta);
  const Eigen::VectorXd p = density_weights(family, theta);
  const Eigen::VectorXd tau = mean_statistic(family, theta);
  const Eigen::MatrixXd centered = family.stat_values().colwise() - tau;
  Eigen::ArrayXd product = Eigen::ArrayXd::Ones(centered.cols());
  for (const auto& a : dirs) {
    if (a.size() != family.dim()) throw PreconditionError("amari_chentsov: direction has wrong dimension");
    product *= (centered.transpose() * a).array();
  }
  return p.dot(product.matrix());
}

double third_derivative_fd(const ExpFamily& family, const Eigen::VectorXd& theta,
                           const Eigen::VectorXd& a, double step) {
  const auto psi = [&](double t) { return log_partition(family, theta + t * a); };
  return (psi(2 * step) - 2 * psi(step) + 2 * psi(-step) - psi(-2 * step)) / (2 * step * step * step);
}

ScalingReport higher_scaling_check(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& a, int n, int k) {
  return higher_scaling_check(family, theta, a, n, k, nef_distribution(family, theta, n));
}

ScalingReport higher_scaling_check(const ExpFamily& family, const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& a, int n, int k, const FiniteMeasure& qn) {
  require_order(k, 2);
  const TangentCoord u{theta, a};
  const TangentPair on_n = nef_tangent(family, u, n, qn);
  const TangentPair on_1 = nef_tangent(family, u, 1, nef_base(family, theta));

  ScalingReport out;
  out.lhs = order_k_moment(on_n.base().weights(), on_n.score(), k);
  out.rhs = order_k_moment(on_1.base().weights(), on_1.score(), k);
  out.residual = std::abs(out.lhs - std::pow(static_cast<double>(n), 0.5 * k) * out.rhs);
  const double ratio = out.lhs / out.rhs;
  out.exponent = n > 1 && ratio > 0.0 ? std::log(ratio) / std::log(static_cast<double>(n))
                                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double symmetric_power_eval(const ExpFamily& family, const Eigen::VectorXd& theta,
                            std::span<const Eigen::VectorXd> dirs, double c_prime) {
  if (dirs.size() != 4) throw PreconditionError("symmetric_power_eval takes exactly four directions");
  const Eigen::MatrixXd g = fisher_information(family, theta, FisherRoute::kCovariance);
  const auto G = [&](int i, int j) { return dirs[i].dot(g * dirs[j]); };
  return c_prime * (G(0, 1) * G(2, 3) + G(0, 2) * G(1, 3) + G(0, 3) * G(1, 2));
}

double polarize_symmetric(const std::function<double(const Eigen::VectorXd&)>& diagonal,
                          std::span<const Eigen::VectorXd> dirs) {
  const int k = static_cast<int>(dirs.size());
  require_order(k, 1);
  if (k > 20) throw PreconditionError("polarize_symmetric: order too large");
  double total = 0.0;
  Eigen::VectorXd sum(dirs.front().size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    sum.setZero();
    int size = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        sum += dirs[i];
        ++size;
      }
    }
    total += ((k - size) % 2 == 0 ? 1.0 : -1.0) * diagonal(sum);
  }
  return total / factorial(k);
}

OddVanishing odd_k_vanishing_check(const SymmetricTensorField& field, const ExpFamily& family,
                                   const Eigen::VectorXd& theta, const Eigen::VectorXd& a,
                                   std::optional<double> c) {
  const int k = field.order();
  if (k % 2 == 0) throw PreconditionError("odd_k_vanishing_check: order must be odd");
  const double plus = field.diagonal(theta, a);
  const double minus = field.diagonal(theta, -a);
  OddVanishing out;
  out.value = std::abs(plus);
  out.antisymmetry = std::abs(plus + minus) / 2.0;
  if (c) {
    const double g = a.dot(cov_statistic(family, theta) * a);
    out.hypothesis = std::abs(plus - std::pow(*c, k) * std::pow(g, 0.5 * k));
  }
  out.residual = std::max({out.value, out.antisymmetry, out.hypothesis});
  return out;
}

double permutation_defect(const SymmetricTensorField& field, const Eigen::VectorXd& theta,
                          std::span<const Eigen::VectorXd> dirs) {
  const double reference = field(theta, dirs);
  std::vector<std::size_t> order(dirs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Eigen::VectorXd> permuted(dirs.size());
  double worst = 0.0;
  while (std::next_permutation(order.begin(), order.end())) {
    for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = dirs[order[i]];
    worst = std::max(worst, std::abs(field(theta, permuted) - reference));
  }
  return worst;
}

SymmetricTensorField amari_chentsov_field(const ExpFamily& family, int order) {
  require_order(order, 2);
  return SymmetricTensorField(
      "amari_chentsov(" + std::to_string(order) + ")", order, family.dim(),
      [family](const Eigen::VectorXd& theta, std::span<const Eigen::VectorXd> dirs) {
        return amari_chentsov(family, theta, dirs);
      });
}

SymmetricTensorField invariant_power_field(const ExpFamily& family, int order, double c) {
  require_order(order, 1);
  if (order % 2 != 0) return zero_tensor_field(family.dim(), order);
  return SymmetricTensorField(
      "invariant_power(" + std::to_string(order) + ")", order, family.dim(),
      [family, c, matchings = perfect_matchings(order)](const Eigen::VectorXd& theta,
                                                        std::span<const Eigen::VectorXd> dirs) {
        const Eigen::MatrixXd g = cov_statistic(family, theta);
        double total = 0.0;
        for (const Matching& m : matchings) {
          double term = 1.0;
          for (const auto& [i, j] : m) term *= dirs[i].dot(g * dirs[j]);
          total += term;
        }
        return c * total;
      });
}

SymmetricTensorField zero_tensor_field(Eigen::Index dim, int order) {
  return SymmetricTensorField("zero(" + std::to_string(order) + ")", order, dim,
                              [](const Eigen::VectorXd&, std::span<const Eigen::VectorXd>) { return 0.0; });
}

}  // namespace infogeo
