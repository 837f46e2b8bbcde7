#pragma once

#include <Eigen/Core>

namespace infogeo {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss–Hermite rule for the weight exp(-x^2) (Golub–Welsch).
QuadratureRule gauss_hermite(int count);

/// Gauss–Legendre rule on [-1, 1] (Golub–Welsch).
QuadratureRule gauss_legendre(int count);

/// Composite trapezoid rule on `count` equispaced nodes covering [lo, hi].
QuadratureRule trapezoid(double lo, double hi, int count);

}  // namespace infogeo
