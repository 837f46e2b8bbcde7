#include "infogeo/derived.hpp"
#include "infogeo/measures.hpp"
#include "infogeo/quadrature.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace infogeo {
namespace {

using testing::vec;

FiniteMeasure three_points() {
  Eigen::MatrixXd pts(1, 3);
  pts << -1.0, 0.0, 1.0;
  return FiniteMeasure(pts, vec({0.25, 0.5, 0.25}));
}

TEST(FiniteMeasure, MergesCoincidentPoints) {
  Eigen::MatrixXd pts(2, 4);
  pts << 0, 1, 0, 1,
         0, 0, 0, 2;
  const FiniteMeasure m(pts, vec({0.1, 0.2, 0.3, 0.4}));
  ASSERT_EQ(m.size(), 3);
  EXPECT_DOUBLE_EQ(m.weight(0), 0.4);
  EXPECT_DOUBLE_EQ(m.total_mass(), 1.0);
  EXPECT_TRUE(m.is_probability());
}

TEST(FiniteMeasure, MergesRoundingNoise) {
  const double h = 0.1;
  Eigen::MatrixXd pts(1, 3);
  pts << 3 * h - h - 2 * h, 0.0, 1.0;
  const FiniteMeasure m(pts, vec({0.5, 0.25, 0.25}));
  EXPECT_EQ(m.size(), 2);
  ASSERT_TRUE(m.locate(vec({0.0})).has_value());
  EXPECT_DOUBLE_EQ(m.weight(*m.locate(vec({0.0}))), 0.75);
}

TEST(FiniteMeasure, RejectsBadInput) {
  Eigen::MatrixXd pts(1, 2);
  pts << 0, 1;
  EXPECT_THROW(FiniteMeasure(pts, vec({0.5, -0.1})), PreconditionError);
  EXPECT_THROW(FiniteMeasure(pts, vec({0.5})), PreconditionError);
  EXPECT_THROW(FiniteMeasure(pts, vec({0.5, NAN})), PreconditionError);
  pts(0, 1) = INFINITY;
  EXPECT_THROW(FiniteMeasure(pts, vec({0.5, 0.5})), PreconditionError);
  // Signed measures accept negative weights.
  pts(0, 1) = 1.0;
  EXPECT_NO_THROW(SignedFiniteMeasure(pts, vec({0.5, -0.5})));
}

TEST(FiniteMeasure, PointMassAndScaling) {
  const FiniteMeasure delta = FiniteMeasure::point_mass(vec({2.0, 3.0}), 0.5);
  EXPECT_EQ(delta.size(), 1);
  EXPECT_EQ(delta.dim(), 2);
  EXPECT_DOUBLE_EQ(delta.scaled(4.0).total_mass(), 2.0);
  EXPECT_THROW(delta.scaled(-1.0), PreconditionError);
}

TEST(PushForward, MergesCollisions) {
  const FiniteMeasure m = three_points();
  const FiniteMeasure sq = push_forward(m, [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x.cwiseAbs2();
  });
  ASSERT_EQ(sq.size(), 2);
  EXPECT_DOUBLE_EQ(sq.weight(*sq.locate(vec({1.0}))), 0.5);
  EXPECT_DOUBLE_EQ(sq.weight(*sq.locate(vec({0.0}))), 0.5);
}

TEST(PushForward, AffineMapPreservesMassAndMovesMean) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index d = 1 + trial % 3;
    const int count = 2 + trial % 7;
    Eigen::MatrixXd pts(d, count);
    Eigen::VectorXd w(count);
    for (int j = 0; j < count; ++j) {
      pts.col(j) = testing::gaussian_vector(rng, d);
      w[j] = testing::uniform(rng, 0.1, 1.0);
    }
    const FiniteMeasure m(pts, w / w.sum());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d) + 0.3 * Eigen::MatrixXd::Ones(d, d);
    const AffineMap L(a, testing::gaussian_vector(rng, d));
    const FiniteMeasure image = push_forward(m, L);
    EXPECT_NEAR(image.total_mass(), 1.0, 1e-14);
    const Moments before = moments(m);
    const Moments after = moments(image);
    EXPECT_LT((after.mean - L(before.mean)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((after.covariance - a * before.covariance * a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Moments, MatchesHandComputation) {
  const Moments mo = moments(three_points());
  EXPECT_DOUBLE_EQ(mo.mean[0], 0.0);
  EXPECT_DOUBLE_EQ(mo.covariance(0, 0), 0.5);
}

TEST(RadonNikodym, RecoversDensity) {
  const FiniteMeasure p = three_points();
  const Eigen::VectorXd f = vec({-2.0, 0.0, 2.0});
  const Eigen::VectorXd back = radon_nikodym(with_density(p, f), p);
  EXPECT_LT((back - f).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RadonNikodym, RejectsMassOutsideSupport) {
  const FiniteMeasure p = three_points();
  Eigen::MatrixXd pts(1, 2);
  pts << 0.0, 5.0;
  EXPECT_THROW(radon_nikodym(SignedFiniteMeasure(pts, vec({1.0, -1.0})), p), AbsoluteContinuityError);

  Eigen::MatrixXd p_pts(1, 2);
  p_pts << 0.0, 5.0;
  const FiniteMeasure with_null(p_pts, vec({1.0, 0.0}));
  EXPECT_THROW(radon_nikodym(SignedFiniteMeasure(pts, vec({1.0, -1.0})), with_null), AbsoluteContinuityError);
}

TEST(Marginal, SumsOverOtherAxes) {
  Eigen::MatrixXd pts(2, 3);
  pts << 0, 0, 1,
         0, 1, 0;
  const FiniteMeasure m(pts, vec({0.2, 0.3, 0.5}));
  const FiniteMeasure first = marginal(m, 0);
  ASSERT_EQ(first.size(), 2);
  EXPECT_DOUBLE_EQ(first.weight(*first.locate(vec({0.0}))), 0.5);
  EXPECT_THROW(marginal(m, 2), PreconditionError);
}

TEST(GaussianReference, ClosedForms) {
  EXPECT_DOUBLE_EQ(GaussianReference::cdf(0.0), 0.5);
  EXPECT_NEAR(GaussianReference::cdf(1.959963984540054), 0.975, 1e-15);
  const GaussianReference phi(2);
  EXPECT_DOUBLE_EQ(phi.linear_l2_norm(vec({3.0, 4.0})), 5.0);
  EXPECT_NEAR(phi.linear_l1_norm(vec({3.0, 4.0})), 5.0 * std::sqrt(2.0 / M_PI), 1e-15);
}

TEST(TangentPair, ValidatesDirection) {
  const FiniteMeasure p = three_points();
  EXPECT_NO_THROW(TangentPair(p, with_density(p, vec({-1.0, 0.0, 1.0}))));
  EXPECT_THROW(TangentPair(p, with_density(p, vec({1.0, 1.0, 1.0}))), PreconditionError);
  Eigen::MatrixXd outside(1, 2);
  outside << 0.0, 7.0;
  EXPECT_THROW(TangentPair(p, SignedFiniteMeasure(outside, vec({0.5, -0.5}))), AbsoluteContinuityError);
}

TEST(TangentPair, ScoreIntegratesToZero) {
  std::mt19937_64 rng(11);
  const FiniteMeasure p = three_points();
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd f = testing::gaussian_vector(rng, 3);
    f.array() -= p.weights().dot(f);
    const TangentPair u(p, with_density(p, f));
    EXPECT_NEAR(p.weights().dot(u.score()), 0.0, 1e-14);
  }
}

TEST(Quadrature, IntegratesPolynomialsExactly) {
  const QuadratureRule gh = gauss_hermite(10);
  // int x^4 exp(-x^2) dx = 3 sqrt(pi) / 4
  EXPECT_NEAR(gh.weights.dot(gh.nodes.array().pow(4).matrix()), 0.75 * std::sqrt(M_PI), 1e-13);
  const QuadratureRule gl = gauss_legendre(6);
  EXPECT_NEAR(gl.weights.sum(), 2.0, 1e-14);
  EXPECT_NEAR(gl.weights.dot(gl.nodes.array().pow(10).matrix()), 2.0 / 11.0, 1e-14);
  const QuadratureRule tr = trapezoid(0.0, 1.0, 11);
  EXPECT_NEAR(tr.weights.dot(tr.nodes), 0.5, 1e-15);
  EXPECT_THROW(gauss_hermite(0), BadParamError);
}

}  // namespace
}  // namespace infogeo
