#include "infogeo/invariance.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace infogeo {

namespace {

constexpr double kFormMatchTol = 1e-12;
constexpr double kReflectionFloor = 1e-12;
constexpr int kMaxProductOrder = 3;

Eigen::VectorXd default_a(Eigen::Index d) { return Eigen::VectorXd::Ones(d); }

Eigen::VectorXd default_b(Eigen::Index d) {
  Eigen::VectorXd b(d);
  for (Eigen::Index i = 0; i < d; ++i) b[i] = i % 2 == 0 ? 1.0 : -1.0;
  return b;
}

// A fixed, non-orthogonal, non-trivial affine map used by the A3-affine row.
AffineMap probe_map(Eigen::Index d) {
  Eigen::MatrixXd m = 1.5 * Eigen::MatrixXd::Identity(d, d);
  m.triangularView<Eigen::StrictlyUpper>().setConstant(0.3);
  Eigen::VectorXd c(d);
  for (Eigen::Index i = 0; i < d; ++i) c[i] = i % 2 == 0 ? 0.7 : -0.2;
  return {m, c};
}

// Score of the product model in direction a: d/dt log p^(n)_{theta + t a}.
Eigen::VectorXd product_scores(const ProductModel& product, const Eigen::VectorXd& tau,
                               const Eigen::VectorXd& a, int n) {
  return n * ((product.mean_statistic.transpose() * a).array() - tau.dot(a));
}

}  // namespace

double default_tolerance(const ExpFamily& family) {
  return family.is_quadrature() ? kQuadratureTolerance : kDiscreteTolerance;
}

std::string_view axiom_label(Axiom axiom) {
  switch (axiom) {
    case Axiom::kA1: return "A1";
    case Axiom::kA2: return "A2";
    case Axiom::kA3Constancy: return "A3-constancy";
    case Axiom::kA3Affine: return "A3-affine";
  }
  return "?";
}

AxiomReport make_report(Axiom axiom, const ExpFamily& family, const Eigen::VectorXd& theta,
                        std::vector<int> n_values, double residual, double tolerance) {
  AxiomReport report{axiom, family.name(), theta, std::move(n_values)};
  report.residual = std::abs(residual);
  report.tolerance = tolerance;
  report.pass = std::isfinite(report.residual) && report.residual <= tolerance;
  return report;
}

AxiomReport check_A1(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     std::optional<double> tolerance) {
  require_same_base(u, v);
  const Eigen::VectorXd& theta = u.theta;
  const double extended = u.a.dot(iid_fisher(family, theta, n) * v.a);
  const double scaled = n * u.a.dot(cov_statistic(family, theta) * v.a);
  double residual = std::abs(extended - scaled);

  bool product_checked = false;
  if (n <= kMaxProductOrder &&
      std::pow(static_cast<double>(family.base().size()), n) <= static_cast<double>(kDefaultSupportCap)) {
    const ProductModel product = iid_product(family, theta, n);
    const Eigen::VectorXd tau = mean_statistic(family, theta);
    const Eigen::VectorXd su = product_scores(product, tau, u.a, n);
    const Eigen::VectorXd sv = product_scores(product, tau, v.a, n);
    const double from_product = product.measure.weights().dot(su.cwiseProduct(sv));
    residual = std::max(residual, std::abs(from_product - scaled));
    product_checked = true;
  }
  AxiomReport report = make_report(Axiom::kA1, family, theta, {n}, residual,
                                   tolerance.value_or(default_tolerance(family)));
  report.product_checked = product_checked;
  return report;
}

AxiomReport check_A2(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     std::optional<double> tolerance) {
  return check_A2(family, u, v, n, nef_distribution(family, u.theta, n), tolerance);
}

AxiomReport check_A2(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     const FiniteMeasure& qn, std::optional<double> tolerance) {
  require_same_base(u, v);
  const double on_natural_family =
      invariant_fisher_form(nef_tangent(family, u, n, qn), nef_tangent(family, v, n, qn));
  const double on_extension = u.a.dot(iid_fisher(family, u.theta, n) * v.a);
  return make_report(Axiom::kA2, family, u.theta, {n}, on_natural_family - on_extension,
                     tolerance.value_or(default_tolerance(family)));
}

double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n) {
  return claim1_pipeline(family, u, n, fisher_norm_functional());
}

double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n,
                       const NormFunctional& functional) {
  return claim1_pipeline(family, u, n, functional, nef_distribution(family, u.theta, n));
}

double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n,
                       const NormFunctional& functional, const FiniteMeasure& qn) {
  const TangentPair tangent = nef_tangent(family, u, n, qn);
  const AffineMap standardizer = standardizing_map(family, u.theta, n);
  const TangentPair pushed = affine_pushforward_pair(standardizer, tangent);
  // n^{-1/2} L_** u_n = (L_* Q_n, f L_* Q_n)
  const Eigen::VectorXd f = pushed.score() / std::sqrt(static_cast<double>(n));
  return functional(pushed.base(), f);
}

double claim1_target(const ExpFamily& family, const TangentCoord& u) {
  return (spd_sqrt(cov_statistic(family, u.theta)) * u.a).norm();
}

double ks_to_normal(const FiniteMeasure& marginal_1d) {
  if (marginal_1d.dim() != 1) throw PreconditionError("ks_to_normal: measure must be one-dimensional");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(marginal_1d.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return marginal_1d.point(i)[0] < marginal_1d.point(j)[0];
  });
  double cumulative = 0.0;
  double worst = 0.0;
  for (Eigen::Index i : order) {
    const double phi = GaussianReference::cdf(marginal_1d.point(i)[0]);
    worst = std::max(worst, std::abs(cumulative - phi));
    cumulative += marginal_1d.weight(i);
    worst = std::max(worst, std::abs(cumulative - phi));
  }
  return worst;
}

CltDiagnostics clt_diagnostics(const ExpFamily& family, const Eigen::VectorXd& theta, int n) {
  return clt_diagnostics(family, theta, n, nef_distribution(family, theta, n));
}

CltDiagnostics clt_diagnostics(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                               const FiniteMeasure& qn) {
  const FiniteMeasure standardized = push_forward(qn, standardizing_map(family, theta, n));
  CltDiagnostics out;
  for (Eigen::Index axis = 0; axis < standardized.dim(); ++axis) {
    const FiniteMeasure m = marginal(standardized, axis);
    const Eigen::ArrayXd y = m.points().row(0).transpose().array();
    const Eigen::ArrayXd w = m.weights().array();
    const double mean = (w * y).sum();
    const Eigen::ArrayXd c = y - mean;
    const double var = (w * c.square()).sum();
    const double skew = (w * c.cube()).sum() / std::pow(var, 1.5);
    const double kurt = (w * c.square().square()).sum() / (var * var);
    out.moment_gap = std::max({out.moment_gap, std::abs(skew), std::abs(kurt - 3.0)});
    out.ks_max = std::max(out.ks_max, ks_to_normal(m));
  }
  return out;
}

Eigen::MatrixXd orthogonal_map(const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  const Eigen::Index d = x.size();
  const Eigen::VectorXd v = z - x;
  const double len = v.norm();
  if (len <= kReflectionFloor) return Eigen::MatrixXd::Identity(d, d);
  return Eigen::MatrixXd::Identity(d, d) - 2.0 * v * v.transpose() / (len * len);
}

RotationCheck claim2_rotation_check(const ExpFamily& family, const TangentCoord& u,
                                    const TangentCoord& v) {
  const Eigen::MatrixXd sigma_u = cov_statistic(family, u.theta);
  const Eigen::MatrixXd sigma_v = cov_statistic(family, v.theta);
  const double form_u = u.a.dot(sigma_u * u.a);
  const double form_v = v.a.dot(sigma_v * v.a);
  if (!(std::abs(form_u - form_v) < kFormMatchTol))
    throw PreconditionError("claim2: Fisher forms differ (" + std::to_string(form_u) + " vs " +
                            std::to_string(form_v) + ")");
  const Eigen::VectorXd x = spd_sqrt(sigma_u) * u.a;
  const Eigen::VectorXd z = spd_sqrt(sigma_v) * v.a;
  RotationCheck out;
  out.rotation = orthogonal_map(x, z);
  const Eigen::Index d = x.size();
  out.orthogonality =
      (out.rotation.transpose() * out.rotation - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  // e = f o M^{-1}: y -> x·M^{-1} y, so its coefficient vector is M^{-T} x.
  const Eigen::VectorXd e = out.rotation.inverse().transpose() * x;
  const GaussianReference phi(d);
  const NormFunctional fisher = fisher_norm_functional();
  out.residual = std::abs(fisher(phi, LinearFunction{e}) - fisher(phi, LinearFunction{x}));
  out.mapping_residual = (e - z).cwiseAbs().maxCoeff();
  return out;
}

TangentCoord match_fisher_form(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v) {
  const double form_u = u.a.dot(cov_statistic(family, u.theta) * u.a);
  const double form_v = v.a.dot(cov_statistic(family, v.theta) * v.a);
  if (!(form_v > 0.0)) throw PreconditionError("match_fisher_form: zero direction cannot be rescaled");
  return {v.theta, std::sqrt(form_u / form_v) * v.a};
}

double uniqueness_residual(const NormFunctional& candidate, const ExpFamily& family,
                           const TangentCoord& u, int n1, int n2) {
  if (n1 == n2) throw PreconditionError("uniqueness_residual: n1 and n2 must differ");
  return std::abs(claim1_pipeline(family, u, n1, candidate) - claim1_pipeline(family, u, n2, candidate));
}

ConstantEstimate recover_constant(const MetricField& metric, const ExpFamily& family, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("recover_constant: need at least one trial");
  const std::vector<Eigen::VectorXd> grid = family.domain().grid();
  const MetricField fisher = fisher_field(family);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::normal_distribution<double> gauss;

  ConstantEstimate out;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd& theta = grid[pick(rng)];
    Eigen::VectorXd a(family.dim());
    do {
      for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = gauss(rng);
    } while (a.norm() == 0.0);
    a.normalize();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric(theta), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= kRankFloor)
      throw RankError("recover_constant: metric '" + metric.label() + "' is degenerate");
    const TangentCoord u{theta, a};
    out.ratios.push_back(norm_of_tangent(metric, u) / norm_of_tangent(fisher, u));
  }
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  out.spread = *hi - *lo;
  out.c_hat = std::accumulate(out.ratios.begin(), out.ratios.end(), 0.0) / trials;
  return out;
}

std::vector<AxiomReport> run_invariance_suite(const ExpFamily& family,
                                              const std::vector<Eigen::VectorXd>& thetas,
                                              const std::vector<int>& ns,
                                              const SuiteOptions& options) {
  const Eigen::Index d = family.dim();
  const Eigen::VectorXd a = options.a.value_or(default_a(d));
  const Eigen::VectorXd b = options.b.value_or(default_b(d));
  const double tol = options.tolerance.value_or(default_tolerance(family));
  const NormFunctional fisher = fisher_norm_functional();
  const AffineMap probe = probe_map(d);

  std::vector<AxiomReport> rows;
  for (const Eigen::VectorXd& theta : thetas) {
    const TangentCoord u{theta, a};
    const TangentCoord v{theta, b};
    const std::vector<FiniteMeasure> qs = nef_distributions(family, theta, ns);
    const double target = claim1_target(family, u);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const int n = ns[k];
      rows.push_back(check_A1(family, u, v, n, tol));
      rows.push_back(check_A2(family, u, v, n, qs[k], tol));
      rows.push_back(make_report(Axiom::kA3Constancy, family, theta, {n},
                                 claim1_pipeline(family, u, n, fisher, qs[k]) - target, tol));
      const TangentPair tangent = nef_tangent(family, u, n, qs[k]);
      rows.push_back(make_report(Axiom::kA3Affine, family, theta, {n},
                                 fisher(affine_pushforward_pair(probe, tangent)) - fisher(tangent), tol));
    }
  }
  return rows;
}

}  // namespace infogeo
