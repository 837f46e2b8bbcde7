#pragma once

#include "infogeo/derived.hpp"
#include "infogeo/expfam.hpp"
#include "infogeo/geometry.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infogeo {

/// Identity-check tolerance for discrete families.
inline constexpr double kDiscreteTolerance = 1e-9;
/// Identity-check tolerance where quadrature families participate.
inline constexpr double kQuadratureTolerance = 1e-6;

double default_tolerance(const ExpFamily& family);

enum class Axiom { kA1, kA2, kA3Constancy, kA3Affine };

std::string_view axiom_label(Axiom axiom);

/// One checked instance of an invariance axiom.
struct AxiomReport {
  Axiom axiom;
  std::string family;
  Eigen::VectorXd theta;
  std::vector<int> n_values;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// A1 only: the product-measure score integral was also evaluated.
  bool product_checked = false;
};

AxiomReport make_report(Axiom axiom, const ExpFamily& family, const Eigen::VectorXd& theta,
                        std::vector<int> n_values, double residual, double tolerance);

/// A1: a^T (n-fold IID Fisher) b against n a^T Sigma b. For n <= 3 the left
/// side is recomputed from the materialized product measure P^n when its
/// support fits under the cap.
AxiomReport check_A1(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     std::optional<double> tolerance = std::nullopt);

/// A2: the invariant form on N_n, integral of (dA_n/dQ_n)(dB_n/dQ_n) dQ_n,
/// against the IID Fisher metric.
AxiomReport check_A2(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     std::optional<double> tolerance = std::nullopt);
AxiomReport check_A2(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v, int n,
                     const FiniteMeasure& qn, std::optional<double> tolerance = std::nullopt);

/// H(L_* Q_n, f L_* Q_n) with f(y) = (Sigma^{1/2} a)·y, computed along the
/// proof: push (Q_n, A_n) through the standardizer L, rescale by n^{-1/2},
/// and read f off as the Radon–Nikodym derivative.
double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n);
double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n,
                       const NormFunctional& functional);
double claim1_pipeline(const ExpFamily& family, const TangentCoord& u, int n,
                       const NormFunctional& functional, const FiniteMeasure& qn);

/// |Sigma_theta^{1/2} a|, the value every Claim 1 pipeline must return.
double claim1_target(const ExpFamily& family, const TangentCoord& u);

struct CltDiagnostics {
  double moment_gap = 0.0;  ///< max |skewness|, |kurtosis - 3| over axes
  double ks_max = 0.0;      ///< max over axes of sup |F - Phi|
};

/// Kolmogorov–Smirnov distance between a one-dimensional finite measure and
/// the standard normal CDF, taking both sides of every jump.
double ks_to_normal(const FiniteMeasure& marginal_1d);

CltDiagnostics clt_diagnostics(const ExpFamily& family, const Eigen::VectorXd& theta, int n);
CltDiagnostics clt_diagnostics(const ExpFamily& family, const Eigen::VectorXd& theta, int n,
                               const FiniteMeasure& qn);

struct RotationCheck {
  double residual = 0.0;          ///< |H^F(Phi, e Phi) - H^F(Phi, f Phi)|
  double mapping_residual = 0.0;  ///< |coefficients of e - Sigma_phi^{1/2} b|
  double orthogonality = 0.0;     ///< |M^T M - I|_inf
  Eigen::MatrixXd rotation;
};

/// Orthogonal M with M x = z (Householder reflection about z - x, identity
/// when |z - x| <= 1e-12). Requires |x| = |z|.
Eigen::MatrixXd orthogonal_map(const Eigen::VectorXd& x, const Eigen::VectorXd& z);

/// Claim 2 for u = (theta, a), v = (phi, b) with matching Fisher forms.
/// Throws PreconditionError when |a^T S_theta a - b^T S_phi b| >= 1e-12.
RotationCheck claim2_rotation_check(const ExpFamily& family, const TangentCoord& u,
                                    const TangentCoord& v);

/// Rescales v's direction so that its Fisher form equals u's.
TangentCoord match_fisher_form(const ExpFamily& family, const TangentCoord& u, const TangentCoord& v);

/// |Hc(L1_* Q_n1, f L1_* Q_n1) - Hc(L2_* Q_n2, f L2_* Q_n2)|.
double uniqueness_residual(const NormFunctional& candidate, const ExpFamily& family,
                           const TangentCoord& u, int n1, int n2);

struct ConstantEstimate {
  double c_hat = 0.0;
  double spread = 0.0;
  std::vector<double> ratios;
};

/// Ratios |u|_G / |u|_Fisher over `trials` random tangents (theta from the
/// family's test grid, direction uniform on the unit sphere).
ConstantEstimate recover_constant(const MetricField& metric, const ExpFamily& family, int trials,
                                  std::uint64_t seed = 42);

struct SuiteOptions {
  std::optional<double> tolerance;
  /// Directions a and b; default all-ones and alternating +1/-1.
  std::optional<Eigen::VectorXd> a;
  std::optional<Eigen::VectorXd> b;
};

/// A1, A2, A3-constancy and A3-affine rows for every theta and n.
std::vector<AxiomReport> run_invariance_suite(const ExpFamily& family,
                                              const std::vector<Eigen::VectorXd>& thetas,
                                              const std::vector<int>& ns,
                                              const SuiteOptions& options = {});

}  // namespace infogeo
