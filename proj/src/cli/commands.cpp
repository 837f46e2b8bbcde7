#include "infogeo/cli/commands.hpp"

#include "infogeo/derived.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/invariance.hpp"
#include "infogeo/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace infogeo::cli {

namespace {

constexpr double kRouteBTol = 1e-10;
constexpr double kRouteCTol = 1e-6;
constexpr double kFiniteDifferenceTol = 1e-5;
constexpr double kSymmetryTol = 1e-12;
constexpr double kPolarizationTol = 1e-8;
constexpr double kVanishingTol = 1e-10;
constexpr double kMonotoneSlack = 1e-12;
// Norm-level factor; the metric matrix is scaled by its square.
constexpr double kScaledFisherFactor = 2.5;
constexpr double kConstantTol = 1e-10;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void progress(const std::string& command, const ExpFamily& family, const Eigen::VectorXd& theta) {
  std::cerr << "infogeo " << command << ": " << family.name() << " theta=" << format_theta(theta) << '\n';
}

// Runs one cell; a numerical failure becomes a failed row instead of
// aborting the whole command.
template <class Fn>
void guarded(std::vector<CsvRow>& rows, const ExpFamily& family, const Eigen::VectorXd& theta, int n,
             const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    std::cerr << "infogeo: " << what << " failed for " << family.name() << " at theta="
              << format_theta(theta) << ", n=" << n << ": " << e.what() << '\n';
    rows.push_back({family.name(), format_theta(theta), n, what + ":error", kNaN,
                    std::numeric_limits<double>::infinity(), false});
  }
}

std::vector<FisherRoute> selected_routes(const RunConfig& config) {
  if (config.route == "all")
    return {FisherRoute::kCovariance, FisherRoute::kScoreOuterProduct, FisherRoute::kHessian};
  return {parse_fisher_route(config.route)};
}

std::string entry_name(std::string_view prefix, Eigen::Index i, Eigen::Index j) {
  return std::string(prefix) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

// Four fixed, pairwise distinct directions built from `a`.
std::vector<Eigen::VectorXd> probe_directions(const Eigen::VectorXd& a) {
  std::vector<Eigen::VectorXd> dirs;
  for (int j = 0; j < 4; ++j) {
    Eigen::VectorXd v = a;
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += 0.25 * (j + 1) * ((i + j) % 2 ? -1.0 : 1.0);
    dirs.push_back(v);
  }
  return dirs;
}

}  // namespace

int CommandResult::exit_code() const {
  return std::all_of(rows.begin(), rows.end(), [](const CsvRow& r) { return r.pass; }) ? kExitOk
                                                                                     : kExitFailedCheck;
}

std::string cmd_families() {
  std::ostringstream out;
  out << "name,params,default,order,support,theta_lower,theta_upper,description\n";
  for (const FamilyInfo& info : family_catalog()) {
    const ExpFamily family = make_family(info.default_spec);
    out << info.name << ',' << csv_field(info.params) << ',' << csv_field(info.default_spec) << ','
        << family.dim() << ',' << family.base().size() << ',' << format_theta(family.domain().lower) << ','
        << format_theta(family.domain().upper) << ',' << csv_field(info.description) << '\n';
  }
  return out.str();
}

CommandResult cmd_fisher(const RunConfig& config) {
  const ExpFamily family = resolve_family(config);
  const auto routes = selected_routes(config);
  CommandResult result;
  auto& rows = result.rows;
  for (const Eigen::VectorXd& theta : resolve_thetas(config, family)) {
    progress("fisher", family, theta);
    guarded(rows, family, theta, 1, "fisher", [&] {
      std::vector<Eigen::MatrixXd> mats;
      for (FisherRoute route : routes) {
        mats.push_back(fisher_information(family, theta, route));
        const std::string prefix = "fisher_" + std::string(route_label(route));
        for (Eigen::Index i = 0; i < mats.back().rows(); ++i)
          for (Eigen::Index j = 0; j < mats.back().cols(); ++j)
            rows.push_back(report_row(family.name(), theta, 1, entry_name(prefix, i, j), mats.back()(i, j)));
      }
      if (mats.size() == 3) {
        rows.push_back(check_row(family.name(), theta, 1, "route_AB_gap",
                                 (mats[0] - mats[1]).cwiseAbs().maxCoeff(),
                                 tolerance_for(config, "route_AB_gap", kRouteBTol)));
        rows.push_back(check_row(family.name(), theta, 1, "route_AC_gap",
                                 (mats[0] - mats[2]).cwiseAbs().maxCoeff(),
                                 tolerance_for(config, "route_AC_gap", kRouteCTol)));
      }
    });
  }
  return result;
}

CommandResult cmd_invariance(const RunConfig& config) {
  const ExpFamily family = resolve_family(config);
  SuiteOptions options;
  options.a = resolve_direction(config, family);
  CommandResult result;
  for (const Eigen::VectorXd& theta : resolve_thetas(config, family)) {
    progress("invariance", family, theta);
    guarded(result.rows, family, theta, config.n_list.back(), "invariance", [&] {
      for (const AxiomReport& report : run_invariance_suite(family, {theta}, config.n_list, options)) {
        const std::string label(axiom_label(report.axiom));
        result.rows.push_back(check_row(family.name(), theta, report.n_values.front(), label, report.residual,
                                        tolerance_for(config, label, report.tolerance)));
      }
    });
  }
  return result;
}

CommandResult cmd_clt(const RunConfig& config) {
  const ExpFamily family = resolve_family(config);
  CommandResult result;
  auto& rows = result.rows;
  for (const Eigen::VectorXd& theta : resolve_thetas(config, family)) {
    progress("clt", family, theta);
    guarded(rows, family, theta, config.n_list.back(), "clt", [&] {
      const auto qs = nef_distributions(family, theta, config.n_list);
      double worst_increase = 0.0;
      double previous = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < qs.size(); ++k) {
        const int n = config.n_list[k];
        const CltDiagnostics diag = clt_diagnostics(family, theta, n, qs[k]);
        rows.push_back(report_row(family.name(), theta, n, "ks_max", diag.ks_max));
        rows.push_back(report_row(family.name(), theta, n, "moment_gap", diag.moment_gap));
        if (std::isfinite(previous)) worst_increase = std::max(worst_increase, diag.ks_max - previous);
        previous = diag.ks_max;
      }
      rows.push_back(check_row(family.name(), theta, config.n_list.back(), "ks_nonincreasing", worst_increase,
                               tolerance_for(config, "ks_nonincreasing", kMonotoneSlack)));
    });
  }
  return result;
}

CommandResult cmd_tensor(const RunConfig& config) {
  const ExpFamily family = resolve_family(config);
  const Eigen::VectorXd a = resolve_direction(config, family);
  const double identity_tol = default_tolerance(family);
  CommandResult result;
  auto& rows = result.rows;
  const std::string name = family.name();
  for (const Eigen::VectorXd& theta : resolve_thetas(config, family)) {
    progress("tensor", family, theta);
    guarded(rows, family, theta, 1, "tensor", [&] {
      const auto diag = [&](int k) { return std::vector<Eigen::VectorXd>(static_cast<std::size_t>(k), a); };
      const double fisher_form = a.dot(fisher_information(family, theta, FisherRoute::kCovariance) * a);
      const double ac2 = amari_chentsov(family, theta, diag(2));
      const double ac3 = amari_chentsov(family, theta, diag(3));
      rows.push_back(report_row(name, theta, 1, "ac_k2", ac2));
      rows.push_back(check_row(name, theta, 1, "ac_k2_vs_fisher", ac2 - fisher_form,
                               tolerance_for(config, "ac_k2_vs_fisher", identity_tol)));
      rows.push_back(report_row(name, theta, 1, "ac_k3", ac3));
      rows.push_back(check_row(name, theta, 1, "ac_k3_vs_fd", ac3 - third_derivative_fd(family, theta, a),
                               tolerance_for(config, "ac_k3_vs_fd", kFiniteDifferenceTol)));
      rows.push_back(report_row(name, theta, 1, "ac_k4", amari_chentsov(family, theta, diag(4))));

      const auto dirs = probe_directions(a);
      const SymmetricTensorField power = invariant_power_field(family, 4, 1.0);
      const double direct = symmetric_power_eval(family, theta, dirs, 1.0);
      rows.push_back(report_row(name, theta, 1, "sympow_k4", symmetric_power_eval(family, theta, diag(4), 1.0)));
      rows.push_back(check_row(name, theta, 1, "sympow_k4_perm_defect", permutation_defect(power, theta, dirs),
                               tolerance_for(config, "sympow_k4_perm_defect", kSymmetryTol)));
      const double polarized = polarize_symmetric(
          [&](const Eigen::VectorXd& v) {
            const std::vector<Eigen::VectorXd> repeated(4, v);
            return symmetric_power_eval(family, theta, repeated, 1.0);
          },
          dirs);
      rows.push_back(check_row(name, theta, 1, "sympow_k4_polarization", polarized - direct,
                               tolerance_for(config, "sympow_k4_polarization", kPolarizationTol)));

      const OddVanishing invariant =
          odd_k_vanishing_check(invariant_power_field(family, 3, 1.0), family, theta, a, 0.0);
      rows.push_back(check_row(name, theta, 1, "odd_k3_invariant", invariant.residual,
                               tolerance_for(config, "odd_k3_invariant", kVanishingTol)));
      const OddVanishing ac = odd_k_vanishing_check(amari_chentsov_field(family, 3), family, theta, a);
      rows.push_back(report_row(name, theta, 1, "odd_k3_amari_chentsov", ac.residual));

      const auto qs = nef_distributions(family, theta, config.n_list);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        const int n = config.n_list[i];
        for (int k : config.orders) {
          const ScalingReport s = higher_scaling_check(family, theta, a, n, k, qs[i]);
          const std::string prefix = "scaling_k" + std::to_string(k);
          rows.push_back(report_row(name, theta, n, prefix + "_exponent", s.exponent));
          if (k == 2)
            rows.push_back(check_row(name, theta, n, prefix + "_residual", s.residual,
                                     tolerance_for(config, prefix + "_residual", identity_tol)));
          else
            rows.push_back(report_row(name, theta, n, prefix + "_residual", s.residual));
        }
      }
    });
  }
  return result;
}

CommandResult cmd_uniqueness(const RunConfig& config) {
  const ExpFamily family = resolve_family(config);
  const Eigen::VectorXd a = resolve_direction(config, family);
  const double identity_tol = default_tolerance(family);
  const NormFunctional fisher = fisher_norm_functional();
  const NormFunctional perturbed = l1_perturbed_functional();
  CommandResult result;
  auto& rows = result.rows;
  const std::string name = family.name();
  for (const Eigen::VectorXd& theta : resolve_thetas(config, family)) {
    progress("uniqueness", family, theta);
    guarded(rows, family, theta, config.n_list.back(), "uniqueness", [&] {
      const TangentCoord u{theta, a};
      const auto qs = nef_distributions(family, theta, config.n_list);
      const double h0 = claim1_pipeline(family, u, config.n_list.front(), fisher, qs.front());
      const double p0 = claim1_pipeline(family, u, config.n_list.front(), perturbed, qs.front());
      for (std::size_t i = 1; i < qs.size(); ++i) {
        const int n = config.n_list[i];
        rows.push_back(check_row(name, theta, n, "uniq_fisher",
                                 claim1_pipeline(family, u, n, fisher, qs[i]) - h0,
                                 tolerance_for(config, "uniq_fisher", identity_tol)));
        rows.push_back(report_row(name, theta, n, "uniq_l1",
                                  std::abs(claim1_pipeline(family, u, n, perturbed, qs[i]) - p0)));
      }
    });
  }

  const Eigen::VectorXd nowhere;
  try {
    const ConstantEstimate scaled =
        recover_constant(scaled_field(fisher_field(family), kScaledFisherFactor * kScaledFisherFactor), family,
                         config.trials, config.seed);
    const ConstantEstimate sinusoidal =
        recover_constant(sinusoidal_fisher_field(family), family, config.trials, config.seed);
    auto grid_row = [&](CsvRow row) {
      row.theta = "grid";
      rows.push_back(std::move(row));
    };
    grid_row(check_row(name, nowhere, 1, "c_hat_scaled_fisher", scaled.c_hat - kScaledFisherFactor,
                       tolerance_for(config, "c_hat_scaled_fisher", kConstantTol)));
    grid_row(check_row(name, nowhere, 1, "spread_scaled_fisher", scaled.spread,
                       tolerance_for(config, "spread_scaled_fisher", kConstantTol)));
    grid_row(report_row(name, nowhere, 1, "c_hat_sinusoidal", sinusoidal.c_hat));
    grid_row(report_row(name, nowhere, 1, "spread_sinusoidal", sinusoidal.spread));
  } catch (const Error& e) {
    std::cerr << "infogeo: constant recovery failed for " << name << ": " << e.what() << '\n';
    rows.push_back({name, "grid", 1, "recover_constant:error", kNaN, std::numeric_limits<double>::infinity(), false});
  }
  return result;
}

int emit(CommandResult result, const RunConfig& config, std::ostream& fallback) {
  sort_rows(result.rows);
  if (config.out.empty()) {
    write_csv(fallback, result.rows);
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + config.out + "'");
    write_csv(file, result.rows);
  }
  return result.exit_code();
}

}  // namespace infogeo::cli
