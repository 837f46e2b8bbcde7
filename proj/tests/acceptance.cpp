// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles are computed here independently of the library.

#include "infogeo/families.hpp"
#include "infogeo/invariance.hpp"
#include "infogeo/tensors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace infogeo;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

Eigen::VectorXd alternating(Eigen::Index d) {
  Eigen::VectorXd b(d);
  for (Eigen::Index i = 0; i < d; ++i) b[i] = i % 2 == 0 ? 1.0 : -1.0;
  return b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double binomial_ks(int n, double p) {
  const double mean = n * p;
  const double sd = std::sqrt(n * p * (1 - p));
  double cdf = 0.0, worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double phi = normal_cdf((k - mean) / sd);
    worst = std::max(worst, std::abs(cdf - phi));
    cdf += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                    k * std::log(p) + (n - k) * std::log1p(-p));
    worst = std::max(worst, std::abs(cdf - phi));
  }
  return worst;
}

Outcome fisher_routes() {
  Outcome o;
  double worst_ab = 0, worst_ac = 0;
  for (const ExpFamily& f : builtin_families()) {
    for (const auto& theta : f.domain().grid()) {
      const Eigen::MatrixXd a = fisher_information(f, theta, FisherRoute::kCovariance);
      const Eigen::MatrixXd b = fisher_information(f, theta, FisherRoute::kScoreOuterProduct);
      const Eigen::MatrixXd c = fisher_information(f, theta, FisherRoute::kHessian);
      worst_ab = std::max(worst_ab, (a - b).cwiseAbs().maxCoeff());
      worst_ac = std::max(worst_ac, (a - c).cwiseAbs().maxCoeff());
    }
  }
  o.require(worst_ab <= 1e-10, "A-B gap too large");
  o.require(worst_ac <= 1e-6, "A-C gap too large");

  // Two-term sum for the fair coin.
  const double bern = 0.5 * 0.25 + 0.5 * 0.25;
  const double bern_lib = fisher_information(make_family("bernoulli"), Eigen::VectorXd::Zero(1),
                                             FisherRoute::kCovariance)(0, 0);
  o.require(std::abs(bern_lib - bern) <= 1e-15 && bern == 0.25, "Bernoulli value");

  // Direct sums over {0..50} with weights 1/x!.
  double z = 0, m1 = 0, m2 = 0, term = 1;
  for (int x = 0; x <= 50; ++x) {
    if (x > 0) term /= x;
    z += term;
    m1 += x * term;
    m2 += double(x) * x * term;
  }
  const double var = m2 / z - (m1 / z) * (m1 / z);
  const double pois_lib = fisher_information(make_family("poisson_trunc(50)"), Eigen::VectorXd::Zero(1),
                                             FisherRoute::kCovariance)(0, 0);
  o.require(std::abs(pois_lib - var) <= 1e-12 && std::abs(pois_lib - 1.0) <= 1e-9, "Poisson value");
  o.detail << "max|A-B|=" << worst_ab << " max|A-C|=" << worst_ac << " bernoulli=" << bern_lib
           << " poisson=" << pois_lib;
  return o;
}

Outcome axiom(bool a1) {
  Outcome o;
  double worst = 0;
  int product_checks = 0;
  for (const ExpFamily& f : discrete_builtin_families()) {
    const Eigen::VectorXd a = Eigen::VectorXd::Ones(f.dim());
    const Eigen::VectorXd b = alternating(f.dim());
    for (const auto& theta : f.domain().grid()) {
      const std::vector<int> ns{1, 2, 4, 8, 16};
      const auto qs = nef_distributions(f, theta, ns);
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const AxiomReport r = a1 ? check_A1(f, {theta, a}, {theta, b}, ns[i], 1e-9)
                                 : check_A2(f, {theta, a}, {theta, b}, ns[i], qs[i], 1e-9);
        worst = std::max(worst, std::abs(r.residual));
        o.require(r.pass, f.name() + " failed");
        if (a1 && ns[i] <= 3) {
          o.require(r.product_checked, f.name() + " product check skipped");
          product_checks += r.product_checked;
        }
      }
    }
  }
  o.detail << "max residual=" << worst;
  if (a1) o.detail << " product cross-checks=" << product_checks;
  return o;
}

Outcome claim1() {
  Outcome o;
  double worst = 0;
  const NormFunctional h = fisher_norm_functional();
  const std::vector<int> ns{1, 2, 4, 8, 16, 32};
  for (const ExpFamily& f : builtin_families()) {
    const std::vector<Eigen::VectorXd> dirs{Eigen::VectorXd::Ones(f.dim()), alternating(f.dim())};
    for (const auto& theta : f.domain().grid()) {
      const auto qs = nef_distributions(f, theta, ns);
      for (const auto& a : dirs) {
        // |Sigma^{1/2} a| = sqrt(a^T Sigma a), from the route-B matrix.
        const double target = std::sqrt(a.dot(fisher_information(f, theta, FisherRoute::kScoreOuterProduct) * a));
        const double first = claim1_pipeline(f, {theta, a}, ns[0], h, qs[0]);
        for (std::size_t i = 0; i < ns.size(); ++i) {
          const double value = claim1_pipeline(f, {theta, a}, ns[i], h, qs[i]);
          worst = std::max({worst, std::abs(value - first), std::abs(value - target)});
        }
      }
    }
  }
  o.require(worst <= 1e-9, "pipeline deviates");
  o.detail << "max deviation=" << worst;
  return o;
}

Outcome clt() {
  Outcome o;
  const ExpFamily bern = make_family("bernoulli");
  const double ks100 = clt_diagnostics(bern, Eigen::VectorXd::Zero(1), 100).ks_max;
  const double oracle = binomial_ks(100, 0.5);
  o.require(ks100 < 0.05, "ks at n=100 not below 0.05");
  o.require(std::abs(ks100 - oracle) <= 1e-12, "ks disagrees with exact binomial CDF");
  const std::vector<int> ns{1, 4, 16, 64};
  for (const ExpFamily& f : discrete_builtin_families()) {
    for (const auto& theta : f.domain().grid()) {
      const auto qs = nef_distributions(f, theta, ns);
      double previous = INFINITY;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double ks = clt_diagnostics(f, theta, ns[i], qs[i]).ks_max;
        o.require(ks <= previous, f.name() + " ks increased");
        previous = ks;
      }
    }
  }
  o.detail << "bernoulli ks(100)=" << ks100 << " oracle=" << oracle;
  return o;
}

Outcome claim2() {
  Outcome o;
  double worst = 0;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  for (const ExpFamily& f : builtin_families()) {
    const auto grid = f.domain().grid();
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd a(f.dim()), b(f.dim());
      for (Eigen::Index i = 0; i < f.dim(); ++i) a[i] = gauss(rng), b[i] = gauss(rng);
      const TangentCoord u{grid[pick(rng)], a};
      const TangentCoord v = match_fisher_form(f, u, {grid[pick(rng)], b});
      worst = std::max(worst, claim2_rotation_check(f, u, v).residual);
    }
  }
  o.require(worst <= 1e-12, "rotation residual too large");
  o.detail << "pairs=" << 20 * builtin_families().size() << " max residual=" << worst;
  return o;
}

Outcome theorem_witness() {
  Outcome o;
  const ExpFamily bern = make_family("bernoulli");
  const ConstantEstimate scaled = recover_constant(scaled_field(fisher_field(bern), 2.5 * 2.5), bern, 20);
  o.require(std::abs(scaled.c_hat - 2.5) <= 1e-10 && scaled.spread <= 1e-10, "scaled Fisher constant");
  const double uniq =
      uniqueness_residual(l1_perturbed_functional(), bern, {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)}, 1, 4);
  o.require(std::abs(uniq - 0.0125) <= 1e-12, "L1 uniqueness residual");
  const ConstantEstimate sinus = recover_constant(sinusoidal_fisher_field(bern), bern, 20);
  o.require(sinus.spread > 0.05, "sinusoidal spread");
  o.detail << "c_hat=" << scaled.c_hat << " spread=" << scaled.spread << " uniqueness=" << uniq
           << " sinusoidal spread=" << sinus.spread;
  return o;
}

Outcome tensors() {
  Outcome o;
  const ExpFamily bern = make_family("bernoulli");
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  const Eigen::VectorXd theta3 = Eigen::VectorXd::Constant(1, std::log(3.0));
  const std::vector<Eigen::VectorXd> ones3(3, one);
  const double ac3 = amari_chentsov(bern, theta3, ones3);
  o.require(std::abs(ac3 - -0.09375) <= 1e-12, "k=3 value");
  double fd_gap = std::abs(ac3 - third_derivative_fd(bern, theta3, one));
  double perm = 0, odd = 0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  for (const ExpFamily& f : builtin_families()) {
    const Eigen::VectorXd a = Eigen::VectorXd::Ones(f.dim());
    const SymmetricTensorField quartic = invariant_power_field(f, 4, 1.0);
    for (const auto& theta : f.domain().grid()) {
      fd_gap = std::max(fd_gap, std::abs(amari_chentsov(f, theta, std::vector<Eigen::VectorXd>(3, a)) -
                                         third_derivative_fd(f, theta, a)));
      std::vector<Eigen::VectorXd> dirs(4, Eigen::VectorXd(f.dim()));
      for (auto& d : dirs)
        for (Eigen::Index i = 0; i < f.dim(); ++i) d[i] = gauss(rng);
      perm = std::max(perm, permutation_defect(quartic, theta, dirs));
      for (int k : {3, 5}) {
        const SymmetricTensorField t = invariant_power_field(f, k, 1.0);
        odd = std::max(odd, odd_k_vanishing_check(t, f, theta, a, 0.0).residual);
      }
    }
  }
  o.require(fd_gap <= 1e-5, "finite-difference gap");
  o.require(perm <= 1e-12, "k=4 permutation defect");
  o.require(odd <= 1e-10, "odd-k vanishing");
  o.detail << "ac3=" << ac3 << " max fd gap=" << fd_gap << " perm defect=" << perm << " odd residual=" << odd;
  return o;
}

Outcome matrix_form_equivalence() {
  Outcome o;
  double worst = 0;
  for (const ExpFamily& f : builtin_families()) {
    const Eigen::VectorXd a = Eigen::VectorXd::Ones(f.dim());
    const Eigen::VectorXd b = alternating(f.dim());
    for (const auto& theta : f.domain().grid()) {
      const double invariant = invariant_fisher_form(model_tangent(f, {theta, a}), model_tangent(f, {theta, b}));
      // Coordinate form a^T (d^2 psi) b; the Hessian of psi equals Cov(T).
      const double matrix = a.dot(fisher_information(f, theta, FisherRoute::kCovariance) * b);
      worst = std::max(worst, std::abs(invariant - matrix));
    }
  }
  o.require(worst <= 1e-10, "invariant form disagrees");
  o.detail << "max gap=" << worst;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Fisher route agreement", 5, fisher_routes},
      {2, "A1 IID scaling", 30, [] { return axiom(true); }},
      {3, "A2 invariant form on N_n", 30, [] { return axiom(false); }},
      {4, "Claim 1 constancy", 60, claim1},
      {5, "CLT diagnostics", 600, clt},
      {6, "Claim 2 rotation", 600, claim2},
      {7, "Uniqueness witnesses", 600, theorem_witness},
      {8, "Higher-order tensors", 600, tensors},
      {9, "Invariant vs matrix Fisher form", 600, matrix_form_equivalence},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail << " over budget";
    }
    failures += !o.pass;
    std::printf("%s [%d] %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
