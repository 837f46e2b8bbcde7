#include "infogeo/families.hpp"

#include "infogeo/quadrature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace infogeo {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

int parse_int_param(const FamilySpec& spec, std::size_t i, int minimum) {
  const std::string& text = spec.params.at(i);
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw BadParamError(spec.name + ": parameter '" + text + "' is not an integer");
  if (value < minimum)
    throw BadParamError(spec.name + ": parameter must be at least " + std::to_string(minimum));
  return value;
}

void require_param_count(const FamilySpec& spec, std::size_t lo, std::size_t hi) {
  if (spec.params.size() < lo || spec.params.size() > hi)
    throw BadParamError(spec.name + ": expected " + std::to_string(lo) +
                        (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s), got " +
                        std::to_string(spec.params.size()));
}

Eigen::MatrixXd integer_points(int last) {
  Eigen::MatrixXd pts(1, last + 1);
  for (int x = 0; x <= last; ++x) pts(0, x) = x;
  return pts;
}

ExpFamily::Statistic identity_statistic() {
  return [](const Eigen::VectorXd& x) { return x; };
}

ThetaBox pick(const std::optional<ThetaBox>& override_box, ThetaBox fallback) {
  return override_box ? *override_box : fallback;
}

ExpFamily bernoulli(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 0, 0);
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(integer_points(1), Eigen::Vector2d(1, 1)),
                                   identity_statistic(), pick(box, ThetaBox::cube(1, -10, 10)));
}

ExpFamily binomial(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 1, 1);
  const int m = parse_int_param(spec, 0, 1);
  Eigen::VectorXd w(m + 1);
  for (int x = 0; x <= m; ++x)
    w[x] = std::round(std::exp(std::lgamma(m + 1.0) - std::lgamma(x + 1.0) - std::lgamma(m - x + 1.0)));
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(integer_points(m), w),
                                   identity_statistic(), pick(box, ThetaBox::cube(1, -5, 5)));
}

ExpFamily categorical(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 1, 1);
  const int k = parse_int_param(spec, 0, 2);
  const Eigen::MatrixXd units = Eigen::MatrixXd::Identity(k, k);
  auto statistic = [k](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x.head(k - 1); };
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(units, Eigen::VectorXd::Ones(k)),
                                   statistic, pick(box, ThetaBox::cube(k - 1, -5, 5)));
}

ExpFamily poisson_trunc(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 1, 1);
  const int n = parse_int_param(spec, 0, 1);
  Eigen::VectorXd w(n + 1);
  double factorial = 1.0;
  for (int x = 0; x <= n; ++x) {
    if (x > 0) factorial *= x;
    w[x] = 1.0 / factorial;
  }
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(integer_points(n), w),
                                   identity_statistic(), pick(box, ThetaBox::cube(1, -3, 3)));
}

std::string rule_param(const FamilySpec& spec, std::string_view fallback) {
  return spec.params.size() > 1 ? spec.params[1] : std::string(fallback);
}

ExpFamily gauss_known_var(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 1, 2);
  const int nodes = parse_int_param(spec, 0, 3);
  const std::string rule = rule_param(spec, "lattice");
  Eigen::MatrixXd pts(1, nodes);
  Eigen::VectorXd w(nodes);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  if (rule == "lattice") {
    // Symmetric integer multiples of the step keep lattice sums exact.
    constexpr double kHalfWidth = 10.0;
    const double step = 2.0 * kHalfWidth / (nodes - 1);
    const double middle = 0.5 * (nodes - 1);
    for (int k = 0; k < nodes; ++k) {
      const double x = (k - middle) * step;
      pts(0, k) = x;
      w[k] = step * inv_sqrt_2pi * std::exp(-0.5 * x * x);
    }
    w[0] *= 0.5;
    w[nodes - 1] *= 0.5;
  } else if (rule == "hermite") {
    const QuadratureRule gh = gauss_hermite(nodes);
    pts.row(0) = std::numbers::sqrt2 * gh.nodes.transpose();
    w = gh.weights / std::sqrt(std::numbers::pi);
  } else {
    throw BadParamError(spec.name + ": unknown rule '" + rule + "' (expected lattice or hermite)");
  }
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(pts, w), identity_statistic(),
                                   pick(box, ThetaBox::cube(1, -3, 3)), true);
}

ExpFamily exponential_dist(const FamilySpec& spec, const std::optional<ThetaBox>& box) {
  require_param_count(spec, 1, 2);
  const int nodes = parse_int_param(spec, 0, 3);
  const std::string rule = rule_param(spec, "lattice");
  Eigen::MatrixXd pts(1, nodes);
  Eigen::VectorXd w(nodes);
  if (rule == "lattice") {
    constexpr double kUpper = 60.0;
    const double step = kUpper / (nodes - 1);
    for (int k = 0; k < nodes; ++k) {
      pts(0, k) = k * step;
      w[k] = step;
    }
    w[0] *= 0.5;
    w[nodes - 1] *= 0.5;
  } else if (rule == "legendre") {
    const QuadratureRule gl = gauss_legendre(nodes);
    for (int k = 0; k < nodes; ++k) {
      const double t = gl.nodes[k];
      pts(0, k) = (1.0 + t) / (1.0 - t);
      w[k] = gl.weights[k] * 2.0 / ((1.0 - t) * (1.0 - t));
    }
  } else {
    throw BadParamError(spec.name + ": unknown rule '" + rule + "' (expected lattice or legendre)");
  }
  return ExpFamily::from_statistic(spec.label(), FiniteMeasure(pts, w), identity_statistic(),
                                   pick(box, ThetaBox::cube(1, -4, -0.5)), true);
}

}  // namespace

std::string FamilySpec::label() const {
  if (params.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + params[i];
  return out + ")";
}

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    spec.name = trim(text);
  } else {
    const auto close = text.rfind(')');
    if (close == std::string_view::npos || close < open || !trim(text.substr(close + 1)).empty())
      throw BadParamError("malformed family spec '" + std::string(text) + "'");
    spec.name = trim(text.substr(0, open));
    std::string_view inner = text.substr(open + 1, close - open - 1);
    while (!trim(inner).empty()) {
      const auto comma = inner.find(',');
      spec.params.push_back(trim(inner.substr(0, comma)));
      if (spec.params.back().empty()) throw BadParamError("empty parameter in '" + std::string(text) + "'");
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
      if (trim(inner).empty()) throw BadParamError("empty parameter in '" + std::string(text) + "'");
    }
  }
  if (spec.name.empty()) throw UnknownFamilyError("empty family name");
  return spec;
}

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> catalog{
      {"bernoulli", "", "counting measure on {0,1}, T(x)=x, theta in [-10,10]", "bernoulli"},
      {"binomial", "m", "weights C(m,x) on {0..m}, T(x)=x, theta in [-5,5]", "binomial(4)"},
      {"categorical", "k", "unit vectors e_0..e_{k-1}, T one-hot on the first k-1 coordinates, theta in [-5,5]^(k-1)",
       "categorical(3)"},
      {"poisson_trunc", "N", "weights 1/x! on {0..N}, T(x)=x, theta in [-3,3]", "poisson_trunc(50)"},
      {"gauss_known_var", "nodes[,lattice|hermite]",
       "unit-variance normal base discretized on nodes, T(x)=x, theta in [-3,3]", "gauss_known_var(201)"},
      {"exponential_dist", "nodes[,lattice|legendre]",
       "Lebesgue measure on [0,inf) discretized on nodes, T(x)=x, theta in [-4,-0.5]", "exponential_dist(201)"},
  };
  return catalog;
}

ExpFamily make_family(const FamilySpec& spec, const std::optional<ThetaBox>& domain) {
  if (spec.name == "bernoulli") return bernoulli(spec, domain);
  if (spec.name == "binomial") return binomial(spec, domain);
  if (spec.name == "categorical") return categorical(spec, domain);
  if (spec.name == "poisson_trunc") return poisson_trunc(spec, domain);
  if (spec.name == "gauss_known_var") return gauss_known_var(spec, domain);
  if (spec.name == "exponential_dist") return exponential_dist(spec, domain);
  throw UnknownFamilyError("unknown family '" + spec.name + "'");
}

ExpFamily make_family(std::string_view spec_text) { return make_family(parse_family_spec(spec_text)); }

std::vector<ExpFamily> builtin_families() {
  std::vector<ExpFamily> out;
  for (const auto& info : family_catalog()) out.push_back(make_family(info.default_spec));
  return out;
}

std::vector<ExpFamily> discrete_builtin_families() {
  std::vector<ExpFamily> out;
  for (auto& family : builtin_families())
    if (!family.is_quadrature()) out.push_back(std::move(family));
  return out;
}

}  // namespace infogeo
