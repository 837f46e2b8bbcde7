#pragma once

#include "infogeo/expfam.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infogeo {

/// Family name plus its textual parameters, e.g. binomial(4) or
/// gauss_known_var(201, hermite).
struct FamilySpec {
  std::string name;
  std::vector<std::string> params;

  /// Canonical label such as "binomial(4)".
  std::string label() const;
};

/// Parses "name" or "name(p1,p2,...)".
FamilySpec parse_family_spec(std::string_view text);

struct FamilyInfo {
  std::string name;
  std::string params;
  std::string description;
  std::string default_spec;
};

/// Registry listing, in a fixed order.
const std::vector<FamilyInfo>& family_catalog();

/// Builds a registered family.
///
///  - bernoulli: counting measure on {0,1}, T(x)=x, theta in [-10,10].
///  - binomial(m): weights C(m,x) on {0..m}, T(x)=x, theta in [-5,5].
///  - categorical(k): counting measure on the unit vectors e_0..e_{k-1} of
///    R^k, T = first k-1 coordinates, theta in [-5,5]^(k-1).
///  - poisson_trunc(N): weights 1/x! on {0..N}, T(x)=x, theta in [-3,3].
///  - gauss_known_var(nodes[,rule]): standard normal density times Lebesgue
///    measure, T(x)=x, theta in [-3,3]. rule=lattice (default) uses
///    equispaced nodes on [-10,10] with trapezoid weights; rule=hermite uses
///    Gauss–Hermite nodes.
///  - exponential_dist(nodes[,rule]): Lebesgue measure on [0,inf), T(x)=x,
///    theta in [-4,-0.5]. rule=lattice (default) uses the trapezoid rule on
///    [0,60]; rule=legendre maps Gauss–Legendre nodes through
///    x = (1+t)/(1-t).
///
/// `domain` overrides the declared theta box. Throws UnknownFamilyError or
/// BadParamError.
ExpFamily make_family(const FamilySpec& spec, const std::optional<ThetaBox>& domain = std::nullopt);
ExpFamily make_family(std::string_view spec_text);

/// One instance of every registered family with default parameters.
std::vector<ExpFamily> builtin_families();

/// The built-in families whose base measure is genuinely discrete.
std::vector<ExpFamily> discrete_builtin_families();

}  // namespace infogeo
