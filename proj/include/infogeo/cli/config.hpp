#pragma once

#include "infogeo/errors.hpp"
#include "infogeo/expfam.hpp"
#include "infogeo/families.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infogeo::cli {

/// Bad flags, config keys or values. Maps to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  FamilySpec family{"bernoulli", {}};
  /// Cube domain override, both or neither.
  std::optional<double> theta_lo;
  std::optional<double> theta_hi;
  /// Explicit points; empty means the family's test grid.
  std::vector<Eigen::VectorXd> thetas;
  std::vector<int> n_list{1, 2, 4, 8};
  /// "default" applies to every quantity without its own entry.
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 42;
  std::string out;
  std::string route = "all";
  /// Tangent direction; empty means all ones.
  std::vector<double> direction;
  std::vector<int> orders{2, 3, 4};
  int trials = 20;
};

using ConfigEntry = std::pair<std::string, std::string>;

/// Keys accepted in config files; flags use the same names.
const std::vector<std::string_view>& config_keys();

/// Reads `key = value` lines; '#' and ';' start comments, blank lines are
/// skipped, a repeated `theta` key adds another point.
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view origin = "config");

/// Applies file entries, then flag entries; a key given as a flag replaces
/// everything the file said about it.
RunConfig build_config(const std::vector<ConfigEntry>& file_entries,
                       const std::vector<ConfigEntry>& flag_entries);

void apply_entry(RunConfig& config, const std::string& key, const std::string& value);
void validate(const RunConfig& config);

/// "grid" or components separated by ',' or ';'. Empty optional for "grid".
std::optional<Eigen::VectorXd> parse_theta(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

ExpFamily resolve_family(const RunConfig& config);
std::vector<Eigen::VectorXd> resolve_thetas(const RunConfig& config, const ExpFamily& family);
Eigen::VectorXd resolve_direction(const RunConfig& config, const ExpFamily& family);
/// tolerances[quantity], else tolerances["default"], else `fallback`.
double tolerance_for(const RunConfig& config, const std::string& quantity, double fallback);

}  // namespace infogeo::cli
