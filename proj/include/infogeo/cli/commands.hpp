#pragma once

#include "infogeo/cli/config.hpp"
#include "infogeo/cli/csv.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace infogeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailedCheck = 2;

struct CommandResult {
  std::vector<CsvRow> rows;

  /// kExitFailedCheck if any row failed, else kExitOk.
  int exit_code() const;
};

/// Registry listing as CSV: name, params, default instance, order, support
/// size, theta box and description.
std::string cmd_families();

/// Fisher matrix entries per route; with route "all" also the A-B and A-C
/// agreement gaps.
CommandResult cmd_fisher(const RunConfig& config);
/// A1, A2, A3-constancy and A3-affine residuals per theta and n.
CommandResult cmd_invariance(const RunConfig& config);
/// ks_max and moment_gap per theta and n, plus a monotonicity check of ks_max.
CommandResult cmd_clt(const RunConfig& config);
/// Amari–Chentsov values, finite-difference and symmetry checks, scaling
/// exponents and odd-order vanishing.
CommandResult cmd_tensor(const RunConfig& config);
/// Constancy of the Claim 1 pipeline for H^F against the L1-perturbed
/// functional, and constant recovery for scaled and perturbed metrics.
CommandResult cmd_uniqueness(const RunConfig& config);

/// Sorts the rows and writes them to config.out, or to `fallback` when no
/// output path is set. Returns the exit code.
int emit(CommandResult result, const RunConfig& config, std::ostream& fallback);

}  // namespace infogeo::cli
