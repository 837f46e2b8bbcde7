// Command-line front end: fisher, invariance, clt, tensor and uniqueness
// reports as CSV.

#include "infogeo/cli/commands.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using infogeo::cli::CommandResult;
using infogeo::cli::ConfigEntry;
using infogeo::cli::RunConfig;

struct Flags {
  std::string config_path;
  std::string family;
  std::string params;
  std::vector<std::string> thetas;
  std::string n;
  std::string route;
  std::vector<std::string> tols;
  std::string seed;
  std::string out;
  std::string dir;
  std::string k;
  std::string trials;
  std::string theta_lo;
  std::string theta_hi;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "INI-style key = value file; flags override it");
  cmd->add_option("--family", f.family, "family name, optionally with parameters, e.g. binomial(4)");
  cmd->add_option("--params", f.params, "comma-separated family parameters");
  cmd->add_option("--theta", f.thetas, "natural parameter ('grid' or components split by ',' or ';')")
      ->allow_extra_args(false);
  cmd->add_option("--n", f.n, "ascending comma-separated sample sizes");
  cmd->add_option("--route", f.route, "Fisher route: A, B, C or all");
  cmd->add_option("--tol", f.tols, "tolerance, either a value or quantity=value")->allow_extra_args(false);
  cmd->add_option("--seed", f.seed, "seed for random tangent directions (default 42)");
  cmd->add_option("--out", f.out, "write CSV here instead of standard output");
  cmd->add_option("--dir", f.dir, "tangent direction a, comma-separated");
  cmd->add_option("--k", f.k, "tensor orders, comma-separated");
  cmd->add_option("--trials", f.trials, "random tangents for constant recovery");
  cmd->add_option("--theta-lo", f.theta_lo, "lower edge of a cube theta domain");
  cmd->add_option("--theta-hi", f.theta_hi, "upper edge of a cube theta domain");
}

std::vector<ConfigEntry> flag_entries(const CLI::App* cmd, const Flags& f) {
  std::vector<ConfigEntry> entries;
  const auto scalar = [&](const char* flag, const char* key, const std::string& value) {
    if (cmd->count(flag) > 0) entries.emplace_back(key, value);
  };
  scalar("--family", "family", f.family);
  scalar("--params", "params", f.params);
  for (const auto& theta : f.thetas) entries.emplace_back("theta", theta);
  scalar("--theta-lo", "theta_lo", f.theta_lo);
  scalar("--theta-hi", "theta_hi", f.theta_hi);
  scalar("--n", "n", f.n);
  scalar("--route", "route", f.route);
  for (const auto& tol : f.tols) entries.emplace_back("tol", tol);
  scalar("--seed", "seed", f.seed);
  scalar("--out", "out", f.out);
  scalar("--dir", "dir", f.dir);
  scalar("--k", "k", f.k);
  scalar("--trials", "trials", f.trials);
  return entries;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of invariance properties of the Fisher metric on exponential families"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  app.add_subcommand("families", "list the registered families");

  using Runner = std::function<CommandResult(const RunConfig&)>;
  const std::vector<std::pair<std::string, std::pair<std::string, Runner>>> commands{
      {"fisher", {"Fisher information by covariance (A), score outer product (B) and Hessian (C)",
                  infogeo::cli::cmd_fisher}},
      {"invariance", {"A1, A2 and A3 residuals on the IID and natural exponential families",
                      infogeo::cli::cmd_invariance}},
      {"clt", {"distance of the standardized natural family to the normal law", infogeo::cli::cmd_clt}},
      {"tensor", {"higher-order symmetric tensors", infogeo::cli::cmd_tensor}},
      {"uniqueness", {"uniqueness witnesses: perturbed functionals and metrics", infogeo::cli::cmd_uniqueness}},
  };
  std::map<std::string, Flags> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc_run] : commands) {
    subs[name] = app.add_subcommand(name, desc_run.first);
    add_run_flags(subs[name], flags[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : infogeo::cli::kExitUsage;
  }

  if (app.got_subcommand("families")) {
    std::cout << infogeo::cli::cmd_families();
    return infogeo::cli::kExitOk;
  }

  for (const auto& [name, desc_run] : commands) {
    if (!subs[name]->parsed()) continue;
    const Flags& f = flags[name];
    try {
      std::vector<ConfigEntry> file_entries;
      if (!f.config_path.empty()) file_entries = infogeo::cli::read_config_file(f.config_path);
      const RunConfig config = infogeo::cli::build_config(file_entries, flag_entries(subs[name], f));
      return infogeo::cli::emit(desc_run.second(config), config, std::cout);
    } catch (const infogeo::cli::UsageError& e) {
      std::cerr << "infogeo " << name << ": " << e.what() << '\n';
      return infogeo::cli::kExitUsage;
    } catch (const infogeo::UnknownFamilyError& e) {
      std::cerr << "infogeo " << name << ": " << e.what() << '\n';
      return infogeo::cli::kExitUsage;
    } catch (const infogeo::BadParamError& e) {
      std::cerr << "infogeo " << name << ": " << e.what() << '\n';
      return infogeo::cli::kExitUsage;
    } catch (const infogeo::Error& e) {
      std::cerr << "infogeo " << name << ": " << e.what() << '\n';
      return infogeo::cli::kExitFailedCheck;
    }
  }
  return infogeo::cli::kExitUsage;
}
