#include "infogeo/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace infogeo::cli {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, std::string_view separators) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find_first_of(separators, start);
    parts.push_back(trim(text.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  double value = 0.0;
  if (s.empty() || !(in >> value) || !in.eof() || !std::isfinite(value))
    throw UsageError("invalid " + std::string(what) + " '" + s + "'");
  return value;
}

template <class Int>
Int parse_integer(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("invalid " + std::string(what) + " '" + s + "'");
  return value;
}

void reset_key(RunConfig& config, const std::string& key) {
  if (key == "theta") config.thetas.clear();
  else if (key == "family" || key == "params") config.family.params.clear();
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "family", "params", "theta", "theta_lo", "theta_hi", "n", "tol",
      "seed",   "out",    "route", "dir",      "k",        "trials"};
  return keys;
}

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view origin) {
  std::vector<ConfigEntry> entries;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    // ';' also separates theta components, so only treat it as a comment at
    // the start of a line.
    std::string body = line;
    if (comment != std::string::npos && (line[comment] == '#' || trim(line.substr(0, comment)).empty()))
      body = line.substr(0, comment);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw UsageError(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    const std::string base = key.rfind("tol.", 0) == 0 ? "tol" : key;
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), base) == keys.end())
      throw UsageError(std::string(origin) + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

std::optional<Eigen::VectorXd> parse_theta(std::string_view text) {
  const std::string s = trim(text);
  if (s == "grid") return std::nullopt;
  const auto parts = split(s, ",;");
  Eigen::VectorXd theta(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) theta[static_cast<Eigen::Index>(i)] = parse_real(parts[i], "theta");
  return theta;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split(text, ",")) out.push_back(parse_integer<int>(part, "integer"));
  return out;
}

void apply_entry(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "family") {
    try {
      const FamilySpec spec = parse_family_spec(value);
      config.family.name = spec.name;
      if (!spec.params.empty()) config.family.params = spec.params;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (key == "params") {
    config.family.params.clear();
    if (!trim(value).empty()) config.family.params = split(value, ",");
  } else if (key == "theta") {
    if (auto theta = parse_theta(value)) config.thetas.push_back(*theta);
    else config.thetas.clear();
  } else if (key == "theta_lo") {
    config.theta_lo = parse_real(value, "theta_lo");
  } else if (key == "theta_hi") {
    config.theta_hi = parse_real(value, "theta_hi");
  } else if (key == "n") {
    config.n_list = parse_int_list(value);
  } else if (key == "tol") {
    // "1e-8" or "quantity=1e-8"
    const auto eq = value.find('=');
    if (eq == std::string::npos) config.tolerances["default"] = parse_real(value, "tolerance");
    else config.tolerances[trim(value.substr(0, eq))] = parse_real(value.substr(eq + 1), "tolerance");
  } else if (key.rfind("tol.", 0) == 0) {
    config.tolerances[key.substr(4)] = parse_real(value, "tolerance");
  } else if (key == "seed") {
    config.seed = parse_integer<std::uint64_t>(value, "seed");
  } else if (key == "out") {
    config.out = trim(value);
  } else if (key == "route") {
    config.route = trim(value);
    if (config.route != "all") {
      try {
        parse_fisher_route(config.route);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
  } else if (key == "dir") {
    config.direction.clear();
    for (const auto& part : split(value, ",;")) config.direction.push_back(parse_real(part, "direction"));
  } else if (key == "k") {
    config.orders = parse_int_list(value);
  } else if (key == "trials") {
    config.trials = parse_integer<int>(value, "trials");
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

RunConfig build_config(const std::vector<ConfigEntry>& file_entries,
                       const std::vector<ConfigEntry>& flag_entries) {
  RunConfig config;
  for (const auto& [key, value] : file_entries) apply_entry(config, key, value);
  std::set<std::string> overridden;
  for (const auto& [key, value] : flag_entries) {
    const std::string base = key.rfind("tol.", 0) == 0 ? "tol" : key;
    if (overridden.insert(base).second) reset_key(config, base);
    apply_entry(config, key, value);
  }
  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  if (config.n_list.empty()) throw UsageError("n list must not be empty");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (config.n_list[i] < 1) throw UsageError("n values must be positive");
    if (i > 0 && config.n_list[i] <= config.n_list[i - 1]) throw UsageError("n list must be strictly ascending");
  }
  for (const auto& [quantity, tol] : config.tolerances)
    if (!(tol > 0.0)) throw UsageError("tolerance for '" + quantity + "' must be positive");
  if (config.theta_lo.has_value() != config.theta_hi.has_value())
    throw UsageError("theta_lo and theta_hi must be given together");
  if (config.theta_lo && !(*config.theta_lo < *config.theta_hi))
    throw UsageError("theta_lo must be below theta_hi");
  for (int k : config.orders)
    if (k < 2) throw UsageError("tensor orders must be at least 2");
  if (config.trials < 1) throw UsageError("trials must be positive");
}

ExpFamily resolve_family(const RunConfig& config) {
  FamilySpec spec = config.family;
  if (spec.params.empty()) {
    for (const auto& info : family_catalog())
      if (info.name == spec.name && !info.params.empty()) spec = parse_family_spec(info.default_spec);
  }
  std::optional<ThetaBox> domain;
  if (config.theta_lo) {
    // Dimension is only known once the family is built.
    const ExpFamily probe = make_family(spec);
    domain = ThetaBox::cube(probe.dim(), *config.theta_lo, *config.theta_hi);
  }
  return make_family(spec, domain);
}

std::vector<Eigen::VectorXd> resolve_thetas(const RunConfig& config, const ExpFamily& family) {
  if (config.thetas.empty()) return family.domain().grid();
  for (const auto& theta : config.thetas)
    if (theta.size() != family.dim())
      throw UsageError("theta has " + std::to_string(theta.size()) + " components but " + family.name() +
                       " has order " + std::to_string(family.dim()));
  return config.thetas;
}

Eigen::VectorXd resolve_direction(const RunConfig& config, const ExpFamily& family) {
  if (config.direction.empty()) return Eigen::VectorXd::Ones(family.dim());
  if (static_cast<Eigen::Index>(config.direction.size()) != family.dim())
    throw UsageError("direction has the wrong number of components for " + family.name());
  return Eigen::Map<const Eigen::VectorXd>(config.direction.data(), family.dim());
}

double tolerance_for(const RunConfig& config, const std::string& quantity, double fallback) {
  if (auto it = config.tolerances.find(quantity); it != config.tolerances.end()) return it->second;
  if (auto it = config.tolerances.find("default"); it != config.tolerances.end()) return it->second;
  return fallback;
}

}  // namespace infogeo::cli
