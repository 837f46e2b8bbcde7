#include "infogeo/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <tuple>

namespace infogeo::cli {

namespace {

std::vector<double> theta_key(const std::string& theta) {
  std::vector<double> key;
  std::size_t start = 0;
  while (start <= theta.size()) {
    const auto end = theta.find(';', start);
    const std::string part = theta.substr(start, end == std::string::npos ? std::string::npos : end - start);
    char* tail = nullptr;
    const double v = std::strtod(part.c_str(), &tail);
    key.push_back(tail != part.c_str() ? v : std::numeric_limits<double>::infinity());
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return key;
}

}  // namespace

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_theta(const Eigen::VectorXd& theta) {
  std::string out;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (i) out += ';';
    out += format_real(theta[i]);
  }
  return out;
}

CsvRow check_row(std::string family, const Eigen::VectorXd& theta, int n, std::string quantity,
                 double residual, double tolerance) {
  const bool pass = std::isfinite(residual) && std::abs(residual) <= tolerance;
  return {std::move(family), format_theta(theta), n, std::move(quantity), residual, tolerance, pass};
}

CsvRow report_row(std::string family, const Eigen::VectorXd& theta, int n, std::string quantity,
                  double value) {
  return {std::move(family), format_theta(theta), n, std::move(quantity), value,
          std::numeric_limits<double>::infinity(), true};
}

void sort_rows(std::vector<CsvRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::forward_as_tuple(a.family, theta_key(a.theta), a.n, a.quantity) <
           std::forward_as_tuple(b.family, theta_key(b.theta), b.n, b.quantity);
  });
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const CsvRow& row : rows) {
    out << csv_field(row.family) << ',' << row.theta << ',' << row.n << ',' << csv_field(row.quantity) << ','
        << format_real(row.value) << ',' << format_real(row.tolerance) << ',' << (row.pass ? 1 : 0) << '\n';
  }
}

}  // namespace infogeo::cli
