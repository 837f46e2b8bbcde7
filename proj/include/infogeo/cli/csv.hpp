#pragma once

#include <Eigen/Core>

#include <ostream>
#include <string>
#include <vector>

namespace infogeo::cli {

/// One line of every report. Report-only rows carry tolerance inf and pass.
struct CsvRow {
  std::string family;
  std::string theta;
  int n = 1;
  std::string quantity;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

inline constexpr const char* kCsvHeader = "family,theta,n,quantity,value,tolerance,pass";

/// Quotes the field when it contains ',', '"' or a newline.
std::string csv_field(const std::string& field);

/// 17 significant digits, '.' decimal point; inf and nan spelled out.
std::string format_real(double x);
/// Components joined with ';'.
std::string format_theta(const Eigen::VectorXd& theta);

CsvRow check_row(std::string family, const Eigen::VectorXd& theta, int n, std::string quantity,
                 double residual, double tolerance);
CsvRow report_row(std::string family, const Eigen::VectorXd& theta, int n, std::string quantity,
                  double value);

/// Orders by (family, theta, n, quantity); theta compares componentwise
/// numerically.
void sort_rows(std::vector<CsvRow>& rows);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

}  // namespace infogeo::cli
