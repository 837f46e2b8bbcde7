#include "infogeo/cli/commands.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace infogeo::cli {
namespace {

using infogeo::testing::vec;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(INFOGEO_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') field += '"', ++i;
        else if (ch == '"') quoted = false;
        else field += ch;
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += ch;
      }
    }
    fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("infogeo_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

TEST(CliBinary, FisherRouteASingleRow) {
  const CliRun r = run_cli("fisher --family bernoulli --theta 0 --route A");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kCsvHeader);
  EXPECT_EQ(rows[1][0], "bernoulli");
  EXPECT_EQ(rows[1][1], "0");
  EXPECT_EQ(std::stod(rows[1][4]), 0.25);
}

TEST(CliBinary, InvarianceExamplePasses) {
  const CliRun r = run_cli("invariance --family bernoulli --theta 0 --n 1,2,4,8");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 4 * 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 7u);
    EXPECT_LT(std::abs(std::stod(rows[i][4])), 1e-9) << rows[i][3];
    EXPECT_EQ(rows[i][6], "1");
  }
}

TEST(CliBinary, CltKsDecreases) {
  const CliRun r = run_cli("clt --family bernoulli --theta 0 --n 1,4,16,64");
  ASSERT_EQ(r.code, 0);
  std::vector<double> ks;
  for (const auto& row : parse_csv(r.out))
    if (row.size() == 7 && row[3] == "ks_max") ks.push_back(std::stod(row[4]));
  ASSERT_EQ(ks.size(), 4u);
  for (std::size_t i = 1; i < ks.size(); ++i) EXPECT_LT(ks[i], ks[i - 1]);
}

TEST(CliBinary, TensorAndUniquenessPass) {
  EXPECT_EQ(run_cli("tensor --family bernoulli --n 1,2,4").code, 0);
  EXPECT_EQ(run_cli("uniqueness --family binomial --params 3 --n 1,4").code, 0);
}

TEST(CliBinary, FamiliesListing) {
  const CliRun r = run_cli("families");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0][0], "name");
}

TEST(CliBinary, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli("fisher --family nosuch").code, 1);
  EXPECT_EQ(run_cli("fisher --n 4,2").code, 1);
  EXPECT_EQ(run_cli("fisher --tol -1").code, 1);
  EXPECT_EQ(run_cli("fisher --bogus").code, 1);
  EXPECT_EQ(run_cli("").code, 1);
  EXPECT_EQ(run_cli("fisher --family binomial --params x").code, 1);
}

TEST(CliBinary, FailedCheckExitsTwo) {
  // A tolerance below the rounding level of the route-C Hessian must fail.
  const CliRun r = run_cli("fisher --family poisson_trunc --theta 0.5 --tol route_AC_gap=1e-300");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find(",0\n"), std::string::npos);
}

TEST(CliBinary, RepeatedRunsAreByteIdentical) {
  const std::string args = "uniqueness --family categorical --params 3 --n 1,2 --seed 7";
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliBinary, ConfigFileWithFlagOverride) {
  const auto cfg = temp_file("override.ini", "# demo\nfamily = binomial\nparams = 2\ntheta = 0\nroute = A\n");
  const auto out = std::filesystem::temp_directory_path() / "infogeo_test_override.csv";
  const CliRun r = run_cli("fisher --config " + cfg.string() + " --params 4 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto rows = parse_csv(text);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "binomial(4)");
  EXPECT_EQ(std::stod(rows[1][4]), 1.0);

  const auto bad = temp_file("bad.ini", "famly = bernoulli\n");
  EXPECT_EQ(run_cli("fisher --config " + bad.string()).code, 1);
}

TEST(Config, ParsesCommentsAndRepeatedTheta) {
  const auto entries = parse_config_text("; header\nfamily = bernoulli # trailing\n\ntheta = 0\ntheta = 1\n");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].second, "bernoulli");
  const RunConfig c = build_config(entries, {});
  EXPECT_EQ(c.thetas.size(), 2u);
  EXPECT_THROW(parse_config_text("no equals sign\n"), UsageError);
  EXPECT_THROW(build_config({{"colour", "red"}}, {}), UsageError);
}

TEST(Config, FlagsReplaceFileValues) {
  const RunConfig c = build_config({{"theta", "0"}, {"theta", "1"}, {"n", "1,2"}, {"tol", "A1=1e-3"}},
                                   {{"theta", "2"}, {"tol", "1e-4"}});
  ASSERT_EQ(c.thetas.size(), 1u);
  EXPECT_EQ(c.thetas[0][0], 2.0);
  EXPECT_EQ(c.n_list, (std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(tolerance_for(c, "A1", 1.0), 1e-3);
  EXPECT_DOUBLE_EQ(tolerance_for(c, "A2", 1.0), 1e-4);
  EXPECT_DOUBLE_EQ(tolerance_for(RunConfig{}, "A2", 0.5), 0.5);
}

TEST(Config, ValidationRejectsBadValues) {
  EXPECT_THROW(build_config({{"n", "2,2"}}, {}), UsageError);
  EXPECT_THROW(build_config({{"n", "0,1"}}, {}), UsageError);
  EXPECT_THROW(build_config({{"tol", "0"}}, {}), UsageError);
  EXPECT_THROW(build_config({{"theta_lo", "-1"}}, {}), UsageError);
  EXPECT_THROW(build_config({{"seed", "-3"}}, {}), UsageError);
  EXPECT_THROW(build_config({{"trials", "0"}}, {}), UsageError);
}

TEST(Config, ThetaParsingAndResolution) {
  EXPECT_FALSE(parse_theta("grid").has_value());
  const auto t = parse_theta("0.5;-1");
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->size(), 2);
  RunConfig c = build_config({{"family", "categorical(3)"}, {"theta", "1"}}, {});
  EXPECT_THROW(resolve_thetas(c, resolve_family(c)), UsageError);
  c = build_config({{"family", "bernoulli"}, {"theta_lo", "-1"}, {"theta_hi", "1"}}, {});
  EXPECT_DOUBLE_EQ(resolve_family(c).domain().upper[0], 1.0);
  EXPECT_EQ(resolve_thetas(c, resolve_family(c)).size(), 5u);
}

TEST(Csv, FormatsRealsAndQuotes) {
  EXPECT_EQ(format_real(0.25), "0.25");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(INFINITY), "inf");
  EXPECT_EQ(format_real(NAN), "nan");
  EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
  EXPECT_EQ(format_theta(vec({0.5, -1.0})), "0.5;-1");
  EXPECT_EQ(csv_field("binomial(4)"), "binomial(4)");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, RowsSortByFamilyThetaNQuantity) {
  std::vector<CsvRow> rows{check_row("b", vec({1.0}), 1, "x", 0.0, 1.0),
                           check_row("a", vec({10.0}), 2, "y", 0.0, 1.0),
                           check_row("a", vec({10.0}), 1, "z", 0.0, 1.0),
                           check_row("a", vec({9.0}), 4, "x", 0.0, 1.0)};
  sort_rows(rows);
  EXPECT_EQ(rows[0].theta, "9");
  EXPECT_EQ(rows[1].quantity, "z");
  EXPECT_EQ(rows[2].quantity, "y");
  EXPECT_EQ(rows[3].family, "b");

  const CsvRow fail = check_row("f", vec({0.0}), 1, "q", 2.0, 1.0);
  EXPECT_FALSE(fail.pass);
  EXPECT_FALSE(check_row("f", vec({0.0}), 1, "q", NAN, 1.0).pass);
  EXPECT_TRUE(report_row("f", vec({0.0}), 1, "q", 5.0).pass);

  std::ostringstream out;
  write_csv(out, {fail});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\nf,0,1,q,2,1,0\n");
  EXPECT_EQ(CommandResult{{fail}}.exit_code(), kExitFailedCheck);
}

TEST(Commands, FisherAllRoutesHasGapRows) {
  RunConfig c = build_config({{"family", "poisson_trunc(50)"}, {"theta", "0"}}, {});
  const CommandResult r = cmd_fisher(c);
  EXPECT_EQ(r.exit_code(), kExitOk);
  bool saw_gap = false;
  for (const CsvRow& row : r.rows) {
    if (row.quantity == "fisher_A[0][0]") EXPECT_NEAR(row.value, 1.0, 1e-12);
    saw_gap |= row.quantity == "route_AC_gap";
  }
  EXPECT_TRUE(saw_gap);
}

TEST(Commands, NumericalFailuresBecomeRows) {
  // n = 4 on the 201-node Hermite rule exceeds the support cap.
  RunConfig c = build_config({{"family", "gauss_known_var(201,hermite)"}, {"theta", "0"}, {"n", "1,4"}}, {});
  const CommandResult r = cmd_clt(c);
  EXPECT_EQ(r.exit_code(), kExitFailedCheck);
  bool saw_error = false;
  for (const CsvRow& row : r.rows) saw_error |= row.quantity.find(":error") != std::string::npos;
  EXPECT_TRUE(saw_error);
}

}  // namespace
}  // namespace infogeo::cli
