#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unext/tools/app.hpp"
#include "unext/tools/config.hpp"
#include "unext/tools/cross_check.hpp"
#include "unext/tools/sweep.hpp"

namespace {

using namespace unext;
using namespace unext::tools;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "unext");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("unext_test_" + name);
}

TEST(KList, Parsing) {
  EXPECT_EQ(parse_k_list("2,3,5"), (std::vector<std::int64_t>{2, 3, 5}));
  EXPECT_EQ(parse_k_list("2..4,9"), (std::vector<std::int64_t>{2, 3, 4, 9}));
  EXPECT_THROW(parse_k_list("4..2"), std::invalid_argument);
  EXPECT_THROW(parse_k_list("2x"), std::invalid_argument);
  EXPECT_THROW(parse_k_list(""), std::invalid_argument);
}

TEST(SweepConfig, DefaultKList) {
  SweepConfig c;
  auto ks = c.effective_k_list();
  EXPECT_EQ(ks.front(), 2);
  EXPECT_EQ(ks.back(), kTbrProxyK);
  c.mode = SweepMode::BestK;
  ks = c.effective_k_list();
  EXPECT_EQ(ks.back(), 10);
  EXPECT_EQ(ks.size(), 9u);
}

TEST(SweepConfig, Validation) {
  SweepConfig c;
  c.n_min = 3;
  c.n_max = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SweepConfig{};
  c.channel = ChannelKind::Erasure;
  c.method = BoundMethod::Adaptive;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, KeyValueFile) {
  const auto path = temp_path("config.txt");
  {
    std::ofstream f(path);
    f << "# comment\nchannel = erasure\np=0.35\n\nn_max = 3\nk_list=2..4\nmode=best_k\n";
  }
  SweepConfig c;
  for (const auto& [k, v] : read_key_value_file(path.string())) apply_sweep_setting(c, k, v);
  EXPECT_EQ(c.channel, ChannelKind::Erasure);
  EXPECT_EQ(c.p, 0.35);
  EXPECT_EQ(c.n_max, 3);
  EXPECT_EQ(c.k_list.size(), 3u);
  EXPECT_EQ(c.mode, SweepMode::BestK);
  EXPECT_THROW(apply_sweep_setting(c, "colour", "red"), std::invalid_argument);
  EXPECT_THROW(apply_sweep_setting(c, "p", "0.3x"), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST(Sweep, AntidegradableRows) {
  SweepConfig c;
  c.p = 0.25;
  c.n_max = 5;
  c.k_list = {2};
  const auto rows = run_sweep(c);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.result.valid());
    EXPECT_NEAR(row.result.rate_per_use, 0.15200309344504998 / static_cast<double>(row.n), 1e-9);
  }
}

TEST(Sweep, RowOrderAndReconstruction) {
  SweepConfig c;
  c.n_min = 2;
  c.n_max = 4;
  c.k_list = {5, 2, 3};
  const auto rows = run_sweep(c);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, 2 + static_cast<std::int64_t>(i / 3));
    EXPECT_EQ(rows[i].k, (std::vector<std::int64_t>{2, 3, 5})[i % 3]);
    if (rows[i].result.valid()) {
      EXPECT_NEAR(rate_from_divergence(rows[i].result.divergence_E, rows[i].k).log2M_total,
                  rows[i].result.log2M_total, 1e-9);
    }
  }
}

TEST(Sweep, CsvShape) {
  SweepConfig c;
  c.n_max = 2;
  c.mode = SweepMode::CompareTbr;
  std::ostringstream out;
  write_csv(run_sweep(c), c.mode, out);
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "n,k,status,log2M_total,rate_per_use,divergence_E,witness_summary,tbr_rate");
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(split(ls[i]).size(), 8u);
}

TEST(Sweep, InvalidRowsHaveEmptyNumbers) {
  SweepRow row{60, 2, BoundResult{}, {}};
  EXPECT_EQ(csv_row(row, SweepMode::PerK), "60,2,invalid,,,,");
  EXPECT_EQ(csv_row(row, SweepMode::BestK), "60,,invalid,,,,");
}

TEST(Sweep, ByteIdenticalAcrossThreadCounts) {
  SweepConfig c;
  c.channel = ChannelKind::Erasure;
  c.p = 0.35;
  c.n_max = 4;
  c.k_list = {2, 3, 4};
  std::ostringstream a, b;
  ::setenv("UNEXT_MAX_THREADS", "1", 1);
  write_csv(run_sweep(c), c.mode, a);
  ::unsetenv("UNEXT_MAX_THREADS");
  write_csv(run_sweep(c), c.mode, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(NumberFormat, TwelveDigits) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(1234567.0), "1234567");
  EXPECT_EQ(format_number(unext::kInf), "inf");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"depol", "--p", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"depol", "--p", "0.15", "--n", "2"}).code, kExitOk);
  EXPECT_EQ(run({"check", "--depth", "deep"}).code, kExitUsage);
}

TEST(Cli, BadRangeWritesNothing) {
  const auto path = temp_path("never.csv");
  std::filesystem::remove(path);
  const auto r = run({"sweep", "--n_min", "3", "--n_max", "1", "--output", path.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, FlagsOverrideConfig) {
  const auto cfg = temp_path("cfg.txt");
  const auto csv = temp_path("out.csv");
  {
    std::ofstream f(cfg);
    f << "p=0.25\nn_max=3\nk_list=2\noutput=" << csv.string() << "\n";
  }
  const auto r = run({"sweep", "--config", cfg.string(), "--n_max", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(csv);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(lines(text.str()).size(), 3u);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST(Cli, PointCommands) {
  auto r = run({"psc", "--eps", "0.05", "--n", "2", "--k", "4"});
  EXPECT_EQ(r.out, "0.0497678367755\n");
  r = run({"thresholds", "--family", "werner", "--d", "3", "--k", "3"});
  EXPECT_EQ(r.out, "threshold=0.833333333333\n");
  r = run({"adaptive", "--p", "0", "--n", "3", "--k", "2"});
  EXPECT_NE(r.out.find(",invalid,"), std::string::npos);
  r = run({"erasure", "--p", "0.35", "--n", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("C0="), std::string::npos);
}

TEST(CrossCheck, QuickPasses) {
  const auto report = cross_check(CheckDepth::Quick);
  EXPECT_TRUE(report.passed());
  EXPECT_LT(report.max_np_lp_deviation, 0.0);
}

TEST(CrossCheck, FullReportsNpLpDeviation) {
  const auto report = cross_check(CheckDepth::Full);
  EXPECT_TRUE(report.passed());
  EXPECT_GE(report.max_np_lp_deviation, 0.0);
  EXPECT_LE(report.max_np_lp_deviation, 1e-8);
}

TEST(CrossCheck, SignFlipInMatrixIsCaught) {
  CheckHooks hooks;
  hooks.erasure_matrix = [](std::int64_t n, std::int64_t k) {
    Matrix m = erasure_string_matrix(n, k);
    m[1][0] = -m[1][0];
    return m;
  };
  const auto report = cross_check(CheckDepth::Full, hooks);
  EXPECT_FALSE(report.passed());
  ASSERT_EQ(report.failures(), 1u);
  for (const auto& o : report.outcomes) {
    if (o.passed) continue;
    EXPECT_EQ(o.module, "bounds");
    EXPECT_NE(o.property.find("matrix"), std::string::npos);
    EXPECT_EQ(o.inputs, "n=2 k=2");
  }
  std::ostringstream out;
  print_report(report, out);
  EXPECT_NE(out.str().find("FAIL bounds"), std::string::npos);
}

}  // namespace
