#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rcec_cli/commands.hpp"
#include "rcec_cli/csv_io.hpp"

namespace rcec::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rcec_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SimulateThenEstimate) {
  ASSERT_EQ(run({"simulate", "--case", "1", "--n", "60", "--p", "10", "--out", path("x.csv"), "--seed", "3"}),
            kExitOk)
      << err_.str();
  const auto table = read_csv_file(path("x.csv"));
  EXPECT_EQ(table.values.rows(), 60);
  EXPECT_EQ(table.columns.front(), "taxon1");
  const auto meta = nlohmann::json::parse(slurp(path("x.csv.meta.json")));
  EXPECT_EQ(meta["seed"], 3);

  ASSERT_EQ(run({"estimate", path("x.csv"), "--out", path("fit")}), kExitOk) << err_.str();
  for (const char* f : {"omega.csv", "cv_curve.csv", "edges.json", "report.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "fit" / f)) << f;
  }
  const auto omega = read_csv_file(path("fit/omega.csv"), true);
  EXPECT_EQ(omega.values.rows(), 10);
  EXPECT_EQ(omega.values, omega.values.transpose());
  const auto report = nlohmann::json::parse(slurp(path("fit/report.json")));
  EXPECT_EQ(report["estimator"], "rcec");
  EXPECT_EQ(report["p"], 10);
  EXPECT_EQ(report["n"], 60);
  const auto edges = nlohmann::json::parse(slurp(path("fit/edges.json")));
  EXPECT_EQ(edges["edges"].size(), report["edges"].get<std::size_t>());
  EXPECT_TRUE(edges["stability"].is_null());
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  ASSERT_EQ(run({"simulate", "--case", "3", "--n", "50", "--p", "8", "--out", path("x.csv")}), kExitOk);
  const std::string first = slurp(path("x.csv"));
  ASSERT_EQ(run({"simulate", "--case", "3", "--n", "50", "--p", "8", "--out", path("x.csv")}), kExitOk);
  EXPECT_EQ(first, slurp(path("x.csv")));

  ASSERT_EQ(run({"estimate", path("x.csv"), "--out", path("a")}), kExitOk);
  ASSERT_EQ(run({"estimate", path("x.csv"), "--out", path("b")}), kExitOk);
  for (const char* f : {"omega.csv", "cv_curve.csv", "edges.json"}) {
    EXPECT_EQ(slurp(path(std::string("a/") + f)), slurp(path(std::string("b/") + f))) << f;
  }
}

TEST_F(CliTest, EstimatorSwitch) {
  ASSERT_EQ(run({"simulate", "--case", "4", "--n", "60", "--p", "10", "--out", path("x.csv")}), kExitOk);
  ASSERT_EQ(run({"estimate", path("x.csv"), "--out", path("r")}), kExitOk);
  ASSERT_EQ(run({"estimate", path("x.csv"), "--estimator", "coat", "--out", path("c")}), kExitOk);
  EXPECT_NE(slurp(path("r/omega.csv")), slurp(path("c/omega.csv")));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("c/report.json")))["block_count"], 1);
}

TEST_F(CliTest, CountsInput) {
  write("counts.csv", "a,b,c\n0,5,10\n3,0,7\n4,4,0\n1,2,3\n5,6,7\n8,9,1\n2,2,2\n3,1,4\n1,5,9\n2,6,5\n9,9,9\n4,0,1\n");
  EXPECT_EQ(run({"estimate", path("counts.csv"), "--out", path("fit")}), kExitData);
  ASSERT_EQ(run({"estimate", path("counts.csv"), "--counts", "--out", path("fit")}), kExitOk) << err_.str();
  const auto omega = read_csv_file(path("fit/omega.csv"), true);
  ASSERT_EQ(omega.values.rows(), 3);
  EXPECT_EQ(omega.values, omega.values.transpose());
  const auto report = nlohmann::json::parse(slurp(path("fit/report.json")));
  EXPECT_EQ(report["input_kind"], "counts");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"simulate", "--case", "5", "--out", path("x.csv")}), kExitUsage);
  EXPECT_EQ(run({"simulate", "--case", "1", "--p", "7", "--out", path("x.csv")}), kExitUsage);
  EXPECT_EQ(run({"estimate", path("missing.csv")}), kExitUsage);
  EXPECT_EQ(run({"estimate", path("x.csv"), "--bogus"}), kExitUsage);

  write("bad.csv", "a,b\n0.5,0.5\n0.5,oops\n");
  EXPECT_EQ(run({"estimate", path("bad.csv")}), kExitUsage);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();

  write("notclosed.csv", "a,b\n0.5,0.6\n0.5,0.5\n");
  EXPECT_EQ(run({"estimate", path("notclosed.csv")}), kExitData);

  write("cfg.txt", "folds = 1\n");
  write("ok.csv", "a,b\n0.5,0.5\n0.4,0.6\n");
  EXPECT_EQ(run({"estimate", path("ok.csv"), "--config", path("cfg.txt")}), kExitUsage);
}

TEST_F(CliTest, BenchmarkOutputs) {
  ASSERT_EQ(run({"benchmark", "--cases", "1,2", "--n", "40", "--p", "8", "--reps", "2", "--estimators",
                 "rcec,coat", "--out", path("bench")}),
            kExitOk)
      << err_.str();
  const std::string csv = slurp(path("bench/results.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "case,p,estimator,metric,mean,sd,replications,seed");
  EXPECT_TRUE(fs::exists(dir_ / "bench" / "results.md"));
  EXPECT_TRUE(fs::exists(dir_ / "bench" / "replications.csv"));
}

TEST_F(CliTest, DiagonalOmegaSmokeCase) {
  ASSERT_EQ(run({"benchmark", "--cases", "1", "--n", "100", "--p", "50", "--reps", "3", "--estimators", "rcec",
                 "--diagonal-omega", "--out", path("bench")}),
            kExitOk)
      << err_.str();
  std::istringstream csv(slurp(path("bench/results.csv")));
  std::string line;
  double tpr_degenerate = -1;
  double fpr = -1;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (cells.size() < 5) continue;
    if (cells[3] == "tpr_degenerate") tpr_degenerate = std::stod(cells[4]);
    if (cells[3] == "fpr") fpr = std::stod(cells[4]);
  }
  EXPECT_EQ(tpr_degenerate, 1.0);
  EXPECT_GE(fpr, 0.0);
  EXPECT_LT(fpr, 0.01);
}

TEST_F(CliTest, SimulatedRowsAreClosed) {
  ASSERT_EQ(run({"simulate", "--case", "1", "--n", "100", "--p", "50", "--seed", "7", "--out", path("x.csv")}),
            kExitOk);
  const auto t = read_csv_file(path("x.csv"));
  ASSERT_EQ(t.values.rows(), 100);
  ASSERT_EQ(t.values.cols(), 50);
  EXPECT_LT((t.values.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
}

TEST_F(CliTest, StabilityOutput) {
  ASSERT_EQ(run({"simulate", "--case", "1", "--n", "60", "--p", "10", "--out", path("x.csv")}), kExitOk);
  ASSERT_EQ(run({"stability", path("x.csv"), "--B", "3", "--retain", "2", "--reuse-lambda", "--out",
                 path("s.json")}),
            kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_TRUE(j["stability"].is_number());
  for (const auto& e : j["edges"]) EXPECT_GE(e["occurrences"].get<int>(), 2);
  EXPECT_EQ(j["positives"].get<std::size_t>() + j["negatives"].get<std::size_t>(), j["edges"].size());
  EXPECT_EQ(j["metadata"]["B"], 3);
  EXPECT_EQ(j["metadata"]["retain_threshold"], 2);
  EXPECT_EQ(run({"stability", path("x.csv"), "--B", "3", "--retain", "5"}), kExitUsage);
}

TEST(CsvReader, HeaderQuotingBomAndLineEndings) {
  std::istringstream in("\xEF\xBB\xBF\"x, 1\",y\r\n1,2\r\n3,4\r\n");
  const auto t = read_csv(in, "mem");
  ASSERT_EQ(t.columns.size(), 2u);
  EXPECT_EQ(t.columns[0], "x, 1");
  EXPECT_EQ(t.values(1, 1), 4.0);
}

TEST(CsvReader, RowNames) {
  std::istringstream in("id,a,b\ns1,1,2\ns2,3,4\n");
  const auto t = read_csv(in, "mem", true);
  EXPECT_EQ(t.row_names, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(t.columns, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(t.values(0, 1), 2.0);
}

TEST(CsvReader, Diagnostics) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged, "mem"), CsvParseError);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty, "mem"), CsvParseError);
  std::istringstream text("a,b\n1,2\n3,x4\n");
  try {
    read_csv(text, "mem");
    FAIL();
  } catch (const CsvParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
}

TEST(CsvFormat, FullPrecisionRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125}) EXPECT_EQ(std::stod(format_full(v)), v);
  EXPECT_EQ(format_report(1.0 / 3.0), "0.333333");
}

}  // namespace
}  // namespace rcec::cli
