#include "bowtie/report.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "bowtie/model_io.hpp"

namespace bowtie {
namespace {

TEST(Format, FrequencyRendering) {
  EXPECT_EQ(format_frequency(2.0728e-4), "2.07E-04");
  EXPECT_EQ(format_frequency(6.3e-4), "6.30E-04");
  EXPECT_EQ(format_frequency(0.0), "0.00E+00");
  EXPECT_EQ(format_frequency(1.45e-1), "1.45E-01");
}

TEST(Format, FactorRendering) {
  EXPECT_EQ(format_factor(6.9178), "6.92");
  EXPECT_EQ(format_factor(288.8643), "288.86");
  EXPECT_EQ(format_factor(10.0), "10.00");
}

class ReportTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    run_ = new EvaluationRun(evaluate_model(load_case_study(), EvaluateOptions{}));
  }
  static void TearDownTestSuite() {
    delete run_;
    run_ = nullptr;
  }
  static EvaluationRun* run_;
};

EvaluationRun* ReportTest::run_ = nullptr;

TEST_F(ReportTest, TableContainsPaperRows) {
  const std::string table = render_evaluation(*run_, OutputFormat::table);
  EXPECT_NE(table.find("SIS"), std::string::npos);
  EXPECT_NE(table.find("3.46E-03"), std::string::npos);
  EXPECT_NE(table.find("288.87"), std::string::npos);
  EXPECT_NE(table.find("NC2"), std::string::npos);
}

TEST_F(ReportTest, CsvHasEightyFrequencyCells) {
  const std::string csv = render_evaluation(*run_, OutputFormat::csv);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  EXPECT_EQ(line, "approach,metric,cas0,cas1,cas2,cas3,cas4");
  int frequency_cells = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string approach;
    std::string metric;
    std::getline(fields, approach, ',');
    std::getline(fields, metric, ',');
    if (metric == "ERC" || metric.rfind("PhD", 0) == 0) {
      std::string cell;
      while (std::getline(fields, cell, ',')) ++frequency_cells;
    }
  }
  EXPECT_EQ(frequency_cells, 80);  // 2 approaches x 5 cases x (ERC + 7 PhD)
}

TEST_F(ReportTest, CsvAndTableAgreeOnNumbers) {
  const std::string table = render_evaluation(*run_, OutputFormat::table);
  const std::string csv = render_evaluation(*run_, OutputFormat::csv);
  for (const auto& evaluation : run_->cases) {
    const std::string erc = format_frequency(evaluation.quant->erc_per_year);
    EXPECT_NE(table.find(erc), std::string::npos) << erc;
    EXPECT_NE(csv.find(erc), std::string::npos) << erc;
  }
}

TEST_F(ReportTest, DeterministicOutput) {
  const EvaluationRun again = evaluate_model(load_case_study(), EvaluateOptions{});
  EXPECT_EQ(render_evaluation(*run_, OutputFormat::table),
            render_evaluation(again, OutputFormat::table));
  EXPECT_EQ(render_evaluation(*run_, OutputFormat::csv),
            render_evaluation(again, OutputFormat::csv));
  EXPECT_EQ(render_comparison_csv(*run_), render_comparison_csv(again));
}

TEST_F(ReportTest, ComparisonCsvLayout) {
  const std::string csv = render_comparison_csv(*run_);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "case,quant_erc_per_year,semi_erc_per_year,ratio_quant_over_semi");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Report, DegenerateModelHasRatioOne) {
  // A single unprotected initiating event: both approaches reduce to the
  // bare frequency, so the comparison ratio is exactly 1.
  const std::string text = R"({
    "components": [],
    "basic_events": [],
    "barriers": [],
    "initiating_events": [
      { "id": "EI1", "frequency_per_year": 0.1 }
    ],
    "ei_barrier_map": { "EI1": [] },
    "event_tree": { "outcome": "PhD1" },
    "evaluation": { "horizon_hours": 35040.0, "grid_step_hours": 4.0 }
  })";
  const BowTieModel model = parse_model_or_throw(text);
  const EvaluationRun run = evaluate_model(model, EvaluateOptions{});
  ASSERT_EQ(run.cases.size(), 1u);
  EXPECT_DOUBLE_EQ(run.cases[0].quant->erc_per_year, 0.1);
  EXPECT_DOUBLE_EQ(run.cases[0].semi->erc_per_year, 0.1);
  const std::string csv = render_comparison_csv(run);
  EXPECT_NE(csv.find("1.00E+00"), std::string::npos);
}

}  // namespace
}  // namespace bowtie
