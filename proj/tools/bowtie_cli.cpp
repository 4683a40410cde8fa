// Command-line front end: evaluates a bow-tie model under the quantitative
// and/or semi-quantitative approach across sensitivity cases.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bowtie/evaluate.hpp"
#include "bowtie/model_io.hpp"
#include "bowtie/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bowtie::Error("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw bowtie::Error("cannot write output file '" + out_path + "'");
  out << text;
}

bowtie::BowTieModel load_or_report(const std::string& path) {
  const bowtie::ParseResult result = bowtie::parse_model(read_file(path));
  if (!result.ok()) {
    for (const auto& diagnostic : result.errors) {
      std::cerr << (diagnostic.path.empty() ? std::string("<document>")
                                            : diagnostic.path)
                << ": " << diagnostic.message << "\n";
    }
    throw bowtie::Error("model '" + path + "' is invalid (" +
                        std::to_string(result.errors.size()) + " error(s))");
  }
  return *result.model;
}

std::vector<std::string> resolve_cases(const bowtie::BowTieModel& model,
                                       const std::string& case_flag) {
  if (case_flag == "all") {
    std::vector<std::string> ids;
    for (const auto& transform : model.cases) ids.push_back(transform.case_id);
    if (ids.empty()) ids.push_back("cas0");
    return ids;
  }
  return {case_flag};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bow-tie probabilistic risk assessment"};
  app.require_subcommand(1);

  std::string model_path;
  std::string approach = "both";
  std::string case_flag = "cas0";
  std::string format = "table";
  std::string out_path;
  double horizon = 0.0;
  double grid_step = 0.0;

  auto add_common = [&](CLI::App* cmd, bool with_render_flags) {
    cmd->add_option("--model", model_path, "Model file path")->required();
    cmd->add_option("--case", case_flag, "Sensitivity case id, or 'all'");
    cmd->add_option("--horizon", horizon, "Override horizon (hours)");
    cmd->add_option("--grid-step", grid_step, "Override integration grid step (hours)");
    if (with_render_flags) {
      cmd->add_option("--approach", approach, "quant, semi or both")
          ->check(CLI::IsMember({"quant", "semi", "both"}));
      cmd->add_option("--format", format, "table or csv")
          ->check(CLI::IsMember({"table", "csv"}));
    }
    cmd->add_option("--out", out_path, "Output file (default: stdout)");
  };

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate barriers, ERC and PhD frequencies");
  add_common(evaluate, true);
  CLI::App* compare = app.add_subcommand("compare", "Quantitative vs semi-quantitative ERC per case");
  add_common(compare, false);
  CLI::App* validate = app.add_subcommand("validate", "Validate a model file");
  validate->add_option("--model", model_path, "Model file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const bowtie::ParseResult result = bowtie::parse_model(read_file(model_path));
      if (!result.ok()) {
        for (const auto& diagnostic : result.errors) {
          std::cout << (diagnostic.path.empty() ? std::string("<document>")
                                                : diagnostic.path)
                    << ": " << diagnostic.message << "\n";
        }
        return 1;
      }
      std::cout << "OK\n";
      return 0;
    }

    const bowtie::BowTieModel model = load_or_report(model_path);
    bowtie::EvaluateOptions options;
    options.case_ids = resolve_cases(model, case_flag);
    if (horizon > 0.0) options.horizon_hours_override = horizon;
    if (grid_step > 0.0) options.grid_step_hours_override = grid_step;

    if (compare->parsed()) {
      const bowtie::EvaluationRun run = bowtie::evaluate_model(model, options);
      write_output(bowtie::render_comparison_csv(run), out_path);
      return 0;
    }

    options.quantitative = approach != "semi";
    options.semiquantitative = approach != "quant";
    const bowtie::EvaluationRun run = bowtie::evaluate_model(model, options);
    const auto output_format =
        format == "csv" ? bowtie::OutputFormat::csv : bowtie::OutputFormat::table;
    write_output(bowtie::render_evaluation(run, output_format), out_path);
    return 0;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
