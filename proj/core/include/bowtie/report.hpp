#pragma once

#include <string>

#include "bowtie/evaluate.hpp"

namespace bowtie {

enum class OutputFormat { table, csv };

/// Scientific notation with 3 significant digits: 2.07E-04.
std::string format_frequency(double value);

/// Fixed-point with 2 decimals: 288.86.
std::string format_factor(double value);

/// Renders an evaluation run. Identical runs produce byte-identical output;
/// CSV and table renderings agree on every number to the printed precision.
std::string render_evaluation(const EvaluationRun& run, OutputFormat format);

/// Per case: quantitative ERC, semi-quantitative ERC and their ratio.
/// Requires both approaches in the run.
std::string render_comparison_csv(const EvaluationRun& run);

}  // namespace bowtie
