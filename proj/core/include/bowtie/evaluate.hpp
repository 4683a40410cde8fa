#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bowtie/model.hpp"
#include "bowtie/model_io.hpp"

namespace bowtie {

/// Quantitative metrics of one barrier under one case.
struct QuantBarrierMetrics {
  double pfd_avg = 0.0;
  double risk_reduction_factor = 0.0;
};

/// Semi-quantitative metrics of one barrier under one case.
struct SemiBarrierMetrics {
  NcValue nc = NcValue::none;
  double risk_reduction_factor = 1.0;
  Complexity complexity = Complexity::simple;
  int hft = 0;
  double sff_effective = 0.0;
};

struct QuantCaseResult {
  std::vector<std::pair<std::string, QuantBarrierMetrics>> barriers;
  double erc_per_year = 0.0;
  std::vector<std::pair<std::string, double>> erc_by_initiating_event;
  PhdFrequencies phd;
};

struct SemiCaseResult {
  std::vector<std::pair<std::string, SemiBarrierMetrics>> barriers;
  double erc_per_year = 0.0;
  std::vector<std::pair<std::string, double>> erc_by_initiating_event;
  PhdFrequencies phd;
};

struct CaseEvaluation {
  std::string case_id;
  std::optional<QuantCaseResult> quant;
  std::optional<SemiCaseResult> semi;
};

struct EvaluationRun {
  std::string model_hash;
  double horizon_hours = 0.0;
  double grid_step_hours = 0.0;
  std::vector<std::string> barrier_order;  ///< model declaration order
  std::vector<CaseEvaluation> cases;
};

struct EvaluateOptions {
  bool quantitative = true;
  bool semiquantitative = true;
  std::vector<std::string> case_ids;  ///< empty: every declared case
  std::optional<double> horizon_hours_override;
  std::optional<double> grid_step_hours_override;
};

/// Evaluates the model under the requested approaches and sensitivity
/// cases. Pure: the model is not mutated; safe to call concurrently.
EvaluationRun evaluate_model(const BowTieModel& model, const EvaluateOptions& options);

/// Quantitative pipeline for one already-rescaled model.
QuantCaseResult evaluate_quantitative(const BowTieModel& model, double horizon_hours,
                                      double grid_step_hours);

/// Semi-quantitative pipeline for one already-rescaled model.
SemiCaseResult evaluate_semiquantitative(const BowTieModel& model);

}  // namespace bowtie
