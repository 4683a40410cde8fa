#include "bowtie/evaluate.hpp"

#include <algorithm>
#include <map>

namespace bowtie {

namespace {

/// Collects the causes of one initiating event with their conditional
/// linkages; a fixed-frequency event is its own single cause.
std::vector<InitiatorCause> causes_for(const BowTieModel& model,
                                       const InitiatingEventSpec& event) {
  std::vector<InitiatorCause> causes;
  if (event.is_derived()) {
    const Ei1Derivation derivation = derive_ei1_frequency(model, event.id);
    for (const auto& [cause_id, frequency] : derivation.by_cause) {
      causes.push_back(InitiatorCause{cause_id, frequency, {}});
    }
  } else {
    causes.push_back(InitiatorCause{event.id, *event.frequency_per_year, {}});
  }
  for (auto& cause : causes) {
    for (const auto& linkage : model.conditional_linkages) {
      if (linkage.cause_id == cause.id) cause.fail_enablers.push_back(linkage.enabler_id);
    }
  }
  return causes;
}

}  // namespace

QuantCaseResult evaluate_quantitative(const BowTieModel& model, double horizon_hours,
                                      double grid_step_hours) {
  QuantCaseResult result;
  const EventSet events = to_event_set(model);

  std::map<std::string, double> pfd_by_barrier;
  for (const auto& barrier : model.barriers) {
    const BarrierAverage average =
        barrier_pfd_avg(barrier.tree, events, horizon_hours, grid_step_hours);
    pfd_by_barrier[barrier.id] = average.pfd_avg;
    result.barriers.emplace_back(
        barrier.id, QuantBarrierMetrics{average.pfd_avg, average.risk_reduction_factor});
  }

  std::vector<PreventionTarget> targets;
  for (const auto& event : model.initiating_events) {
    const auto mapped = model.ei_barrier_map.find(event.id);
    if (mapped == model.ei_barrier_map.end()) {
      throw ModelError("initiating event '" + event.id + "' is not mapped to barriers");
    }
    PreventionTarget target;
    target.ei_id = event.id;
    target.causes = causes_for(model, event);
    for (const auto& barrier_id : mapped->second) {
      target.barrier_trees.push_back(model.barrier(barrier_id).tree);
    }
    targets.push_back(std::move(target));
  }

  const ErcFrequency erc = erc_frequency(targets, events, horizon_hours, grid_step_hours);
  result.erc_per_year = erc.total_per_year;
  result.erc_by_initiating_event = erc.by_initiating_event;

  result.phd = propagate(result.erc_per_year, model.event_tree,
                         [&pfd_by_barrier](const std::string& barrier_id) {
                           const auto it = pfd_by_barrier.find(barrier_id);
                           if (it == pfd_by_barrier.end())
                             throw ModelError("unknown barrier '" + barrier_id + "'");
                           return it->second;
                         });
  return result;
}

SemiCaseResult evaluate_semiquantitative(const BowTieModel& model) {
  SemiCaseResult result;

  SemiQuantInputs inputs;
  for (const auto& profile : model.semiquant_profiles) {
    std::vector<SemiQuantElement> elements;
    elements.reserve(profile.elements.size());
    for (const auto& element : profile.elements) {
      elements.push_back(SemiQuantElement{
          element.id, model.component(element.component_id).sff, element.complexity});
    }
    const SemiQuantBarrierProfile effective = effective_profile(
        profile.barrier_id, elements, profile.hft, profile.operator_excluded);
    const ConfidenceLevel level = nc_lookup(effective);
    inputs.factor_by_barrier[profile.barrier_id] = level.risk_reduction_factor;
    result.barriers.emplace_back(
        profile.barrier_id,
        SemiBarrierMetrics{level.value, level.risk_reduction_factor,
                           effective.complexity, effective.hft,
                           effective.sff_effective});
  }

  for (const auto& event : model.initiating_events) {
    double frequency = 0.0;
    if (event.is_derived()) {
      if (!event.semiquant_frequency_per_year) {
        throw ModelError("initiating event '" + event.id +
                         "' needs semiquant_frequency_per_year for the "
                         "semi-quantitative approach");
      }
      frequency = *event.semiquant_frequency_per_year;
    } else {
      frequency = *event.frequency_per_year;
    }
    inputs.ei_frequencies.emplace_back(event.id, frequency);
  }
  inputs.barriers_by_ei = model.ei_barrier_map;
  inputs.event_tree = model.event_tree;

  // Barriers referenced by the map or the event tree must carry a profile;
  // semiquant_propagate reports them as missing factors.
  const SemiQuantOutcome outcome = semiquant_propagate(inputs);
  result.erc_per_year = outcome.erc_per_year;
  result.erc_by_initiating_event = outcome.erc_by_initiating_event;
  result.phd = outcome.phd;
  return result;
}

EvaluationRun evaluate_model(const BowTieModel& model, const EvaluateOptions& options) {
  EvaluationRun run;
  run.model_hash = model_hash(model);
  run.horizon_hours = options.horizon_hours_override.value_or(model.evaluation.horizon_hours);
  run.grid_step_hours =
      options.grid_step_hours_override.value_or(model.evaluation.grid_step_hours);
  if (!(run.horizon_hours > 0.0)) throw DomainError("horizon must be > 0");
  if (!(run.grid_step_hours > 0.0 && run.grid_step_hours <= run.horizon_hours))
    throw DomainError("grid step must satisfy 0 < step <= horizon");

  for (const auto& barrier : model.barriers) run.barrier_order.push_back(barrier.id);

  std::vector<std::string> case_ids = options.case_ids;
  if (case_ids.empty()) {
    for (const auto& transform : model.cases) case_ids.push_back(transform.case_id);
    if (case_ids.empty()) case_ids.push_back("cas0");
  }

  for (const auto& case_id : case_ids) {
    const CaseTransform transform = model.case_transform(case_id);
    const BowTieModel scaled = apply_case(model, transform);
    CaseEvaluation evaluation;
    evaluation.case_id = case_id;
    if (options.quantitative) {
      evaluation.quant =
          evaluate_quantitative(scaled, run.horizon_hours, run.grid_step_hours);
    }
    if (options.semiquantitative) {
      evaluation.semi = evaluate_semiquantitative(scaled);
    }
    run.cases.push_back(std::move(evaluation));
  }
  return run;
}

}  // namespace bowtie
