#include "bowtie/model.hpp"

#include <algorithm>

namespace bowtie {

const ComponentReliability& BowTieModel::component(const std::string& id) const {
  for (const auto& c : components) {
    if (c.id == id) return c;
  }
  throw ModelError("unknown component '" + id + "'");
}

const BarrierSpec& BowTieModel::barrier(const std::string& id) const {
  for (const auto& b : barriers) {
    if (b.id == id) return b;
  }
  throw ModelError("unknown barrier '" + id + "'");
}

const InitiatingEventSpec& BowTieModel::initiating_event(const std::string& id) const {
  for (const auto& e : initiating_events) {
    if (e.id == id) return e;
  }
  throw ModelError("unknown initiating event '" + id + "'");
}

CaseTransform BowTieModel::case_transform(const std::string& case_id) const {
  for (const auto& c : cases) {
    if (c.case_id == case_id) return c;
  }
  if (cases.empty() && case_id == "cas0") return CaseTransform{"cas0"};
  throw ModelError("unknown sensitivity case '" + case_id + "'");
}

bool BowTieModel::operator==(const BowTieModel& other) const {
  const bool tree_equal =
      (event_tree == nullptr) == (other.event_tree == nullptr) &&
      (event_tree == nullptr || *event_tree == *other.event_tree);
  return components == other.components && basic_events == other.basic_events &&
         barriers == other.barriers && initiating_events == other.initiating_events &&
         ei_barrier_map == other.ei_barrier_map &&
         conditional_linkages == other.conditional_linkages && tree_equal &&
         semiquant_profiles == other.semiquant_profiles && cases == other.cases &&
         evaluation == other.evaluation;
}

EventSet to_event_set(const BowTieModel& model) {
  EventSet events;
  for (const auto& spec : model.basic_events) {
    BasicEvent event;
    event.id = spec.id;
    switch (spec.kind) {
      case BasicEventSpec::Kind::tested:
        event.model = TestedModel{model.component(spec.component_id), spec.ccf_role};
        event.role = EventRole::enabler;
        break;
      case BasicEventSpec::Kind::constant:
        event.model = ConstantModel{spec.p};
        event.role = EventRole::enabler;
        break;
      case BasicEventSpec::Kind::frequency:
        event.model = FrequencyModel{spec.rate_per_year};
        event.role = EventRole::initiator;
        break;
    }
    events.add(std::move(event));
  }
  return events;
}

BowTieModel apply_case(const BowTieModel& model, const CaseTransform& transform) {
  if (!(transform.lambda_scale > 0.0 && transform.sff_scale > 0.0 &&
        transform.test_interval_scale > 0.0 && transform.beta_scale > 0.0)) {
    throw TransformError("case '" + transform.case_id + "': scales must be > 0");
  }
  BowTieModel scaled = model;
  for (auto& component : scaled.components) {
    component.lambda_total *= transform.lambda_scale;
    component.sff *= transform.sff_scale;
    if (component.sff >= 1.0) {
      throw TransformError("case '" + transform.case_id + "': component '" +
                           component.id + "' SFF reaches " +
                           std::to_string(component.sff) + " (must stay < 1)");
    }
    component.t1_hours *= transform.test_interval_scale;
    if (component.partial_test) {
      component.partial_test->t2_hours *= transform.test_interval_scale;
    }
    if (component.beta) {
      *component.beta *= transform.beta_scale;
      if (*component.beta > 1.0) {
        throw TransformError("case '" + transform.case_id + "': component '" +
                             component.id + "' beta exceeds 1");
      }
    }
  }
  return scaled;
}

Ei1Derivation derive_ei1_frequency(const BowTieModel& model, const std::string& ei_id) {
  const InitiatingEventSpec& event = model.initiating_event(ei_id);
  if (!event.is_derived()) {
    throw MisuseError("initiating event '" + ei_id +
                      "' is not derived from components");
  }
  Ei1Derivation derivation;
  for (const auto& cause : event.derived_causes) {
    const ComponentReliability& component = model.component(cause.component_id);
    const double beta = component.beta.value_or(0.0);
    double rate = component.lambda_total;
    switch (cause.share) {
      case RateShare::total:
        break;
      case RateShare::independent:
        rate *= 1.0 - beta;
        break;
      case RateShare::common:
        if (!(beta > 0.0)) {
          throw ModelError("cause '" + cause.id + "': common share requires beta > 0 on '" +
                           component.id + "'");
        }
        rate *= beta;
        break;
    }
    const double frequency = rate * kHoursPerYear;
    derivation.by_cause.emplace_back(cause.id, frequency);
    derivation.total_per_year += frequency;
  }
  return derivation;
}

}  // namespace bowtie
