#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bowtie/event_tree.hpp"
#include "bowtie/fault_tree.hpp"
#include "bowtie/reliability.hpp"
#include "bowtie/semiquant.hpp"

namespace bowtie {

/// Declarative basic event: resolved against the component table when the
/// event set is materialized, so sensitivity cases rescale cleanly.
struct BasicEventSpec {
  enum class Kind { tested, constant, frequency };

  std::string id;
  Kind kind = Kind::tested;
  std::string component_id;                 ///< tested
  CcfRole ccf_role = CcfRole::independent;  ///< tested
  double p = 0.0;                           ///< constant
  double rate_per_year = 0.0;               ///< frequency

  bool operator==(const BasicEventSpec&) const = default;
};

struct BarrierSpec {
  std::string id;
  std::string label;
  GatePtr tree;

  bool operator==(const BarrierSpec& other) const {
    return id == other.id && label == other.label && *tree == *other.tree;
  }
};

/// Which share of a component's total failure rate a derived cause carries.
/// Initiating causes use the total rate, not the dangerous-undetected one.
enum class RateShare { total, independent, common };

/// One cause of a derived initiating event (a control-loop element).
struct DerivedCause {
  std::string id;
  std::string component_id;
  RateShare share = RateShare::total;

  bool operator==(const DerivedCause&) const = default;
};

struct InitiatingEventSpec {
  std::string id;
  std::string label;
  std::optional<double> frequency_per_year;  ///< fixed frequency
  std::vector<DerivedCause> derived_causes;  ///< derived-from-components marker
  /// Frequency the semi-quantitative approach uses for a derived event.
  std::optional<double> semiquant_frequency_per_year;

  bool is_derived() const { return !derived_causes.empty(); }

  bool operator==(const InitiatingEventSpec&) const = default;
};

/// Occurrence of `cause_id` forces `enabler_id` into the failed state in
/// every barrier opposing that initiating event (shared hardware).
struct ConditionalLinkage {
  std::string cause_id;
  std::string enabler_id;

  bool operator==(const ConditionalLinkage&) const = default;
};

struct SemiQuantElementSpec {
  std::string id;
  std::string component_id;
  Complexity complexity = Complexity::simple;

  bool operator==(const SemiQuantElementSpec&) const = default;
};

struct SemiQuantProfileSpec {
  std::string barrier_id;
  int hft = 0;
  bool operator_excluded = false;
  std::vector<SemiQuantElementSpec> elements;

  bool operator==(const SemiQuantProfileSpec&) const = default;
};

/// Multiplicative sensitivity-case transform; all scales default to 1.
struct CaseTransform {
  std::string case_id;
  double lambda_scale = 1.0;
  double sff_scale = 1.0;
  double test_interval_scale = 1.0;  ///< applies to both T1 and T2
  double beta_scale = 1.0;

  bool is_identity() const {
    return lambda_scale == 1.0 && sff_scale == 1.0 && test_interval_scale == 1.0 &&
           beta_scale == 1.0;
  }

  bool operator==(const CaseTransform&) const = default;
};

struct EvaluationSettings {
  double horizon_hours = 4.0 * kHoursPerYear;
  double grid_step_hours = 4.0;

  bool operator==(const EvaluationSettings&) const = default;
};

/// The complete declarative bow-tie model.
struct BowTieModel {
  std::vector<ComponentReliability> components;
  std::vector<BasicEventSpec> basic_events;
  std::vector<BarrierSpec> barriers;
  std::vector<InitiatingEventSpec> initiating_events;
  std::map<std::string, std::vector<std::string>> ei_barrier_map;
  std::vector<ConditionalLinkage> conditional_linkages;
  EventTreePtr event_tree;
  std::vector<SemiQuantProfileSpec> semiquant_profiles;
  std::vector<CaseTransform> cases;
  EvaluationSettings evaluation;

  const ComponentReliability& component(const std::string& id) const;
  const BarrierSpec& barrier(const std::string& id) const;
  const InitiatingEventSpec& initiating_event(const std::string& id) const;

  /// Finds a declared sensitivity case; "cas0" resolves to the identity
  /// transform when the model declares no cases at all.
  CaseTransform case_transform(const std::string& case_id) const;

  bool operator==(const BowTieModel& other) const;
};

/// Materializes the declarative events against the (possibly rescaled)
/// component table.
EventSet to_event_set(const BowTieModel& model);

/// Returns a copy with lambda, SFF, test intervals and beta scaled on every
/// component. The input is never mutated. Throws TransformError when a
/// scaled SFF reaches 1 or a scaled beta exceeds 1.
BowTieModel apply_case(const BowTieModel& model, const CaseTransform& transform);

struct Ei1Derivation {
  double total_per_year = 0.0;
  /// Cause id -> annual frequency, in declaration order.
  std::vector<std::pair<std::string, double>> by_cause;
};

/// Frequency of a derived initiating event: the sum over its control-loop
/// causes of the selected share of the component's total failure rate,
/// converted to a yearly frequency.
Ei1Derivation derive_ei1_frequency(const BowTieModel& model,
                                   const std::string& ei_id = "EI1");

}  // namespace bowtie
