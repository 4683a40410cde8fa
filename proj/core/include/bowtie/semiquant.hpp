#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bowtie/errors.hpp"
#include "bowtie/event_tree.hpp"

namespace bowtie {

/// Simple: no microprocessor. Complex: with microprocessor.
enum class Complexity { simple, complex };

/// Omega 10 confidence level. `none` is the empty cell of the complex/HFT 0
/// table row below 60% SFF: no risk reduction may be credited.
enum class NcValue { none, nc1, nc2, nc3, nc4 };

std::string to_string(NcValue value);

struct ConfidenceLevel {
  NcValue value = NcValue::none;
  double risk_reduction_factor = 1.0;  ///< 10^n for NCn, 1 for none

  bool operator==(const ConfidenceLevel&) const = default;
};

/// Attributes that determine a barrier's maximal confidence level.
struct SemiQuantBarrierProfile {
  std::string barrier_id;
  Complexity complexity = Complexity::simple;
  int hft = 0;                  ///< hardware fault tolerance, 0..2
  double sff_effective = 0.0;   ///< most penalizing SFF among credited elements
  bool operator_excluded = false;  ///< human action not part of the SFF
};

/// One credited element of a barrier, for profile aggregation.
struct SemiQuantElement {
  std::string id;
  double sff = 0.0;
  Complexity complexity = Complexity::simple;
};

/// Maximal NC from the (complexity, SFF bucket, HFT) tables. Buckets are
/// <60%, 60-90%, 90-99%, >=99%. Total over valid profiles.
ConfidenceLevel nc_lookup(const SemiQuantBarrierProfile& profile);

/// Aggregates element attributes into a barrier profile: complex if any
/// element is complex, SFF is the minimum over credited elements, HFT is
/// the declared engineering judgment and is passed through.
SemiQuantBarrierProfile effective_profile(std::string barrier_id,
                                          std::span<const SemiQuantElement> elements,
                                          int declared_hft, bool operator_excluded);

/// Inputs for division-based propagation through the bow-tie.
struct SemiQuantInputs {
  /// Initiating-event frequencies per year, in model order.
  std::vector<std::pair<std::string, double>> ei_frequencies;
  /// Initiating event -> ids of the barriers opposing it.
  std::map<std::string, std::vector<std::string>> barriers_by_ei;
  /// Barrier -> risk-reduction factor.
  std::map<std::string, double> factor_by_barrier;
  EventTreePtr event_tree;
};

struct SemiQuantOutcome {
  double erc_per_year = 0.0;
  std::vector<std::pair<std::string, double>> erc_by_initiating_event;
  PhdFrequencies phd;
};

/// ERC = sum over initiating events of f / product of the factors of the
/// mapped barriers; PhD frequencies by event-tree propagation, where a
/// barrier-sourced branch probability resolves to 1 / factor.
SemiQuantOutcome semiquant_propagate(const SemiQuantInputs& inputs);

}  // namespace bowtie
