#include "bowtie/semiquant.hpp"

#include <algorithm>
#include <cmath>

namespace bowtie {

namespace {

// NC level per (SFF bucket, HFT); 0 encodes the `none` cell.
constexpr int kSimpleTable[4][3] = {{1, 2, 3}, {2, 3, 4}, {3, 4, 4}, {3, 4, 4}};
constexpr int kComplexTable[4][3] = {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 4}};

int sff_bucket(double sff) {
  if (sff < 0.60) return 0;
  if (sff < 0.90) return 1;
  if (sff < 0.99) return 2;
  return 3;
}

}  // namespace

std::string to_string(NcValue value) {
  switch (value) {
    case NcValue::none: return "none";
    case NcValue::nc1: return "NC1";
    case NcValue::nc2: return "NC2";
    case NcValue::nc3: return "NC3";
    case NcValue::nc4: return "NC4";
  }
  return "?";
}

ConfidenceLevel nc_lookup(const SemiQuantBarrierProfile& profile) {
  if (profile.hft < 0 || profile.hft > 2)
    throw ModelError("barrier '" + profile.barrier_id + "': HFT must be 0, 1 or 2");
  if (!(profile.sff_effective >= 0.0 && profile.sff_effective < 1.0))
    throw ModelError("barrier '" + profile.barrier_id + "': SFF must be in [0,1)");
  const auto& table =
      profile.complexity == Complexity::simple ? kSimpleTable : kComplexTable;
  const int level = table[sff_bucket(profile.sff_effective)][profile.hft];
  return ConfidenceLevel{static_cast<NcValue>(level),
                         std::pow(10.0, static_cast<double>(level))};
}

SemiQuantBarrierProfile effective_profile(std::string barrier_id,
                                          std::span<const SemiQuantElement> elements,
                                          int declared_hft, bool operator_excluded) {
  if (elements.empty())
    throw ModelError("barrier '" + barrier_id + "': element list must not be empty");
  SemiQuantBarrierProfile profile;
  profile.barrier_id = std::move(barrier_id);
  profile.hft = declared_hft;
  profile.operator_excluded = operator_excluded;
  profile.complexity = Complexity::simple;
  profile.sff_effective = 1.0;
  for (const auto& element : elements) {
    if (element.complexity == Complexity::complex)
      profile.complexity = Complexity::complex;
    profile.sff_effective = std::min(profile.sff_effective, element.sff);
  }
  return profile;
}

SemiQuantOutcome semiquant_propagate(const SemiQuantInputs& inputs) {
  SemiQuantOutcome outcome;
  for (const auto& [ei_id, frequency] : inputs.ei_frequencies) {
    if (!(frequency >= 0.0))
      throw ModelError("initiating event '" + ei_id + "': frequency must be >= 0");
    const auto mapped = inputs.barriers_by_ei.find(ei_id);
    if (mapped == inputs.barriers_by_ei.end())
      throw ModelError("initiating event '" + ei_id + "' is not mapped to barriers");
    double divisor = 1.0;
    for (const auto& barrier_id : mapped->second) {
      const auto factor = inputs.factor_by_barrier.find(barrier_id);
      if (factor == inputs.factor_by_barrier.end())
        throw ModelError("barrier '" + barrier_id + "' has no risk-reduction factor");
      divisor *= factor->second;
    }
    const double contribution = frequency / divisor;
    outcome.erc_by_initiating_event.emplace_back(ei_id, contribution);
    outcome.erc_per_year += contribution;
  }
  if (inputs.event_tree) {
    outcome.phd = propagate(outcome.erc_per_year, inputs.event_tree,
                            [&inputs](const std::string& barrier_id) {
                              const auto factor =
                                  inputs.factor_by_barrier.find(barrier_id);
                              if (factor == inputs.factor_by_barrier.end())
                                throw ModelError("barrier '" + barrier_id +
                                                 "' has no risk-reduction factor");
                              return 1.0 / factor->second;
                            });
  }
  return outcome;
}

}  // namespace bowtie
