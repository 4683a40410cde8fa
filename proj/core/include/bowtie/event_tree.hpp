#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "bowtie/errors.hpp"

namespace bowtie {

/// Constant conditional or on-demand probability.
struct ConstantProb {
  double value = 0.0;

  bool operator==(const ConstantProb&) const = default;
};

/// Probability taken from a barrier's time-averaged failure probability
/// (quantitative mode) or from the inverse of its risk-reduction factor
/// (semi-quantitative mode).
struct BarrierRefProb {
  std::string barrier_id;

  bool operator==(const BarrierRefProb&) const = default;
};

using BranchProbability = std::variant<ConstantProb, BarrierRefProb>;

struct EventTreeNode;
using EventTreePtr = std::shared_ptr<const EventTreeNode>;

/// Consequence-side tree: each branch splits on an event with probability
/// p_yes, each leaf is a labeled dangerous-phenomenon outcome.
struct EventTreeNode {
  bool is_outcome = false;
  std::string label;  ///< branch event name, or outcome (PhD) label
  BranchProbability p_yes = ConstantProb{0.0};
  EventTreePtr yes;
  EventTreePtr no;

  static EventTreePtr branch(std::string label, BranchProbability p_yes,
                             EventTreePtr yes, EventTreePtr no);
  static EventTreePtr outcome(std::string label);

  bool operator==(const EventTreeNode& other) const;
};

/// Outcome label -> annual frequency, deterministically ordered.
using PhdFrequencies = std::map<std::string, double>;

/// Resolves a BarrierRefProb to a failure probability.
using BarrierProbabilityResolver = std::function<double(const std::string&)>;

/// Checks that the tree is complete and outcome labels are unique.
void validate_event_tree(const EventTreePtr& tree);

/// Each outcome frequency is erc_per_year times the product of the branch
/// probabilities along its path; P(yes) + P(no) = 1 at every branch, so the
/// outcome frequencies sum to erc_per_year.
PhdFrequencies propagate(double erc_per_year, const EventTreePtr& tree,
                         const BarrierProbabilityResolver& resolver = {});

}  // namespace bowtie
