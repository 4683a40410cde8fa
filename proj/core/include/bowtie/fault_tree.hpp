#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bowtie/reliability.hpp"

namespace bowtie {

namespace detail {
class Bdd;
}

/// Initiators carry occurrence frequencies; enablers carry probabilities.
enum class EventRole { enabler, initiator };

/// Leaf event of a fault tree. The same event may appear in any number of
/// trees; sharing an id is the dependency mechanism between barriers.
struct BasicEvent {
  std::string id;
  UnavailabilityModel model;
  EventRole role = EventRole::enabler;
};

/// Immutable id-indexed set of basic events. Enforces the role/model
/// pairing: frequency models are initiators, probability models enablers.
class EventSet {
 public:
  void add(BasicEvent event);
  const BasicEvent* find(const std::string& id) const;
  const BasicEvent& at(const std::string& id) const;
  std::size_t size() const { return events_.size(); }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }

 private:
  std::map<std::string, BasicEvent> events_;
};

struct GateNode;
using GatePtr = std::shared_ptr<const GateNode>;

/// Coherent gate over basic events: leaf, AND, OR, or at-least-k-of-n.
/// AND == koon(n of n), OR == koon(1 of n).
struct GateNode {
  enum class Kind { leaf, gate_and, gate_or, koon };

  Kind kind = Kind::leaf;
  std::string event_id;           ///< leaf only
  int k = 0;                      ///< koon only
  std::vector<GatePtr> children;  ///< gates only

  static GatePtr leaf(std::string event_id);
  static GatePtr make_and(std::vector<GatePtr> children);
  static GatePtr make_or(std::vector<GatePtr> children);
  static GatePtr make_koon(int k, std::vector<GatePtr> children);

  bool operator==(const GateNode& other) const;
};

/// A cut set is a sorted list of basic-event ids.
using CutSet = std::vector<std::string>;

/// All minimal cut sets by top-down expansion with absorption, ordered by
/// size then lexicographically. Throws ModelError on malformed or cyclic
/// trees.
std::vector<CutSet> minimal_cut_sets(const GatePtr& tree);

/// Set of events forced to the failed state during evaluation (conditioning
/// on an initiating cause that defeats shared hardware).
class ForcedFailures {
 public:
  ForcedFailures() = default;
  explicit ForcedFailures(std::vector<std::size_t> variable_indices)
      : indices_(std::move(variable_indices)) {}
  std::span<const std::size_t> indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }

 private:
  std::vector<std::size_t> indices_;
};

/// Compiled exact evaluator for one coherent tree over an event set.
/// Builds a BDD once; each probability query is a single linear pass, so
/// dense time grids are cheap. Statistical independence is assumed between
/// distinct event ids; dependence enters only through shared ids.
class TreeEvaluator {
 public:
  TreeEvaluator(GatePtr tree, const EventSet& events);
  ~TreeEvaluator();
  TreeEvaluator(TreeEvaluator&&) noexcept;
  TreeEvaluator& operator=(TreeEvaluator&&) noexcept;
  TreeEvaluator(const TreeEvaluator&) = delete;
  TreeEvaluator& operator=(const TreeEvaluator&) = delete;

  /// Support of the tree: sorted ids of the distinct referenced events.
  const std::vector<std::string>& support() const { return support_; }

  /// Maps enabler ids onto this tree's variable indices. Ids absent from
  /// the support are ignored (forcing an event the tree does not contain
  /// is a no-op). Throws ModelError if an id names an initiator.
  ForcedFailures make_forced(std::span<const std::string> ids,
                             const EventSet& events) const;

  /// Exact P(top event at time t); not the rare-event approximation.
  double probability_at(double t_hours, Side side = Side::right,
                        const ForcedFailures& forced = {}) const;

  /// Trapezoidal time average over [0, horizon] with breakpoints at every
  /// test instant of the support.
  double average(double horizon_hours, double grid_step_hours,
                 const ForcedFailures& forced = {}) const;

 private:
  GatePtr tree_;
  std::vector<std::string> support_;
  std::vector<UnavailabilityCurve> curves_;
  std::vector<double> periods_;
  std::unique_ptr<detail::Bdd> bdd_;
  std::uint32_t root_ = 0;
};

/// One-shot exact top-event probability. For repeated queries construct a
/// TreeEvaluator instead.
double top_probability(const GatePtr& tree, const EventSet& events, double t_hours,
                       Side side = Side::right);

struct BarrierAverage {
  double pfd_avg = 0.0;
  double risk_reduction_factor = 0.0;  ///< 1 / pfd_avg
};

/// Time-averaged probability of failure on demand of a barrier tree.
BarrierAverage barrier_pfd_avg(const GatePtr& tree, const EventSet& events,
                               double horizon_hours, double grid_step_hours);

/// One initiating cause: a frequency plus the enablers its occurrence
/// defeats in the protection barriers.
struct InitiatorCause {
  std::string id;
  double frequency_per_year = 0.0;
  std::vector<std::string> fail_enablers;
};

/// One initiating event of the prevention side, mapped to the barrier trees
/// that oppose it. An empty barrier list means the event is unopposed.
struct PreventionTarget {
  std::string ei_id;
  std::vector<InitiatorCause> causes;
  std::vector<GatePtr> barrier_trees;
};

struct ErcFrequency {
  double total_per_year = 0.0;
  std::vector<std::pair<std::string, double>> by_initiating_event;
};

/// Central-undesired-event frequency:
///   sum over causes of f_cause * avg_t P(all mapped barriers fail | cause),
/// where conditioning forces the cause's linked enablers to the failed
/// state. Every evaluated scenario therefore contains exactly one
/// initiator. Throws ModelError for an event without causes.
ErcFrequency erc_frequency(std::span<const PreventionTarget> targets,
                           const EventSet& events, double horizon_hours,
                           double grid_step_hours);

}  // namespace bowtie
