#include "bowtie/event_tree.hpp"

#include <set>

namespace bowtie {

EventTreePtr EventTreeNode::branch(std::string label, BranchProbability p_yes,
                                   EventTreePtr yes, EventTreePtr no) {
  auto node = std::make_shared<EventTreeNode>();
  node->is_outcome = false;
  node->label = std::move(label);
  node->p_yes = std::move(p_yes);
  node->yes = std::move(yes);
  node->no = std::move(no);
  return node;
}

EventTreePtr EventTreeNode::outcome(std::string label) {
  auto node = std::make_shared<EventTreeNode>();
  node->is_outcome = true;
  node->label = std::move(label);
  return node;
}

bool EventTreeNode::operator==(const EventTreeNode& other) const {
  if (is_outcome != other.is_outcome || label != other.label) return false;
  if (is_outcome) return true;
  if (!(p_yes == other.p_yes)) return false;
  return *yes == *other.yes && *no == *other.no;
}

namespace {

void check_node(const EventTreeNode* node, std::set<std::string>& outcomes) {
  if (node == nullptr) throw ModelError("event tree has a missing branch child");
  if (node->is_outcome) {
    if (node->label.empty()) throw ModelError("event-tree outcome with empty label");
    if (!outcomes.insert(node->label).second)
      throw ModelError("duplicate outcome label '" + node->label + "'");
    return;
  }
  check_node(node->yes.get(), outcomes);
  check_node(node->no.get(), outcomes);
}

double resolve(const BranchProbability& p, const std::string& label,
               const BarrierProbabilityResolver& resolver) {
  if (const auto* constant = std::get_if<ConstantProb>(&p)) {
    if (!(constant->value >= 0.0 && constant->value <= 1.0))
      throw ModelError("branch '" + label + "': probability outside [0,1]");
    return constant->value;
  }
  const auto& ref = std::get<BarrierRefProb>(p);
  if (!resolver)
    throw ModelError("branch '" + label + "' references barrier '" +
                     ref.barrier_id + "' but no resolver was supplied");
  const double value = resolver(ref.barrier_id);
  if (!(value >= 0.0 && value <= 1.0))
    throw ModelError("branch '" + label + "': resolved probability outside [0,1]");
  return value;
}

void walk(const EventTreeNode* node, double frequency,
          const BarrierProbabilityResolver& resolver, PhdFrequencies& out) {
  if (node->is_outcome) {
    out[node->label] += frequency;
    return;
  }
  const double p = resolve(node->p_yes, node->label, resolver);
  walk(node->yes.get(), frequency * p, resolver, out);
  walk(node->no.get(), frequency * (1.0 - p), resolver, out);
}

}  // namespace

void validate_event_tree(const EventTreePtr& tree) {
  if (!tree) throw ModelError("event tree is empty");
  std::set<std::string> outcomes;
  check_node(tree.get(), outcomes);
}

PhdFrequencies propagate(double erc_per_year, const EventTreePtr& tree,
                         const BarrierProbabilityResolver& resolver) {
  if (!(erc_per_year >= 0.0)) throw DomainError("ERC frequency must be >= 0");
  validate_event_tree(tree);
  PhdFrequencies out;
  walk(tree.get(), erc_per_year, resolver, out);
  return out;
}

}  // namespace bowtie
