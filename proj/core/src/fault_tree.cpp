#include "bowtie/fault_tree.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "bdd.hpp"

namespace bowtie {

void EventSet::add(BasicEvent event) {
  const bool is_frequency = std::holds_alternative<FrequencyModel>(event.model);
  if (is_frequency && event.role != EventRole::initiator) {
    throw ModelError("event '" + event.id + "': frequency models must be initiators");
  }
  if (!is_frequency && event.role != EventRole::enabler) {
    throw ModelError("event '" + event.id + "': probability models must be enablers");
  }
  if (const auto* constant = std::get_if<ConstantModel>(&event.model)) {
    if (!(constant->p >= 0.0 && constant->p <= 1.0))
      throw ModelError("event '" + event.id + "': probability must be in [0,1]");
  }
  if (const auto* frequency = std::get_if<FrequencyModel>(&event.model)) {
    if (!(frequency->rate_per_year >= 0.0))
      throw ModelError("event '" + event.id + "': frequency must be >= 0");
  }
  auto [it, inserted] = events_.emplace(event.id, std::move(event));
  if (!inserted) throw ModelError("duplicate event id '" + it->first + "'");
}

const BasicEvent* EventSet::find(const std::string& id) const {
  auto it = events_.find(id);
  return it == events_.end() ? nullptr : &it->second;
}

const BasicEvent& EventSet::at(const std::string& id) const {
  if (const BasicEvent* event = find(id)) return *event;
  throw ModelError("unknown basic event '" + id + "'");
}

GatePtr GateNode::leaf(std::string event_id) {
  auto node = std::make_shared<GateNode>();
  node->kind = Kind::leaf;
  node->event_id = std::move(event_id);
  return node;
}

GatePtr GateNode::make_and(std::vector<GatePtr> children) {
  auto node = std::make_shared<GateNode>();
  node->kind = Kind::gate_and;
  node->children = std::move(children);
  return node;
}

GatePtr GateNode::make_or(std::vector<GatePtr> children) {
  auto node = std::make_shared<GateNode>();
  node->kind = Kind::gate_or;
  node->children = std::move(children);
  return node;
}

GatePtr GateNode::make_koon(int k, std::vector<GatePtr> children) {
  auto node = std::make_shared<GateNode>();
  node->kind = Kind::koon;
  node->k = k;
  node->children = std::move(children);
  return node;
}

bool GateNode::operator==(const GateNode& other) const {
  if (kind != other.kind || event_id != other.event_id || k != other.k ||
      children.size() != other.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!(*children[i] == *other.children[i])) return false;
  }
  return true;
}

namespace {

void validate_tree(const GateNode* node, std::unordered_set<const GateNode*>& path) {
  if (node == nullptr) throw ModelError("null gate node");
  if (!path.insert(node).second) throw ModelError("cyclic gate reference");
  switch (node->kind) {
    case GateNode::Kind::leaf:
      if (node->event_id.empty()) throw ModelError("leaf with empty event id");
      break;
    case GateNode::Kind::gate_and:
    case GateNode::Kind::gate_or:
      if (node->children.empty()) throw ModelError("gate with no children");
      break;
    case GateNode::Kind::koon:
      if (node->children.empty()) throw ModelError("koon gate with no children");
      if (node->k < 1 || static_cast<std::size_t>(node->k) > node->children.size())
        throw ModelError("koon gate requires 1 <= k <= number of children (k=" +
                         std::to_string(node->k) + ", children=" +
                         std::to_string(node->children.size()) + ")");
      break;
  }
  for (const auto& child : node->children) validate_tree(child.get(), path);
  path.erase(node);
}

void collect_support(const GateNode* node, std::set<std::string>& ids) {
  if (node->kind == GateNode::Kind::leaf) {
    ids.insert(node->event_id);
    return;
  }
  for (const auto& child : node->children) collect_support(child.get(), ids);
}

// --- minimal cut sets -------------------------------------------------

using IndexCut = std::vector<int>;  // sorted variable indices

IndexCut merge_cuts(const IndexCut& a, const IndexCut& b) {
  IndexCut out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexCut& small, const IndexCut& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Removes duplicates and absorbed (superset) cut sets.
std::vector<IndexCut> minimize(std::vector<IndexCut> cuts) {
  std::sort(cuts.begin(), cuts.end(), [](const IndexCut& a, const IndexCut& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<IndexCut> kept;
  for (auto& candidate : cuts) {
    bool absorbed = false;
    for (const auto& smaller : kept) {
      if (is_subset(smaller, candidate)) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(std::move(candidate));
  }
  return kept;
}

std::vector<IndexCut> cross_product(const std::vector<IndexCut>& lhs,
                                    const std::vector<IndexCut>& rhs) {
  std::vector<IndexCut> out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs) {
    for (const auto& b : rhs) out.push_back(merge_cuts(a, b));
  }
  return minimize(std::move(out));
}

std::vector<IndexCut> expand_cuts(const GateNode* node,
                                  const std::map<std::string, int>& index_of) {
  switch (node->kind) {
    case GateNode::Kind::leaf:
      return {{index_of.at(node->event_id)}};
    case GateNode::Kind::gate_or: {
      std::vector<IndexCut> out;
      for (const auto& child : node->children) {
        auto cuts = expand_cuts(child.get(), index_of);
        out.insert(out.end(), std::make_move_iterator(cuts.begin()),
                   std::make_move_iterator(cuts.end()));
      }
      return minimize(std::move(out));
    }
    case GateNode::Kind::gate_and: {
      std::vector<IndexCut> out{{}};
      for (const auto& child : node->children) {
        out = cross_product(out, expand_cuts(child.get(), index_of));
      }
      return out;
    }
    case GateNode::Kind::koon: {
      // At least k of n sub-functions: union over all k-subsets of the
      // conjunction of the chosen children.
      std::vector<std::vector<IndexCut>> child_cuts;
      child_cuts.reserve(node->children.size());
      for (const auto& child : node->children) {
        child_cuts.push_back(expand_cuts(child.get(), index_of));
      }
      const std::size_t n = child_cuts.size();
      const std::size_t k = static_cast<std::size_t>(node->k);
      std::vector<IndexCut> out;
      std::vector<std::size_t> chosen(k);
      // Iterative k-combination enumeration in lexicographic order.
      for (std::size_t i = 0; i < k; ++i) chosen[i] = i;
      while (true) {
        std::vector<IndexCut> combo{{}};
        for (std::size_t i : chosen) combo = cross_product(combo, child_cuts[i]);
        out.insert(out.end(), std::make_move_iterator(combo.begin()),
                   std::make_move_iterator(combo.end()));
        std::size_t pos = k;
        while (pos > 0 && chosen[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++chosen[pos - 1];
        for (std::size_t i = pos; i < k; ++i) chosen[i] = chosen[i - 1] + 1;
      }
      return minimize(std::move(out));
    }
  }
  throw ModelError("unknown gate kind");
}

std::vector<std::string> sorted_support(const GatePtr& tree) {
  std::set<std::string> ids;
  collect_support(tree.get(), ids);
  return {ids.begin(), ids.end()};
}

}  // namespace

std::vector<CutSet> minimal_cut_sets(const GatePtr& tree) {
  std::unordered_set<const GateNode*> path;
  validate_tree(tree.get(), path);

  const auto support = sorted_support(tree);
  std::map<std::string, int> index_of;
  for (std::size_t i = 0; i < support.size(); ++i) {
    index_of[support[i]] = static_cast<int>(i);
  }

  auto cuts = minimize(expand_cuts(tree.get(), index_of));
  std::vector<CutSet> out;
  out.reserve(cuts.size());
  for (const auto& cut : cuts) {
    CutSet named;
    named.reserve(cut.size());
    for (int index : cut) named.push_back(support[static_cast<std::size_t>(index)]);
    out.push_back(std::move(named));
  }
  std::sort(out.begin(), out.end(), [](const CutSet& a, const CutSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// --- TreeEvaluator ----------------------------------------------------

namespace {

detail::Bdd::Ref build_bdd(const GateNode* node, detail::Bdd& bdd,
                           const std::map<std::string, int>& index_of) {
  switch (node->kind) {
    case GateNode::Kind::leaf:
      return bdd.var(index_of.at(node->event_id));
    case GateNode::Kind::gate_and: {
      auto result = detail::Bdd::kTrue;
      for (const auto& child : node->children) {
        result = bdd.apply_and(result, build_bdd(child.get(), bdd, index_of));
      }
      return result;
    }
    case GateNode::Kind::gate_or: {
      auto result = detail::Bdd::kFalse;
      for (const auto& child : node->children) {
        result = bdd.apply_or(result, build_bdd(child.get(), bdd, index_of));
      }
      return result;
    }
    case GateNode::Kind::koon: {
      std::vector<detail::Bdd::Ref> items;
      items.reserve(node->children.size());
      for (const auto& child : node->children) {
        items.push_back(build_bdd(child.get(), bdd, index_of));
      }
      return bdd.at_least(node->k, items);
    }
  }
  throw ModelError("unknown gate kind");
}

}  // namespace

TreeEvaluator::TreeEvaluator(GatePtr tree, const EventSet& events)
    : tree_(std::move(tree)), bdd_(std::make_unique<detail::Bdd>()) {
  std::unordered_set<const GateNode*> path;
  validate_tree(tree_.get(), path);
  support_ = sorted_support(tree_);

  std::map<std::string, int> index_of;
  curves_.reserve(support_.size());
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const BasicEvent& event = events.at(support_[i]);
    if (event.role == EventRole::initiator) {
      throw MisuseError("tree references initiator '" + event.id +
                        "'; probability evaluation needs enabler leaves only");
    }
    curves_.emplace_back(event.model);
    curves_.back().collect_periods(periods_);
    index_of[support_[i]] = static_cast<int>(i);
  }
  std::sort(periods_.begin(), periods_.end());
  periods_.erase(std::unique(periods_.begin(), periods_.end()), periods_.end());

  root_ = build_bdd(tree_.get(), *bdd_, index_of);
}

TreeEvaluator::~TreeEvaluator() = default;
TreeEvaluator::TreeEvaluator(TreeEvaluator&&) noexcept = default;
TreeEvaluator& TreeEvaluator::operator=(TreeEvaluator&&) noexcept = default;

ForcedFailures TreeEvaluator::make_forced(std::span<const std::string> ids,
                                          const EventSet& events) const {
  std::vector<std::size_t> indices;
  for (const auto& id : ids) {
    const BasicEvent& event = events.at(id);
    if (event.role != EventRole::enabler) {
      throw ModelError("conditional linkage targets initiator '" + id +
                       "'; a scenario may contain only one initiator");
    }
    const auto it = std::lower_bound(support_.begin(), support_.end(), id);
    if (it != support_.end() && *it == id) {
      indices.push_back(static_cast<std::size_t>(it - support_.begin()));
    }
  }
  return ForcedFailures(std::move(indices));
}

double TreeEvaluator::probability_at(double t_hours, Side side,
                                     const ForcedFailures& forced) const {
  if (t_hours < 0.0) throw DomainError("time must be >= 0");
  std::vector<double> q(curves_.size());
  for (std::size_t i = 0; i < curves_.size(); ++i) q[i] = curves_[i].at(t_hours, side);
  for (std::size_t index : forced.indices()) q[index] = 1.0;
  return bdd_->evaluate(root_, q);
}

double TreeEvaluator::average(double horizon_hours, double grid_step_hours,
                              const ForcedFailures& forced) const {
  const auto grid = build_time_grid(periods_, horizon_hours, grid_step_hours);
  CompensatedSum integral;
  double right = probability_at(grid.front(), Side::right, forced);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double left_next = probability_at(grid[i + 1], Side::left, forced);
    integral += 0.5 * (right + left_next) * (grid[i + 1] - grid[i]);
    right = probability_at(grid[i + 1], Side::right, forced);
  }
  return integral.value() / horizon_hours;
}

double top_probability(const GatePtr& tree, const EventSet& events, double t_hours,
                       Side side) {
  return TreeEvaluator(tree, events).probability_at(t_hours, side);
}

BarrierAverage barrier_pfd_avg(const GatePtr& tree, const EventSet& events,
                               double horizon_hours, double grid_step_hours) {
  const TreeEvaluator evaluator(tree, events);
  const double pfd = evaluator.average(horizon_hours, grid_step_hours);
  if (pfd > 1.0) throw DomainError("PFDavg exceeds 1; model is inconsistent");
  return BarrierAverage{pfd, 1.0 / pfd};
}

ErcFrequency erc_frequency(std::span<const PreventionTarget> targets,
                           const EventSet& events, double horizon_hours,
                           double grid_step_hours) {
  ErcFrequency result;
  for (const auto& target : targets) {
    if (target.causes.empty()) {
      throw ModelError("initiating event '" + target.ei_id +
                       "' has no initiator cause");
    }
    double contribution = 0.0;
    if (target.barrier_trees.empty()) {
      // Unopposed event: the conditional barrier-failure probability is 1.
      for (const auto& cause : target.causes) {
        if (cause.frequency_per_year < 0.0)
          throw ModelError("cause '" + cause.id + "': frequency must be >= 0");
        contribution += cause.frequency_per_year;
      }
    } else {
      GatePtr joint = target.barrier_trees.size() == 1
                          ? target.barrier_trees.front()
                          : GateNode::make_and(target.barrier_trees);
      const TreeEvaluator evaluator(joint, events);
      for (const auto& cause : target.causes) {
        if (cause.frequency_per_year < 0.0)
          throw ModelError("cause '" + cause.id + "': frequency must be >= 0");
        const auto forced = evaluator.make_forced(cause.fail_enablers, events);
        contribution += cause.frequency_per_year *
                        evaluator.average(horizon_hours, grid_step_hours, forced);
      }
    }
    result.by_initiating_event.emplace_back(target.ei_id, contribution);
    result.total_per_year += contribution;
  }
  return result;
}

}  // namespace bowtie
