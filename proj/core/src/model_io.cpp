#include "bowtie/model_io.hpp"

#include <cstdint>
#include <set>
#include <utility>

#include <json.hpp>

namespace bowtie {

namespace detail {
const std::string& case_study_json_text();  // generated from models/
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Collector {
 public:
  void add(std::string path, std::string message) {
    diagnostics_.push_back(Diagnostic{std::move(path), std::move(message)});
  }
  bool empty() const { return diagnostics_.empty(); }
  std::vector<Diagnostic> take() { return std::move(diagnostics_); }

 private:
  std::vector<Diagnostic> diagnostics_;
};

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json* require_object(const json& j, const std::string& path, Collector& diags) {
  if (!j.is_object()) {
    diags.add(path, "must be an object");
    return nullptr;
  }
  return &j;
}

const json* require_array(const json& parent, const char* key, const std::string& path,
                          Collector& diags, bool required) {
  const std::string full = path.empty() ? key : path + "." + key;
  if (!parent.contains(key)) {
    if (required) diags.add(full, "missing required section");
    return nullptr;
  }
  if (!parent[key].is_array()) {
    diags.add(full, "must be an array");
    return nullptr;
  }
  return &parent[key];
}

std::optional<std::string> get_string(const json& obj, const char* key,
                                      const std::string& path, Collector& diags,
                                      bool required) {
  if (!obj.contains(key)) {
    if (required) diags.add(path + "." + key, "missing required string");
    return std::nullopt;
  }
  if (!obj[key].is_string()) {
    diags.add(path + "." + key, "must be a string");
    return std::nullopt;
  }
  return obj[key].get<std::string>();
}

std::optional<double> get_number(const json& obj, const char* key,
                                 const std::string& path, Collector& diags,
                                 bool required) {
  if (!obj.contains(key)) {
    if (required) diags.add(path + "." + key, "missing required number");
    return std::nullopt;
  }
  if (!obj[key].is_number()) {
    diags.add(path + "." + key, "must be a number");
    return std::nullopt;
  }
  return obj[key].get<double>();
}

std::optional<bool> get_bool(const json& obj, const char* key, const std::string& path,
                             Collector& diags) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj[key].is_boolean()) {
    diags.add(path + "." + key, "must be a boolean");
    return std::nullopt;
  }
  return obj[key].get<bool>();
}

// --- section parsers ----------------------------------------------------

void parse_components(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "components", "", diags, true);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("components", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    ComponentReliability component;
    component.id = get_string(*obj, "id", path, diags, true).value_or("");
    component.lambda_total =
        get_number(*obj, "lambda_per_hour", path, diags, true).value_or(0.0);
    component.sff = get_number(*obj, "sff", path, diags, true).value_or(0.0);
    component.t1_hours = get_number(*obj, "t1_hours", path, diags, true).value_or(0.0);
    if (obj->contains("partial_test")) {
      const json* pt = require_object((*obj)["partial_test"], path + ".partial_test", diags);
      if (pt) {
        PartialTest partial;
        partial.t2_hours =
            get_number(*pt, "t2_hours", path + ".partial_test", diags, true).value_or(0.0);
        partial.ptc = get_number(*pt, "ptc", path + ".partial_test", diags, true).value_or(0.0);
        component.partial_test = partial;
      }
    }
    if (obj->contains("beta")) {
      component.beta = get_number(*obj, "beta", path, diags, true);
    }

    if (!(component.lambda_total > 0.0))
      diags.add(path + ".lambda_per_hour", "must be > 0");
    if (!(component.sff >= 0.0 && component.sff < 1.0))
      diags.add(path + ".sff", "must be in [0,1)");
    if (!(component.t1_hours > 0.0)) diags.add(path + ".t1_hours", "must be > 0");
    if (component.partial_test) {
      if (!(component.partial_test->t2_hours > 0.0 &&
            component.partial_test->t2_hours < component.t1_hours))
        diags.add(path + ".partial_test.t2_hours", "must satisfy 0 < t2 < t1");
      if (!(component.partial_test->ptc > 0.0 && component.partial_test->ptc <= 1.0))
        diags.add(path + ".partial_test.ptc", "must be in (0,1]");
    }
    if (component.beta && !(*component.beta >= 0.0 && *component.beta <= 1.0))
      diags.add(path + ".beta", "must be in [0,1]");
    model.components.push_back(std::move(component));
  }
}

void parse_basic_events(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "basic_events", "", diags, true);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("basic_events", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    BasicEventSpec spec;
    spec.id = get_string(*obj, "id", path, diags, true).value_or("");
    const std::string kind = get_string(*obj, "kind", path, diags, true).value_or("");
    if (kind == "tested") {
      spec.kind = BasicEventSpec::Kind::tested;
      spec.component_id = get_string(*obj, "component", path, diags, true).value_or("");
      const std::string role =
          get_string(*obj, "ccf_role", path, diags, false).value_or("independent");
      if (role == "independent") {
        spec.ccf_role = CcfRole::independent;
      } else if (role == "common") {
        spec.ccf_role = CcfRole::common;
      } else {
        diags.add(path + ".ccf_role", "must be 'independent' or 'common'");
      }
    } else if (kind == "constant") {
      spec.kind = BasicEventSpec::Kind::constant;
      spec.p = get_number(*obj, "p", path, diags, true).value_or(0.0);
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) diags.add(path + ".p", "must be in [0,1]");
    } else if (kind == "frequency") {
      spec.kind = BasicEventSpec::Kind::frequency;
      spec.rate_per_year = get_number(*obj, "rate_per_year", path, diags, true).value_or(0.0);
      if (!(spec.rate_per_year >= 0.0)) diags.add(path + ".rate_per_year", "must be >= 0");
    } else if (!kind.empty()) {
      diags.add(path + ".kind", "must be 'tested', 'constant' or 'frequency'");
    }
    model.basic_events.push_back(std::move(spec));
  }
}

GatePtr parse_gate(const json& j, const std::string& path, Collector& diags) {
  if (!j.is_object()) {
    diags.add(path, "gate must be an object");
    return nullptr;
  }
  const int discriminators = static_cast<int>(j.contains("event")) +
                             static_cast<int>(j.contains("and")) +
                             static_cast<int>(j.contains("or")) +
                             static_cast<int>(j.contains("koon"));
  if (discriminators != 1) {
    diags.add(path, "gate must have exactly one of 'event', 'and', 'or', 'koon'");
    return nullptr;
  }
  if (j.contains("event")) {
    if (!j["event"].is_string()) {
      diags.add(path + ".event", "must be a string");
      return nullptr;
    }
    return GateNode::leaf(j["event"].get<std::string>());
  }
  const auto parse_children = [&](const json& array, const std::string& child_path) {
    std::vector<GatePtr> children;
    for (std::size_t i = 0; i < array.size(); ++i) {
      if (GatePtr child = parse_gate(array[i], index_path(child_path, i), diags)) {
        children.push_back(std::move(child));
      }
    }
    return children;
  };
  if (j.contains("and") || j.contains("or")) {
    const bool conjunction = j.contains("and");
    const char* key = conjunction ? "and" : "or";
    if (!j[key].is_array() || j[key].empty()) {
      diags.add(path + "." + key, "must be a non-empty array of gates");
      return nullptr;
    }
    auto children = parse_children(j[key], path + "." + key);
    if (children.size() != j[key].size()) return nullptr;
    return conjunction ? GateNode::make_and(std::move(children))
                       : GateNode::make_or(std::move(children));
  }
  const json* koon = require_object(j["koon"], path + ".koon", diags);
  if (!koon) return nullptr;
  const auto k = get_number(*koon, "k", path + ".koon", diags, true);
  if (!koon->contains("children") || !(*koon)["children"].is_array() ||
      (*koon)["children"].empty()) {
    diags.add(path + ".koon.children", "must be a non-empty array of gates");
    return nullptr;
  }
  auto children = parse_children((*koon)["children"], path + ".koon.children");
  if (!k || children.size() != (*koon)["children"].size()) return nullptr;
  const int k_int = static_cast<int>(*k);
  if (static_cast<double>(k_int) != *k || k_int < 1 ||
      static_cast<std::size_t>(k_int) > children.size()) {
    diags.add(path + ".koon.k",
              "must be an integer with 1 <= k <= number of children (k=" +
                  std::to_string(*k) + ", children=" +
                  std::to_string(children.size()) + ")");
    return nullptr;
  }
  return GateNode::make_koon(k_int, std::move(children));
}

void parse_barriers(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "barriers", "", diags, true);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("barriers", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    BarrierSpec barrier;
    barrier.id = get_string(*obj, "id", path, diags, true).value_or("");
    barrier.label = get_string(*obj, "label", path, diags, false).value_or("");
    if (!obj->contains("tree")) {
      diags.add(path + ".tree", "missing fault tree");
      continue;
    }
    barrier.tree = parse_gate((*obj)["tree"], path + ".tree", diags);
    if (!barrier.tree) continue;
    model.barriers.push_back(std::move(barrier));
  }
}

void parse_initiating_events(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "initiating_events", "", diags, true);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("initiating_events", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    InitiatingEventSpec spec;
    spec.id = get_string(*obj, "id", path, diags, true).value_or("");
    spec.label = get_string(*obj, "label", path, diags, false).value_or("");
    const bool has_fixed = obj->contains("frequency_per_year");
    const bool has_derived = obj->contains("derived_from_components");
    if (has_fixed == has_derived) {
      diags.add(path, "must have exactly one of 'frequency_per_year' and "
                      "'derived_from_components'");
      continue;
    }
    if (has_fixed) {
      spec.frequency_per_year = get_number(*obj, "frequency_per_year", path, diags, true);
      if (spec.frequency_per_year && !(*spec.frequency_per_year >= 0.0))
        diags.add(path + ".frequency_per_year", "must be >= 0");
    } else {
      const json* derived = require_object((*obj)["derived_from_components"],
                                           path + ".derived_from_components", diags);
      if (!derived) continue;
      const json* causes = require_array(*derived, "causes",
                                         path + ".derived_from_components", diags, true);
      if (!causes) continue;
      if (causes->empty()) {
        diags.add(path + ".derived_from_components.causes",
                  "control loop must not be empty");
        continue;
      }
      for (std::size_t c = 0; c < causes->size(); ++c) {
        const std::string cause_path =
            index_path(path + ".derived_from_components.causes", c);
        const json* cause_obj = require_object((*causes)[c], cause_path, diags);
        if (!cause_obj) continue;
        DerivedCause cause;
        cause.id = get_string(*cause_obj, "id", cause_path, diags, true).value_or("");
        cause.component_id =
            get_string(*cause_obj, "component", cause_path, diags, true).value_or("");
        const std::string share =
            get_string(*cause_obj, "share", cause_path, diags, false).value_or("total");
        if (share == "total") {
          cause.share = RateShare::total;
        } else if (share == "independent") {
          cause.share = RateShare::independent;
        } else if (share == "common") {
          cause.share = RateShare::common;
        } else {
          diags.add(cause_path + ".share",
                    "must be 'total', 'independent' or 'common'");
        }
        spec.derived_causes.push_back(std::move(cause));
      }
    }
    if (obj->contains("semiquant_frequency_per_year")) {
      spec.semiquant_frequency_per_year =
          get_number(*obj, "semiquant_frequency_per_year", path, diags, true);
      if (spec.semiquant_frequency_per_year &&
          !(*spec.semiquant_frequency_per_year >= 0.0))
        diags.add(path + ".semiquant_frequency_per_year", "must be >= 0");
    }
    model.initiating_events.push_back(std::move(spec));
  }
}

void parse_ei_barrier_map(const json& root, BowTieModel& model, Collector& diags) {
  if (!root.contains("ei_barrier_map")) {
    diags.add("ei_barrier_map", "missing required section");
    return;
  }
  const json& map = root["ei_barrier_map"];
  if (!map.is_object()) {
    diags.add("ei_barrier_map", "must be an object");
    return;
  }
  for (const auto& [key, value] : map.items()) {
    const std::string path = "ei_barrier_map." + key;
    if (!value.is_array()) {
      diags.add(path, "must be an array of barrier ids");
      continue;
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!value[i].is_string()) {
        diags.add(index_path(path, i), "must be a string");
        continue;
      }
      ids.push_back(value[i].get<std::string>());
    }
    model.ei_barrier_map[key] = std::move(ids);
  }
}

void parse_linkages(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "conditional_linkages", "", diags, false);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("conditional_linkages", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    ConditionalLinkage linkage;
    linkage.cause_id = get_string(*obj, "cause", path, diags, true).value_or("");
    linkage.enabler_id = get_string(*obj, "enabler", path, diags, true).value_or("");
    model.conditional_linkages.push_back(std::move(linkage));
  }
}

EventTreePtr parse_event_tree_node(const json& j, const std::string& path,
                                   Collector& diags) {
  if (!j.is_object()) {
    diags.add(path, "event-tree node must be an object");
    return nullptr;
  }
  if (j.contains("outcome")) {
    if (!j["outcome"].is_string()) {
      diags.add(path + ".outcome", "must be a string");
      return nullptr;
    }
    return EventTreeNode::outcome(j["outcome"].get<std::string>());
  }
  const auto label = get_string(j, "branch", path, diags, true);
  if (!label) return nullptr;
  BranchProbability p_yes = ConstantProb{0.0};
  if (!j.contains("p_yes")) {
    diags.add(path + ".p_yes", "missing branch probability");
    return nullptr;
  }
  if (j["p_yes"].is_number()) {
    const double value = j["p_yes"].get<double>();
    if (!(value >= 0.0 && value <= 1.0)) {
      diags.add(path + ".p_yes", "must be in [0,1]");
      return nullptr;
    }
    p_yes = ConstantProb{value};
  } else if (j["p_yes"].is_object() && j["p_yes"].contains("barrier") &&
             j["p_yes"]["barrier"].is_string()) {
    p_yes = BarrierRefProb{j["p_yes"]["barrier"].get<std::string>()};
  } else {
    diags.add(path + ".p_yes", "must be a number or {\"barrier\": id}");
    return nullptr;
  }
  if (!j.contains("yes") || !j.contains("no")) {
    diags.add(path, "branch must have 'yes' and 'no' children");
    return nullptr;
  }
  EventTreePtr yes = parse_event_tree_node(j["yes"], path + ".yes", diags);
  EventTreePtr no = parse_event_tree_node(j["no"], path + ".no", diags);
  if (!yes || !no) return nullptr;
  return EventTreeNode::branch(*label, std::move(p_yes), std::move(yes), std::move(no));
}

void parse_semiquant(const json& root, BowTieModel& model, Collector& diags) {
  if (!root.contains("semiquant")) return;
  const json* section = require_object(root["semiquant"], "semiquant", diags);
  if (!section) return;
  const json* items = require_array(*section, "profiles", "semiquant", diags, true);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("semiquant.profiles", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    SemiQuantProfileSpec profile;
    profile.barrier_id = get_string(*obj, "barrier", path, diags, true).value_or("");
    const auto hft = get_number(*obj, "hft", path, diags, true);
    profile.hft = hft ? static_cast<int>(*hft) : 0;
    if (hft && (static_cast<double>(profile.hft) != *hft || profile.hft < 0 ||
                profile.hft > 2))
      diags.add(path + ".hft", "must be 0, 1 or 2");
    profile.operator_excluded = get_bool(*obj, "operator_excluded", path, diags)
                                    .value_or(false);
    const json* elements = require_array(*obj, "elements", path, diags, true);
    if (!elements) continue;
    if (elements->empty()) {
      diags.add(path + ".elements", "must not be empty");
      continue;
    }
    for (std::size_t e = 0; e < elements->size(); ++e) {
      const std::string element_path = index_path(path + ".elements", e);
      const json* element_obj = require_object((*elements)[e], element_path, diags);
      if (!element_obj) continue;
      SemiQuantElementSpec element;
      element.id = get_string(*element_obj, "id", element_path, diags, true).value_or("");
      element.component_id =
          get_string(*element_obj, "component", element_path, diags, true).value_or("");
      const std::string complexity =
          get_string(*element_obj, "complexity", element_path, diags, true).value_or("");
      if (complexity == "simple") {
        element.complexity = Complexity::simple;
      } else if (complexity == "complex") {
        element.complexity = Complexity::complex;
      } else if (!complexity.empty()) {
        diags.add(element_path + ".complexity", "must be 'simple' or 'complex'");
      }
      profile.elements.push_back(std::move(element));
    }
    model.semiquant_profiles.push_back(std::move(profile));
  }
}

void parse_cases(const json& root, BowTieModel& model, Collector& diags) {
  const json* items = require_array(root, "cases", "", diags, false);
  if (!items) return;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const std::string path = index_path("cases", i);
    const json* obj = require_object((*items)[i], path, diags);
    if (!obj) continue;
    CaseTransform transform;
    transform.case_id = get_string(*obj, "id", path, diags, true).value_or("");
    transform.lambda_scale = get_number(*obj, "lambda_scale", path, diags, false).value_or(1.0);
    transform.sff_scale = get_number(*obj, "sff_scale", path, diags, false).value_or(1.0);
    transform.test_interval_scale =
        get_number(*obj, "test_interval_scale", path, diags, false).value_or(1.0);
    transform.beta_scale = get_number(*obj, "beta_scale", path, diags, false).value_or(1.0);
    if (!(transform.lambda_scale > 0.0)) diags.add(path + ".lambda_scale", "must be > 0");
    if (!(transform.sff_scale > 0.0)) diags.add(path + ".sff_scale", "must be > 0");
    if (!(transform.test_interval_scale > 0.0))
      diags.add(path + ".test_interval_scale", "must be > 0");
    if (!(transform.beta_scale > 0.0)) diags.add(path + ".beta_scale", "must be > 0");
    model.cases.push_back(std::move(transform));
  }
}

void parse_evaluation(const json& root, BowTieModel& model, Collector& diags) {
  if (!root.contains("evaluation")) return;  // defaults apply
  const json* section = require_object(root["evaluation"], "evaluation", diags);
  if (!section) return;
  model.evaluation.horizon_hours =
      get_number(*section, "horizon_hours", "evaluation", diags, true)
          .value_or(model.evaluation.horizon_hours);
  model.evaluation.grid_step_hours =
      get_number(*section, "grid_step_hours", "evaluation", diags, true)
          .value_or(model.evaluation.grid_step_hours);
  if (!(model.evaluation.horizon_hours > 0.0))
    diags.add("evaluation.horizon_hours", "must be > 0");
  if (!(model.evaluation.grid_step_hours > 0.0 &&
        model.evaluation.grid_step_hours <= model.evaluation.horizon_hours))
    diags.add("evaluation.grid_step_hours", "must satisfy 0 < step <= horizon");
}

// --- cross-reference validation ------------------------------------------

void collect_gate_leaves(const GateNode* node, std::vector<std::string>& out) {
  if (node->kind == GateNode::Kind::leaf) {
    out.push_back(node->event_id);
    return;
  }
  for (const auto& child : node->children) collect_gate_leaves(child.get(), out);
}

void collect_barrier_refs(const EventTreeNode* node, std::vector<std::string>& out) {
  if (node == nullptr || node->is_outcome) return;
  if (const auto* ref = std::get_if<BarrierRefProb>(&node->p_yes))
    out.push_back(ref->barrier_id);
  collect_barrier_refs(node->yes.get(), out);
  collect_barrier_refs(node->no.get(), out);
}

void validate_references(BowTieModel& model, Collector& diags) {
  std::set<std::string> component_ids;
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    if (!component_ids.insert(model.components[i].id).second)
      diags.add(index_path("components", i) + ".id",
                "duplicate component id '" + model.components[i].id + "'");
  }

  std::set<std::string> event_ids;
  std::set<std::string> enabler_ids;
  for (std::size_t i = 0; i < model.basic_events.size(); ++i) {
    const auto& event = model.basic_events[i];
    const std::string path = index_path("basic_events", i);
    if (!event_ids.insert(event.id).second)
      diags.add(path + ".id", "duplicate event id '" + event.id + "'");
    if (event.kind != BasicEventSpec::Kind::frequency) enabler_ids.insert(event.id);
    if (event.kind == BasicEventSpec::Kind::tested) {
      if (!component_ids.contains(event.component_id)) {
        diags.add(path + ".component",
                  "unknown component '" + event.component_id + "'");
      } else if (event.ccf_role == CcfRole::common) {
        const auto& component = model.component(event.component_id);
        if (!component.beta || !(*component.beta > 0.0))
          diags.add(path + ".ccf_role",
                    "common role requires beta > 0 on component '" +
                        event.component_id + "'");
      }
    }
  }

  std::set<std::string> barrier_ids;
  for (std::size_t i = 0; i < model.barriers.size(); ++i) {
    const auto& barrier = model.barriers[i];
    const std::string path = index_path("barriers", i);
    if (!barrier_ids.insert(barrier.id).second)
      diags.add(path + ".id", "duplicate barrier id '" + barrier.id + "'");
    std::vector<std::string> leaves;
    collect_gate_leaves(barrier.tree.get(), leaves);
    for (const auto& leaf : leaves) {
      if (!event_ids.contains(leaf)) {
        diags.add(path + ".tree", "unknown basic event '" + leaf + "'");
      } else if (!enabler_ids.contains(leaf)) {
        diags.add(path + ".tree",
                  "initiator '" + leaf + "' may not appear in a barrier tree");
      }
    }
  }

  std::set<std::string> ei_ids;
  std::set<std::string> cause_ids;
  for (std::size_t i = 0; i < model.initiating_events.size(); ++i) {
    const auto& event = model.initiating_events[i];
    const std::string path = index_path("initiating_events", i);
    if (!ei_ids.insert(event.id).second)
      diags.add(path + ".id", "duplicate initiating event id '" + event.id + "'");
    if (event.is_derived()) {
      for (std::size_t c = 0; c < event.derived_causes.size(); ++c) {
        const auto& cause = event.derived_causes[c];
        const std::string cause_path =
            index_path(path + ".derived_from_components.causes", c);
        if (!cause_ids.insert(cause.id).second)
          diags.add(cause_path + ".id", "duplicate cause id '" + cause.id + "'");
        if (!component_ids.contains(cause.component_id)) {
          diags.add(cause_path + ".component",
                    "unknown component '" + cause.component_id + "'");
        } else if (cause.share == RateShare::common ||
                   cause.share == RateShare::independent) {
          const auto& component = model.component(cause.component_id);
          if (cause.share == RateShare::common &&
              (!component.beta || !(*component.beta > 0.0)))
            diags.add(cause_path + ".share",
                      "common share requires beta > 0 on component '" +
                          cause.component_id + "'");
        }
      }
    } else {
      cause_ids.insert(event.id);  // a fixed event is its own single cause
    }
  }

  for (const auto& [ei_id, barriers] : model.ei_barrier_map) {
    const std::string path = "ei_barrier_map." + ei_id;
    if (!ei_ids.contains(ei_id))
      diags.add(path, "unknown initiating event '" + ei_id + "'");
    for (std::size_t i = 0; i < barriers.size(); ++i) {
      if (!barrier_ids.contains(barriers[i]))
        diags.add(index_path(path, i), "unknown barrier '" + barriers[i] + "'");
    }
  }
  for (const auto& event : model.initiating_events) {
    if (!model.ei_barrier_map.contains(event.id))
      diags.add("ei_barrier_map",
                "initiating event '" + event.id +
                    "' is not mapped (map it to [] for no protection)");
  }

  for (std::size_t i = 0; i < model.conditional_linkages.size(); ++i) {
    const auto& linkage = model.conditional_linkages[i];
    const std::string path = index_path("conditional_linkages", i);
    if (!cause_ids.contains(linkage.cause_id))
      diags.add(path + ".cause", "unknown initiator cause '" + linkage.cause_id + "'");
    if (!event_ids.contains(linkage.enabler_id)) {
      diags.add(path + ".enabler", "unknown basic event '" + linkage.enabler_id + "'");
    } else if (!enabler_ids.contains(linkage.enabler_id)) {
      diags.add(path + ".enabler",
                "linkage must target an enabler, not initiator '" +
                    linkage.enabler_id + "'");
    }
  }

  if (model.event_tree) {
    try {
      validate_event_tree(model.event_tree);
    } catch (const ModelError& error) {
      diags.add("event_tree", error.what());
    }
    std::vector<std::string> refs;
    collect_barrier_refs(model.event_tree.get(), refs);
    for (const auto& ref : refs) {
      if (!barrier_ids.contains(ref))
        diags.add("event_tree", "unknown barrier '" + ref + "'");
    }
  }

  std::set<std::string> profiled;
  for (std::size_t i = 0; i < model.semiquant_profiles.size(); ++i) {
    const auto& profile = model.semiquant_profiles[i];
    const std::string path = index_path("semiquant.profiles", i);
    if (!barrier_ids.contains(profile.barrier_id))
      diags.add(path + ".barrier", "unknown barrier '" + profile.barrier_id + "'");
    if (!profiled.insert(profile.barrier_id).second)
      diags.add(path + ".barrier",
                "duplicate profile for barrier '" + profile.barrier_id + "'");
    for (std::size_t e = 0; e < profile.elements.size(); ++e) {
      if (!component_ids.contains(profile.elements[e].component_id))
        diags.add(index_path(path + ".elements", e) + ".component",
                  "unknown component '" + profile.elements[e].component_id + "'");
    }
  }

  std::set<std::string> case_ids;
  for (std::size_t i = 0; i < model.cases.size(); ++i) {
    if (!case_ids.insert(model.cases[i].case_id).second)
      diags.add(index_path("cases", i) + ".id",
                "duplicate case id '" + model.cases[i].case_id + "'");
  }
}

// --- serialization --------------------------------------------------------

ordered_json gate_to_json(const GateNode* node) {
  ordered_json j;
  switch (node->kind) {
    case GateNode::Kind::leaf:
      j["event"] = node->event_id;
      break;
    case GateNode::Kind::gate_and:
    case GateNode::Kind::gate_or: {
      ordered_json children = ordered_json::array();
      for (const auto& child : node->children) children.push_back(gate_to_json(child.get()));
      j[node->kind == GateNode::Kind::gate_and ? "and" : "or"] = std::move(children);
      break;
    }
    case GateNode::Kind::koon: {
      ordered_json children = ordered_json::array();
      for (const auto& child : node->children) children.push_back(gate_to_json(child.get()));
      j["koon"] = ordered_json{{"k", node->k}, {"children", std::move(children)}};
      break;
    }
  }
  return j;
}

ordered_json event_tree_to_json(const EventTreeNode* node) {
  ordered_json j;
  if (node->is_outcome) {
    j["outcome"] = node->label;
    return j;
  }
  j["branch"] = node->label;
  if (const auto* constant = std::get_if<ConstantProb>(&node->p_yes)) {
    j["p_yes"] = constant->value;
  } else {
    j["p_yes"] = ordered_json{{"barrier", std::get<BarrierRefProb>(node->p_yes).barrier_id}};
  }
  j["yes"] = event_tree_to_json(node->yes.get());
  j["no"] = event_tree_to_json(node->no.get());
  return j;
}

}  // namespace

ParseResult parse_model(std::string_view text) {
  ParseResult result;
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    result.errors.push_back(Diagnostic{"", "document is not valid JSON"});
    return result;
  }
  if (!root.is_object()) {
    result.errors.push_back(Diagnostic{"", "top level must be an object"});
    return result;
  }

  Collector diags;
  BowTieModel model;
  parse_components(root, model, diags);
  parse_basic_events(root, model, diags);
  parse_barriers(root, model, diags);
  parse_initiating_events(root, model, diags);
  parse_ei_barrier_map(root, model, diags);
  parse_linkages(root, model, diags);
  if (root.contains("event_tree")) {
    model.event_tree = parse_event_tree_node(root["event_tree"], "event_tree", diags);
  } else {
    diags.add("event_tree", "missing required section");
  }
  parse_semiquant(root, model, diags);
  parse_cases(root, model, diags);
  parse_evaluation(root, model, diags);
  validate_references(model, diags);

  if (!diags.empty()) {
    result.errors = diags.take();
    return result;
  }
  result.model = std::move(model);
  return result;
}

BowTieModel parse_model_or_throw(std::string_view text) {
  ParseResult result = parse_model(text);
  if (!result.ok()) throw ValidationError(std::move(result.errors));
  return std::move(*result.model);
}

std::string serialize_model(const BowTieModel& model) {
  ordered_json root;

  ordered_json components = ordered_json::array();
  for (const auto& c : model.components) {
    ordered_json j{{"id", c.id},
                   {"lambda_per_hour", c.lambda_total},
                   {"sff", c.sff},
                   {"t1_hours", c.t1_hours}};
    if (c.partial_test)
      j["partial_test"] = ordered_json{{"t2_hours", c.partial_test->t2_hours},
                                       {"ptc", c.partial_test->ptc}};
    if (c.beta) j["beta"] = *c.beta;
    components.push_back(std::move(j));
  }
  root["components"] = std::move(components);

  ordered_json events = ordered_json::array();
  for (const auto& e : model.basic_events) {
    ordered_json j{{"id", e.id}};
    switch (e.kind) {
      case BasicEventSpec::Kind::tested:
        j["kind"] = "tested";
        j["component"] = e.component_id;
        j["ccf_role"] = e.ccf_role == CcfRole::common ? "common" : "independent";
        break;
      case BasicEventSpec::Kind::constant:
        j["kind"] = "constant";
        j["p"] = e.p;
        break;
      case BasicEventSpec::Kind::frequency:
        j["kind"] = "frequency";
        j["rate_per_year"] = e.rate_per_year;
        break;
    }
    events.push_back(std::move(j));
  }
  root["basic_events"] = std::move(events);

  ordered_json barriers = ordered_json::array();
  for (const auto& b : model.barriers) {
    ordered_json j{{"id", b.id}};
    if (!b.label.empty()) j["label"] = b.label;
    j["tree"] = gate_to_json(b.tree.get());
    barriers.push_back(std::move(j));
  }
  root["barriers"] = std::move(barriers);

  ordered_json initiating = ordered_json::array();
  for (const auto& e : model.initiating_events) {
    ordered_json j{{"id", e.id}};
    if (!e.label.empty()) j["label"] = e.label;
    if (e.frequency_per_year) j["frequency_per_year"] = *e.frequency_per_year;
    if (e.is_derived()) {
      ordered_json causes = ordered_json::array();
      for (const auto& cause : e.derived_causes) {
        const char* share = cause.share == RateShare::total ? "total"
                            : cause.share == RateShare::independent ? "independent"
                                                                    : "common";
        causes.push_back(ordered_json{
            {"id", cause.id}, {"component", cause.component_id}, {"share", share}});
      }
      j["derived_from_components"] = ordered_json{{"causes", std::move(causes)}};
    }
    if (e.semiquant_frequency_per_year)
      j["semiquant_frequency_per_year"] = *e.semiquant_frequency_per_year;
    initiating.push_back(std::move(j));
  }
  root["initiating_events"] = std::move(initiating);

  ordered_json map = ordered_json::object();
  for (const auto& [ei, ids] : model.ei_barrier_map) map[ei] = ids;
  root["ei_barrier_map"] = std::move(map);

  ordered_json linkages = ordered_json::array();
  for (const auto& l : model.conditional_linkages)
    linkages.push_back(ordered_json{{"cause", l.cause_id}, {"enabler", l.enabler_id}});
  root["conditional_linkages"] = std::move(linkages);

  root["event_tree"] = event_tree_to_json(model.event_tree.get());

  if (!model.semiquant_profiles.empty()) {
    ordered_json profiles = ordered_json::array();
    for (const auto& p : model.semiquant_profiles) {
      ordered_json elements = ordered_json::array();
      for (const auto& e : p.elements) {
        elements.push_back(ordered_json{
            {"id", e.id},
            {"component", e.component_id},
            {"complexity", e.complexity == Complexity::simple ? "simple" : "complex"}});
      }
      ordered_json j{{"barrier", p.barrier_id}, {"hft", p.hft}};
      if (p.operator_excluded) j["operator_excluded"] = true;
      j["elements"] = std::move(elements);
      profiles.push_back(std::move(j));
    }
    root["semiquant"] = ordered_json{{"profiles", std::move(profiles)}};
  }

  ordered_json cases = ordered_json::array();
  for (const auto& c : model.cases) {
    ordered_json j{{"id", c.case_id}};
    if (c.lambda_scale != 1.0) j["lambda_scale"] = c.lambda_scale;
    if (c.sff_scale != 1.0) j["sff_scale"] = c.sff_scale;
    if (c.test_interval_scale != 1.0) j["test_interval_scale"] = c.test_interval_scale;
    if (c.beta_scale != 1.0) j["beta_scale"] = c.beta_scale;
    cases.push_back(std::move(j));
  }
  root["cases"] = std::move(cases);

  root["evaluation"] = ordered_json{{"horizon_hours", model.evaluation.horizon_hours},
                                    {"grid_step_hours", model.evaluation.grid_step_hours}};

  return root.dump(2) + "\n";
}

std::string model_hash(const BowTieModel& model) {
  const std::string text = serialize_model(model);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

const std::string& case_study_text() { return detail::case_study_json_text(); }

BowTieModel load_case_study() { return parse_model_or_throw(case_study_text()); }

}  // namespace bowtie
