#include "argdial/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace argdial {

const char* to_string(Label l) {
  switch (l) {
    case Label::In: return "IN";
    case Label::Out: return "OUT";
    case Label::Undec: return "UNDEC";
  }
  return "?";
}

const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Undermine: return "undermine";
    case AttackKind::Rebut: return "rebut";
    case AttackKind::Undercut: return "undercut";
  }
  return "?";
}

std::optional<AttackKind> attack_kind_from_string(std::string_view s) {
  if (s == "undermine") return AttackKind::Undermine;
  if (s == "rebut") return AttackKind::Rebut;
  if (s == "undercut") return AttackKind::Undercut;
  return std::nullopt;
}

Label Labelling::at(const std::string& node) const {
  auto it = labels.find(node);
  if (it == labels.end())
    throw Error(ErrorKind::UnknownArgument, "no node " + node + " in labelling");
  return it->second;
}

std::string cq_node_id(const std::string& argument_id, int cq_index) {
  return "cq:" + argument_id + ":" + std::to_string(cq_index);
}

std::string answer_node_id(const std::string& argument_id, int cq_index) {
  return "ans:" + argument_id + ":" + std::to_string(cq_index);
}

std::optional<AttackKind> attack_kind_for_cq(CqKind kind) {
  switch (kind) {
    case CqKind::BackingChallenge: return AttackKind::Undermine;
    case CqKind::PremiseChallenge: return AttackKind::Undermine;
    case CqKind::Rebut: return AttackKind::Rebut;
    case CqKind::Undercut: return AttackKind::Undercut;
    case CqKind::QualifierChallenge: return std::nullopt;
  }
  return std::nullopt;
}

const ArgumentInstance& ArgumentGraph::argument(const std::string& id) const {
  auto it = arguments.find(id);
  if (it == arguments.end())
    throw Error(ErrorKind::UnknownArgument, "no argument with id " + id);
  return it->second;
}

const CQEvent* ArgumentGraph::find_event(const std::string& argument_id,
                                         int cq_index) const {
  for (const auto& e : cq_events)
    if (e.target_argument == argument_id && e.cq_index == cq_index) return &e;
  return nullptr;
}

std::vector<std::string> ArgumentGraph::node_ids() const {
  std::vector<std::string> ids;
  ids.reserve(arguments.size() + derived_nodes.size());
  for (const auto& [id, inst] : arguments) ids.push_back(id);
  ids.insert(ids.end(), derived_nodes.begin(), derived_nodes.end());
  return ids;
}

std::vector<int> ArgumentGraph::open_cqs(const std::string& argument_id) const {
  std::vector<int> open;
  for (const auto& e : cq_events)
    if (e.target_argument == argument_id && e.status == CqStatus::Posed)
      open.push_back(e.cq_index);
  std::sort(open.begin(), open.end());
  return open;
}

ArgumentGraph add_argument(ArgumentGraph graph, ArgumentInstance instance) {
  if (instance.id.empty())
    throw Error(ErrorKind::BadNodeId, "argument id is empty");
  if (instance.id.find(':') != std::string::npos ||
      instance.id.find_first_of(" \t\r\n\"") != std::string::npos)
    throw Error(ErrorKind::BadNodeId,
                "argument id " + instance.id + " contains a reserved character");
  if (graph.arguments.count(instance.id))
    throw Error(ErrorKind::DuplicateArgument,
                "argument id " + instance.id + " already in graph");
  std::string id = instance.id;
  graph.arguments.emplace(std::move(id), std::move(instance));
  return graph;
}

ArgumentGraph add_attack(ArgumentGraph graph, const std::string& attacker,
                         const std::string& target, AttackKind kind) {
  graph.argument(attacker);
  graph.argument(target);
  AttackEdge edge;
  edge.attacker = attacker;
  edge.target = target;
  edge.kind = kind;
  edge.user_edge = true;
  graph.edges.push_back(std::move(edge));
  return graph;
}

namespace {

// The premise an undermining critical question is read as attacking: backing
// challenges hit the rule-stating premise, premise challenges the case-
// stating one. Reporting metadata only.
std::optional<std::string> undermined_premise(const ArgumentInstance& instance,
                                              CqKind kind) {
  auto pick = [&](std::initializer_list<FormRole> roles)
      -> std::optional<std::string> {
    for (FormRole role : roles)
      if (const GroundStatement* s = instance.statement_with_role(role))
        return s->text;
    if (!instance.statements.empty() &&
        instance.statements.front().role != FormRole::Conclusion)
      return instance.statements.front().text;
    return std::nullopt;
  };
  if (kind == CqKind::BackingChallenge)
    return pick({FormRole::Warrant, FormRole::GeneralPremise,
                 FormRole::MajorPremise});
  return pick({FormRole::Data, FormRole::SpecificPremise,
               FormRole::MinorPremise});
}

}  // namespace

ArgumentGraph pose_cq(ArgumentGraph graph, const std::string& argument_id,
                      int cq_index) {
  const ArgumentInstance& instance = graph.argument(argument_id);
  const CriticalQuestion* cq = instance.scheme.cq(cq_index);
  if (!cq)
    throw Error(ErrorKind::InvalidCqIndex,
                "scheme " + instance.scheme_id() + " has no critical question " +
                    std::to_string(cq_index));
  if (graph.find_event(argument_id, cq_index))
    throw Error(ErrorKind::DuplicateCqEvent,
                "critical question " + std::to_string(cq_index) +
                    " already posed against " + argument_id);

  graph.cq_events.push_back({argument_id, cq_index, CqStatus::Posed, {}});
  if (std::optional<AttackKind> kind = attack_kind_for_cq(cq->kind)) {
    AttackEdge edge;
    edge.attacker = cq_node_id(argument_id, cq_index);
    edge.target = argument_id;
    edge.kind = *kind;
    if (*kind == AttackKind::Undermine)
      edge.premise = undermined_premise(instance, cq->kind);
    graph.derived_nodes.push_back(edge.attacker);
    graph.edges.push_back(std::move(edge));
  }
  return graph;
}

ArgumentGraph answer_cq(ArgumentGraph graph, const std::string& argument_id,
                        int cq_index, std::string answer_text) {
  const ArgumentInstance& instance = graph.argument(argument_id);
  const CriticalQuestion* cq = instance.scheme.cq(cq_index);
  if (!cq)
    throw Error(ErrorKind::InvalidCqIndex,
                "scheme " + instance.scheme_id() + " has no critical question " +
                    std::to_string(cq_index));
  CQEvent* event = nullptr;
  for (auto& e : graph.cq_events)
    if (e.target_argument == argument_id && e.cq_index == cq_index) event = &e;
  if (!event)
    throw Error(ErrorKind::CqNotPosed,
                "critical question " + std::to_string(cq_index) +
                    " was never posed against " + argument_id);
  if (event->status == CqStatus::Answered)
    throw Error(ErrorKind::CqAlreadyAnswered,
                "critical question " + std::to_string(cq_index) + " against " +
                    argument_id + " already answered");

  event->status = CqStatus::Answered;
  event->answer_text = std::move(answer_text);
  if (attack_kind_for_cq(cq->kind)) {
    AttackEdge edge;
    edge.attacker = answer_node_id(argument_id, cq_index);
    edge.target = cq_node_id(argument_id, cq_index);
    edge.kind = AttackKind::Rebut;
    graph.derived_nodes.push_back(edge.attacker);
    graph.edges.push_back(std::move(edge));
  }
  return graph;
}

namespace {

std::map<std::string, std::vector<std::string>> attacker_lists(
    const ArgumentGraph& graph) {
  std::map<std::string, std::vector<std::string>> attackers;
  for (const auto& id : graph.node_ids()) attackers[id];
  for (const auto& e : graph.edges) attackers[e.target].push_back(e.attacker);
  return attackers;
}

}  // namespace

Labelling grounded_labelling(const ArgumentGraph& graph) {
  auto attackers = attacker_lists(graph);
  Labelling result;
  std::map<std::string, std::optional<Label>> label;
  for (const auto& [node, atk] : attackers) label[node] = std::nullopt;

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [node, lab] : label) {
      if (lab) continue;
      bool all_out = true;
      bool some_in = false;
      for (const auto& a : attackers[node]) {
        const auto& al = label[a];
        if (!al || *al != Label::Out) all_out = false;
        if (al && *al == Label::In) some_in = true;
      }
      if (all_out) {
        lab = Label::In;
        changed = true;
      } else if (some_in) {
        lab = Label::Out;
        changed = true;
      }
    }
  }
  for (const auto& [node, lab] : label)
    result.labels[node] = lab.value_or(Label::Undec);
  return result;
}

Labelling brute_force_labelling(const ArgumentGraph& graph) {
  std::vector<std::string> nodes = graph.node_ids();
  size_t n = nodes.size();
  if (n > 20)
    throw Error(ErrorKind::GraphTooLarge,
                "brute-force labelling capped at 20 nodes, graph has " +
                    std::to_string(n));

  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index[nodes[i]] = i;
  std::vector<std::vector<size_t>> attackers(n);
  for (const auto& e : graph.edges)
    attackers[index.at(e.target)].push_back(index.at(e.attacker));

  // A complete labelling is determined by its IN set: OUT is exactly the set
  // of nodes attacked by IN, everything else UNDEC. Check both rules.
  std::vector<uint32_t> valid_in_sets;
  for (uint32_t in = 0; in < (1u << n); ++in) {
    uint32_t out = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t a : attackers[i])
        if (in & (1u << a)) out |= (1u << i);
    if (in & out) continue;  // a node cannot be both IN and OUT
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      bool all_out = true;
      for (size_t a : attackers[i])
        if (!(out & (1u << a))) all_out = false;
      bool is_in = (in & (1u << i)) != 0;
      if (is_in != all_out) ok = false;  // IN iff all attackers OUT
    }
    if (ok) valid_in_sets.push_back(in);
  }

  uint32_t best = valid_in_sets.front();
  for (uint32_t s : valid_in_sets)
    if (std::popcount(s) < std::popcount(best)) best = s;
  // The grounded IN set is included in every complete one.
  for (uint32_t s : valid_in_sets)
    if ((best & s) != best)
      throw Error(ErrorKind::GraphTooLarge,
                  "internal: minimal IN set is not unique");

  uint32_t out = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t a : attackers[i])
      if (best & (1u << a)) out |= (1u << i);
  Labelling result;
  for (size_t i = 0; i < n; ++i)
    result.labels[nodes[i]] = (best & (1u << i))  ? Label::In
                              : (out & (1u << i)) ? Label::Out
                                                  : Label::Undec;
  return result;
}

Qualifier effective_qualifier(const ArgumentGraph& graph,
                              const std::string& argument_id) {
  const ArgumentInstance& instance = graph.argument(argument_id);
  if (instance.scheme.scheme_class != SchemeClass::C) return Qualifier::Certain;
  Qualifier q = instance.qualifier;
  for (const auto& e : graph.cq_events) {
    if (e.target_argument != argument_id || e.status != CqStatus::Posed)
      continue;
    const CriticalQuestion* cq = instance.scheme.cq(e.cq_index);
    if (cq && cq->kind == CqKind::QualifierChallenge) q = weaken(q);
  }
  return q;
}

ArgumentEvaluation evaluate_argument(const ArgumentGraph& graph,
                                     const std::string& argument_id) {
  graph.argument(argument_id);
  ArgumentEvaluation eval;
  eval.label = grounded_labelling(graph).at(argument_id);
  eval.qualifier = effective_qualifier(graph, argument_id);
  eval.open_cqs = graph.open_cqs(argument_id);
  return eval;
}

}  // namespace argdial
