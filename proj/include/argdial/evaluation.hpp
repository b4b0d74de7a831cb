#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argdial/scheme.hpp"

namespace argdial {

enum class Label { In, Out, Undec };
enum class AttackKind { Undermine, Rebut, Undercut };
enum class CqStatus { Posed, Answered };

const char* to_string(Label l);
const char* to_string(AttackKind k);
std::optional<AttackKind> attack_kind_from_string(std::string_view s);

struct CQEvent {
  std::string target_argument;
  int cq_index = 0;
  CqStatus status = CqStatus::Posed;
  std::optional<std::string> answer_text;
  bool operator==(const CQEvent&) const = default;
};

struct AttackEdge {
  std::string attacker;
  std::string target;
  AttackKind kind = AttackKind::Rebut;
  // For undermines, the text of the attacked premise. Metadata only; the
  // edge itself always targets the argument node.
  std::optional<std::string> premise;
  bool user_edge = false;
  bool operator==(const AttackEdge&) const = default;
};

struct Labelling {
  std::map<std::string, Label> labels;

  Label at(const std::string& node) const;
  bool operator==(const Labelling&) const = default;
};

// Derived node ids for posed critical questions and their answers.
std::string cq_node_id(const std::string& argument_id, int cq_index);
std::string answer_node_id(const std::string& argument_id, int cq_index);

// Attack kind a critical question induces; qualifier challenges induce none.
std::optional<AttackKind> attack_kind_for_cq(CqKind kind);

struct ArgumentGraph {
  std::map<std::string, ArgumentInstance> arguments;
  std::vector<CQEvent> cq_events;
  std::vector<std::string> derived_nodes;  // insertion order
  std::vector<AttackEdge> edges;           // user edges and CQ-induced edges

  const ArgumentInstance& argument(const std::string& id) const;
  const CQEvent* find_event(const std::string& argument_id, int cq_index) const;
  std::vector<std::string> node_ids() const;  // arguments, then derived nodes
  // 1-based indices of posed, unanswered CQs on an argument.
  std::vector<int> open_cqs(const std::string& argument_id) const;
  bool operator==(const ArgumentGraph&) const = default;
};

// Graphs are persistent values: each operation returns a new graph.
ArgumentGraph add_argument(ArgumentGraph graph, ArgumentInstance instance);
ArgumentGraph add_attack(ArgumentGraph graph, const std::string& attacker,
                         const std::string& target, AttackKind kind);
ArgumentGraph pose_cq(ArgumentGraph graph, const std::string& argument_id,
                      int cq_index);
ArgumentGraph answer_cq(ArgumentGraph graph, const std::string& argument_id,
                        int cq_index, std::string answer_text);

// Least fixpoint of the labelling rules: a node is IN iff all its attackers
// are OUT, OUT iff some attacker is IN, UNDEC otherwise.
Labelling grounded_labelling(const ArgumentGraph& graph);

// Enumerates every complete labelling and returns the one with the smallest
// IN set. Independent check for grounded_labelling; requires <= 20 nodes.
Labelling brute_force_labelling(const ArgumentGraph& graph);

// Scheme default weakened one step per open qualifier challenge, floored at
// plausible. Class A and B arguments are always certain.
Qualifier effective_qualifier(const ArgumentGraph& graph,
                              const std::string& argument_id);

struct ArgumentEvaluation {
  Label label = Label::Undec;
  Qualifier qualifier = Qualifier::Presumable;
  std::vector<int> open_cqs;
  bool operator==(const ArgumentEvaluation&) const = default;
};

ArgumentEvaluation evaluate_argument(const ArgumentGraph& graph,
                                     const std::string& argument_id);

}  // namespace argdial
