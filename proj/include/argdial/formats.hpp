#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "argdial/dialogue.hpp"
#include "argdial/evaluation.hpp"
#include "argdial/library.hpp"
#include "argdial/scheme.hpp"

namespace argdial {

// Parsers are total: any byte sequence yields either a value or diagnostics,
// never an exception. A parser returns a value iff it appended no diagnostic.
struct Diagnostic {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

// Scheme definition files:
//   scheme "<id>" class <A|B|C> qualifier <level> {
//     var P Q;
//     premise <role>: "<template>";
//     conclusion: "<template>";
//     cq <n> <kind>: "<question template>";
//   }
// '#' starts a comment; strings escape '\"' and '\\'.
// Ill-formed schemes (duplicate ids, failed well-formedness conditions) are
// diagnostics by default; structural_only skips those checks so a linter can
// report per-condition results itself.
std::optional<std::vector<Scheme>> parse_schemes(
    std::string_view text, std::vector<Diagnostic>& diagnostics,
    bool structural_only = false);
std::string serialize_scheme(const Scheme& scheme);
std::string serialize_schemes(const std::vector<Scheme>& schemes);

// Argument graph files:
//   argument <id> <scheme-id> VAR="text" ...
//   attack <attacker> -> <target> <kind> ["premise text"]
//   pose <argument-id> <cq-index>
//   answer <argument-id> <cq-index> "<answer text>"
std::optional<ArgumentGraph> parse_graph(std::string_view text,
                                         const SchemeRegistry& registry,
                                         std::vector<Diagnostic>& diagnostics);
std::string serialize_graph(const ArgumentGraph& graph);
// Serialization followed by grounded labels and per-argument evaluations,
// one '# label' / '# argument' comment per node.
std::string export_graph(const ArgumentGraph& graph);
std::string export_graph_machine(const ArgumentGraph& graph);  // JSON

// Dialogue scripts:
//   dialogue <type> <situation> <goal> participants <P1> <P2>
//   <speaker> assert "statement"
//   <speaker> argue <arg-id> <scheme-id> VAR="text" ...
//   <speaker> pose-cq <arg-id> <n>
//   <speaker> answer-cq <arg-id> <n> "answer"
//   <speaker> concede "statement"     | <speaker> retract "statement"
//   <speaker> offer "statement" [cost <number>]
//   <speaker> accept ["statement"]
//   <speaker> propose-shift <embed|replace> <type>
//   <speaker> accept-shift  | <speaker> close  | close
struct ScriptMove {
  int line = 0;  // ignored by equality; provenance for diagnostics
  std::string speaker;  // empty for a bare close
  MoveKind kind = MoveKind::Close;
  std::string statement;
  std::string argument_id;
  std::string scheme_id;
  std::vector<std::pair<std::string, std::string>> bindings;
  int cq_index = 0;
  std::string answer_text;
  std::optional<double> cost;
  ShiftMode shift_mode = ShiftMode::Embed;
  DialogueKind shift_target = DialogueKind::Persuasion;

  bool operator==(const ScriptMove& o) const;
};

struct ScriptDocument {
  DialogueKind type = DialogueKind::Persuasion;
  Situation situation = Situation::Conflict;
  DialogueGoal goal = DialogueGoal::StableResolution;
  std::array<std::string, 2> participants;
  std::vector<ScriptMove> moves;

  bool operator==(const ScriptDocument&) const = default;
};

std::optional<ScriptDocument> parse_script(
    std::string_view text, std::vector<Diagnostic>& diagnostics);
std::string serialize_script(const ScriptDocument& document);

// Instantiates argue moves against the registry and maps the rest onto
// engine moves. Diagnostics name the offending script line.
std::optional<std::vector<Move>> resolve_script_moves(
    const ScriptDocument& document, const SchemeRegistry& registry,
    std::vector<Diagnostic>& diagnostics);

// Renders a transcript deterministically: header, numbered moves with
// commitment deltas and shift lines, status, shift report, and final
// argument evaluations.
std::string render_transcript(const Transcript& transcript);

// Reads the shift-report section back out of rendered transcript text.
std::optional<std::vector<ShiftEntry>> parse_transcript_shifts(
    std::string_view text, std::vector<Diagnostic>& diagnostics);

}  // namespace argdial
