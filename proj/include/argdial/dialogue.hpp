#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "argdial/evaluation.hpp"
#include "argdial/scheme.hpp"

namespace argdial {

enum class DialogueKind {
  Persuasion,
  Inquiry,
  PedagogicalInformationSeeking,
  OracularInformationSeeking,
  Deliberation,
  Negotiation,
  Eristic,
};

enum class Situation { Conflict, OpenProblem, InfoAsymmetry };
enum class DialogueGoal {
  StableResolution,
  PracticalSettlement,
  ProvisionalAccommodation,
};

enum class MoveKind {
  Assert,
  Argue,
  PoseCq,
  AnswerCq,
  Concede,
  Retract,
  Offer,
  Accept,
  ProposeShift,
  AcceptShift,
  Close,
};

enum class ShiftMode { Replace, Embed, Pop };
enum class Role { Proponent, Respondent };

const char* to_string(DialogueKind k);
const char* to_string(Situation s);
const char* to_string(DialogueGoal g);
const char* to_string(MoveKind k);
const char* to_string(ShiftMode m);
std::optional<DialogueKind> dialogue_kind_from_string(std::string_view s);
std::optional<Situation> situation_from_string(std::string_view s);
std::optional<DialogueGoal> dialogue_goal_from_string(std::string_view s);
std::optional<MoveKind> move_kind_from_string(std::string_view s);

struct DialogueTypeInfo {
  DialogueKind id;
  Situation situation;
  DialogueGoal goal;
  std::string proponent_goal;
  std::string respondent_goal;
  bool oracle_mode = false;
};

const std::vector<DialogueTypeInfo>& dialogue_types();
const DialogueTypeInfo& dialogue_type_info(DialogueKind kind);

// Static permission matrix: which move kinds a role may make in a type.
bool kind_permitted(DialogueKind type, Role role, MoveKind kind);

struct CqPayload {
  std::string argument_id;
  int cq_index = 0;
  std::string answer_text;  // answer-cq only
  bool operator==(const CqPayload&) const = default;
};

struct ShiftPayload {
  ShiftMode mode = ShiftMode::Embed;  // replace or embed
  DialogueKind target = DialogueKind::Persuasion;
  bool operator==(const ShiftPayload&) const = default;
};

struct OfferPayload {
  std::string statement;
  std::optional<double> cost;
  bool operator==(const OfferPayload&) const = default;
};

struct Move {
  std::string speaker;
  MoveKind kind = MoveKind::Close;
  std::variant<std::monostate, std::string, ArgumentInstance, CqPayload,
               ShiftPayload, OfferPayload>
      payload;
  bool operator==(const Move&) const = default;
};

Move make_assert(std::string speaker, std::string statement);
Move make_argue(std::string speaker, ArgumentInstance instance);
Move make_pose_cq(std::string speaker, std::string argument_id, int cq_index);
Move make_answer_cq(std::string speaker, std::string argument_id, int cq_index,
                    std::string answer_text);
Move make_concede(std::string speaker, std::string statement);
Move make_retract(std::string speaker, std::string statement);
Move make_offer(std::string speaker, std::string statement,
                std::optional<double> cost = std::nullopt);
Move make_accept(std::string speaker, std::string statement = {});
Move make_propose_shift(std::string speaker, ShiftMode mode,
                        DialogueKind target);
Move make_accept_shift(std::string speaker);
Move make_close(std::string speaker = {});

struct Frame {
  DialogueKind type = DialogueKind::Persuasion;
  std::map<std::string, std::set<std::string>> stores;
  std::vector<Move> history;
  bool closed = false;
  bool operator==(const Frame&) const = default;
};

struct ShiftEntry {
  int turn = 0;  // index of the move that performed the shift
  DialogueKind from = DialogueKind::Persuasion;
  DialogueKind to = DialogueKind::Persuasion;
  ShiftMode mode = ShiftMode::Embed;
  bool degraded = false;  // set on shifts into eristic
  bool operator==(const ShiftEntry&) const = default;
};

struct PendingShift {
  std::string proposer;
  ShiftPayload shift;
  bool operator==(const PendingShift&) const = default;
};

struct PendingOffer {
  std::string offerer;
  std::string statement;
  std::optional<double> cost;
  bool operator==(const PendingOffer&) const = default;
};

inline constexpr int kMaxEmbedDepth = 8;

struct DialogueState {
  Situation situation = Situation::Conflict;
  DialogueGoal goal = DialogueGoal::StableResolution;
  std::vector<Frame> stack;  // bottom first; never empty
  std::array<std::string, 2> participants;  // [proponent, respondent]
  std::string turn;
  std::vector<ShiftEntry> shift_log;
  ArgumentGraph graph;
  std::map<std::string, std::string> argument_owner;
  std::optional<PendingShift> pending_shift;
  std::optional<PendingOffer> pending_offer;
  int move_count = 0;

  const Frame& top() const { return stack.back(); }
  DialogueKind current_type() const { return stack.back().type; }
  bool closed() const { return stack.front().closed; }
  int depth() const { return static_cast<int>(stack.size()); }
  Role role_of(const std::string& participant) const;
  const std::string& other(const std::string& participant) const;
  const std::string& proponent() const { return participants[0]; }
  const std::string& respondent() const { return participants[1]; }
  // Union over the whole stack; embedded frames see parents as background.
  std::set<std::string> visible_commitments(const std::string& participant) const;
  bool operator==(const DialogueState&) const = default;
};

// Validates the (goal, situation) cell against the dialogue-type matrix and
// the requested type; rejects the three incoherent cells. The oracle opens
// oracular dialogues, the proponent every other kind.
DialogueState new_dialogue(DialogueKind type, Situation situation,
                           DialogueGoal goal,
                           std::array<std::string, 2> participants);

struct Permission {
  std::string speaker;
  MoveKind kind = MoveKind::Close;
  bool operator==(const Permission&) const = default;
};

// Moves available to the turn holder; throws on a closed dialogue.
std::vector<Permission> legal_moves(const DialogueState& state);

// Applies one move, enforcing the permission matrix, turn discipline, and
// commitment-store rules. States are persistent values.
DialogueState apply_move(DialogueState state, const Move& move);

// Performs a type transition; the top frame's history must end with a
// propose-shift / accept-shift pair by different speakers matching it.
DialogueState shift(DialogueState state, DialogueKind new_type, ShiftMode mode);

// Copies the closed top frame's agreed conclusions into the parent stores
// and pops it. Deliberation frames settle on either party's concessions;
// every other type requires mutual commitment.
DialogueState pop_embedding(DialogueState state);

struct StoreDelta {
  std::string participant;
  std::string statement;
  bool added = true;
  bool operator==(const StoreDelta&) const = default;
};

struct TranscriptRecord {
  int index = 0;
  Move move;
  std::vector<StoreDelta> deltas;
  std::vector<ShiftEntry> shifts;  // shifts performed by this move
  bool operator==(const TranscriptRecord&) const = default;
};

enum class TranscriptStatus { Closed, Violation, Timeout };
const char* to_string(TranscriptStatus s);

struct Transcript {
  DialogueKind type = DialogueKind::Persuasion;
  Situation situation = Situation::Conflict;
  DialogueGoal goal = DialogueGoal::StableResolution;
  std::array<std::string, 2> participants;
  std::vector<TranscriptRecord> records;
  TranscriptStatus status = TranscriptStatus::Timeout;
  std::string violation;  // message when status is Violation
  DialogueState final_state;
  bool operator==(const Transcript&) const = default;
};

class Policy {
public:
  virtual ~Policy() = default;
  // Next move for `self`, or nothing when the policy has run out.
  virtual std::optional<Move> next(const DialogueState& state,
                                   const std::string& self) = 0;
};

// Both participants replay one shared move list in order; wrong-turn moves
// surface as recorded violations.
class ReplayPolicy : public Policy {
public:
  static std::pair<std::unique_ptr<ReplayPolicy>, std::unique_ptr<ReplayPolicy>>
  make_pair_for(std::vector<Move> moves);
  std::optional<Move> next(const DialogueState& state,
                           const std::string& self) override;

private:
  struct Shared {
    std::vector<Move> moves;
    size_t cursor = 0;
  };
  explicit ReplayPolicy(std::shared_ptr<Shared> shared);
  std::shared_ptr<Shared> shared_;
};

// Poses every available critical question against the opponent's arguments,
// one per turn and in order; concedes claims it can no longer attack; closes.
class ExhaustiveSceptic : public Policy {
public:
  std::optional<Move> next(const DialogueState& state,
                           const std::string& self) override;
};

// Argues its configured instances, answers open critical questions on them,
// then closes.
class CompliantProver : public Policy {
public:
  explicit CompliantProver(std::vector<ArgumentInstance> instances);
  std::optional<Move> next(const DialogueState& state,
                           const std::string& self) override;

private:
  std::vector<ArgumentInstance> instances_;
};

Transcript run_simulation(DialogueState initial, Policy& proponent_policy,
                          Policy& respondent_policy, int max_turns);

// Ordered embed/replace/pop entries with degradation flags.
std::vector<ShiftEntry> shift_report(const Transcript& transcript);

}  // namespace argdial
