#include "argdial/dialogue.hpp"

#include <algorithm>

namespace argdial {

const char* to_string(DialogueKind k) {
  switch (k) {
    case DialogueKind::Persuasion: return "persuasion";
    case DialogueKind::Inquiry: return "inquiry";
    case DialogueKind::PedagogicalInformationSeeking:
      return "information-seeking-pedagogical";
    case DialogueKind::OracularInformationSeeking:
      return "information-seeking-oracular";
    case DialogueKind::Deliberation: return "deliberation";
    case DialogueKind::Negotiation: return "negotiation";
    case DialogueKind::Eristic: return "eristic";
  }
  return "?";
}

const char* to_string(Situation s) {
  switch (s) {
    case Situation::Conflict: return "conflict";
    case Situation::OpenProblem: return "open-problem";
    case Situation::InfoAsymmetry: return "info-asymmetry";
  }
  return "?";
}

const char* to_string(DialogueGoal g) {
  switch (g) {
    case DialogueGoal::StableResolution: return "stable-resolution";
    case DialogueGoal::PracticalSettlement: return "practical-settlement";
    case DialogueGoal::ProvisionalAccommodation:
      return "provisional-accommodation";
  }
  return "?";
}

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Assert: return "assert";
    case MoveKind::Argue: return "argue";
    case MoveKind::PoseCq: return "pose-cq";
    case MoveKind::AnswerCq: return "answer-cq";
    case MoveKind::Concede: return "concede";
    case MoveKind::Retract: return "retract";
    case MoveKind::Offer: return "offer";
    case MoveKind::Accept: return "accept";
    case MoveKind::ProposeShift: return "propose-shift";
    case MoveKind::AcceptShift: return "accept-shift";
    case MoveKind::Close: return "close";
  }
  return "?";
}

const char* to_string(ShiftMode m) {
  switch (m) {
    case ShiftMode::Replace: return "replace";
    case ShiftMode::Embed: return "embed";
    case ShiftMode::Pop: return "pop";
  }
  return "?";
}

const char* to_string(TranscriptStatus s) {
  switch (s) {
    case TranscriptStatus::Closed: return "closed";
    case TranscriptStatus::Violation: return "violation";
    case TranscriptStatus::Timeout: return "timeout";
  }
  return "?";
}

std::optional<DialogueKind> dialogue_kind_from_string(std::string_view s) {
  if (s == "persuasion") return DialogueKind::Persuasion;
  if (s == "inquiry") return DialogueKind::Inquiry;
  if (s == "information-seeking-pedagogical")
    return DialogueKind::PedagogicalInformationSeeking;
  if (s == "information-seeking-oracular")
    return DialogueKind::OracularInformationSeeking;
  if (s == "deliberation") return DialogueKind::Deliberation;
  if (s == "negotiation") return DialogueKind::Negotiation;
  if (s == "eristic") return DialogueKind::Eristic;
  return std::nullopt;
}

std::optional<Situation> situation_from_string(std::string_view s) {
  if (s == "conflict") return Situation::Conflict;
  if (s == "open-problem") return Situation::OpenProblem;
  if (s == "info-asymmetry") return Situation::InfoAsymmetry;
  return std::nullopt;
}

std::optional<DialogueGoal> dialogue_goal_from_string(std::string_view s) {
  if (s == "stable-resolution") return DialogueGoal::StableResolution;
  if (s == "practical-settlement") return DialogueGoal::PracticalSettlement;
  if (s == "provisional-accommodation")
    return DialogueGoal::ProvisionalAccommodation;
  return std::nullopt;
}

std::optional<MoveKind> move_kind_from_string(std::string_view s) {
  if (s == "assert") return MoveKind::Assert;
  if (s == "argue") return MoveKind::Argue;
  if (s == "pose-cq") return MoveKind::PoseCq;
  if (s == "answer-cq") return MoveKind::AnswerCq;
  if (s == "concede") return MoveKind::Concede;
  if (s == "retract") return MoveKind::Retract;
  if (s == "offer") return MoveKind::Offer;
  if (s == "accept") return MoveKind::Accept;
  if (s == "propose-shift") return MoveKind::ProposeShift;
  if (s == "accept-shift") return MoveKind::AcceptShift;
  if (s == "close") return MoveKind::Close;
  return std::nullopt;
}

const std::vector<DialogueTypeInfo>& dialogue_types() {
  static const std::vector<DialogueTypeInfo> types = {
      {DialogueKind::Persuasion, Situation::Conflict,
       DialogueGoal::StableResolution, "Persuade respondent",
       "Persuade proponent", false},
      {DialogueKind::Inquiry, Situation::OpenProblem,
       DialogueGoal::StableResolution, "Contribute to main goal",
       "Obtain knowledge", false},
      {DialogueKind::PedagogicalInformationSeeking, Situation::InfoAsymmetry,
       DialogueGoal::StableResolution,
       "Disseminate knowledge of results and methods", "Obtain knowledge",
       false},
      {DialogueKind::OracularInformationSeeking, Situation::InfoAsymmetry,
       DialogueGoal::StableResolution, "Obtain information", "Inscrutable",
       true},
      {DialogueKind::Deliberation, Situation::OpenProblem,
       DialogueGoal::PracticalSettlement, "Contribute to main goal",
       "Obtain warranted belief", false},
      {DialogueKind::Negotiation, Situation::Conflict,
       DialogueGoal::PracticalSettlement, "Contribute to main goal",
       "Maximize value of exchange", false},
      {DialogueKind::Eristic, Situation::Conflict,
       DialogueGoal::ProvisionalAccommodation,
       "Verbally hit out at and humiliate opponent",
       "Verbally hit out at and humiliate opponent", false},
  };
  return types;
}

const DialogueTypeInfo& dialogue_type_info(DialogueKind kind) {
  for (const auto& t : dialogue_types())
    if (t.id == kind) return t;
  throw Error(ErrorKind::IncoherentDialogue, "unknown dialogue type");
}

bool kind_permitted(DialogueKind type, Role role, MoveKind kind) {
  // Universal framework moves.
  if (kind == MoveKind::ProposeShift || kind == MoveKind::AcceptShift ||
      kind == MoveKind::Close)
    return true;
  bool proponent = role == Role::Proponent;
  switch (type) {
    case DialogueKind::Persuasion:
    case DialogueKind::Inquiry:
    case DialogueKind::Deliberation:
      switch (kind) {
        case MoveKind::Assert:
        case MoveKind::Argue:
        case MoveKind::PoseCq:
        case MoveKind::AnswerCq:
        case MoveKind::Concede:
        case MoveKind::Retract:
          return true;
        default:
          return false;
      }
    case DialogueKind::PedagogicalInformationSeeking:
      switch (kind) {
        case MoveKind::Assert:
        case MoveKind::Argue:
        case MoveKind::AnswerCq:
          return proponent;
        case MoveKind::PoseCq:
        case MoveKind::Concede:
          return !proponent;
        default:
          return false;
      }
    case DialogueKind::OracularInformationSeeking:
      // Only the oracle speaks substantively; its word is not questioned.
      switch (kind) {
        case MoveKind::Assert:
          return !proponent;
        case MoveKind::Concede:
        case MoveKind::Retract:
          return proponent;
        default:
          return false;
      }
    case DialogueKind::Negotiation:
      switch (kind) {
        case MoveKind::Assert:
        case MoveKind::Concede:
        case MoveKind::Retract:
        case MoveKind::Offer:
        case MoveKind::Accept:
          return true;
        default:
          return false;
      }
    case DialogueKind::Eristic:
      return kind == MoveKind::Assert || kind == MoveKind::Retract;
  }
  return false;
}

Move make_assert(std::string speaker, std::string statement) {
  return {std::move(speaker), MoveKind::Assert, std::move(statement)};
}
Move make_argue(std::string speaker, ArgumentInstance instance) {
  return {std::move(speaker), MoveKind::Argue, std::move(instance)};
}
Move make_pose_cq(std::string speaker, std::string argument_id, int cq_index) {
  return {std::move(speaker), MoveKind::PoseCq,
          CqPayload{std::move(argument_id), cq_index, {}}};
}
Move make_answer_cq(std::string speaker, std::string argument_id, int cq_index,
                    std::string answer_text) {
  return {std::move(speaker), MoveKind::AnswerCq,
          CqPayload{std::move(argument_id), cq_index, std::move(answer_text)}};
}
Move make_concede(std::string speaker, std::string statement) {
  return {std::move(speaker), MoveKind::Concede, std::move(statement)};
}
Move make_retract(std::string speaker, std::string statement) {
  return {std::move(speaker), MoveKind::Retract, std::move(statement)};
}
Move make_offer(std::string speaker, std::string statement,
                std::optional<double> cost) {
  return {std::move(speaker), MoveKind::Offer,
          OfferPayload{std::move(statement), cost}};
}
Move make_accept(std::string speaker, std::string statement) {
  return {std::move(speaker), MoveKind::Accept, std::move(statement)};
}
Move make_propose_shift(std::string speaker, ShiftMode mode,
                        DialogueKind target) {
  return {std::move(speaker), MoveKind::ProposeShift,
          ShiftPayload{mode, target}};
}
Move make_accept_shift(std::string speaker) {
  return {std::move(speaker), MoveKind::AcceptShift, std::monostate{}};
}
Move make_close(std::string speaker) {
  return {std::move(speaker), MoveKind::Close, std::monostate{}};
}

Role DialogueState::role_of(const std::string& participant) const {
  if (participant == participants[0]) return Role::Proponent;
  if (participant == participants[1]) return Role::Respondent;
  throw Error(ErrorKind::RuleViolation, "unknown participant " + participant);
}

const std::string& DialogueState::other(const std::string& participant) const {
  return participant == participants[0] ? participants[1] : participants[0];
}

std::set<std::string> DialogueState::visible_commitments(
    const std::string& participant) const {
  std::set<std::string> all;
  for (const auto& frame : stack) {
    auto it = frame.stores.find(participant);
    if (it != frame.stores.end()) all.insert(it->second.begin(), it->second.end());
  }
  return all;
}

namespace {

std::vector<DialogueKind> cell_types(DialogueGoal goal, Situation situation) {
  std::vector<DialogueKind> kinds;
  for (const auto& t : dialogue_types())
    if (t.goal == goal && t.situation == situation) kinds.push_back(t.id);
  return kinds;
}

Frame fresh_frame(DialogueKind type,
                  const std::array<std::string, 2>& participants) {
  Frame frame;
  frame.type = type;
  frame.stores[participants[0]];
  frame.stores[participants[1]];
  return frame;
}

}  // namespace

DialogueState new_dialogue(DialogueKind type, Situation situation,
                           DialogueGoal goal,
                           std::array<std::string, 2> participants) {
  if (participants[0].empty() || participants[1].empty() ||
      participants[0] == participants[1])
    throw Error(ErrorKind::IncoherentDialogue,
                "a dialogue needs two distinct participants");
  std::vector<DialogueKind> kinds = cell_types(goal, situation);
  if (kinds.empty())
    throw Error(ErrorKind::IncoherentDialogue,
                std::string("no dialogue type pursues ") + to_string(goal) +
                    " from " + to_string(situation));
  if (std::find(kinds.begin(), kinds.end(), type) == kinds.end())
    throw Error(ErrorKind::IncoherentDialogue,
                std::string(to_string(type)) + " does not pursue " +
                    to_string(goal) + " from " + to_string(situation));

  DialogueState state;
  state.situation = situation;
  state.goal = goal;
  state.participants = std::move(participants);
  state.stack.push_back(fresh_frame(type, state.participants));
  // The oracle opens an oracular consultation; elsewhere the proponent does.
  state.turn = dialogue_type_info(type).oracle_mode ? state.participants[1]
                                                    : state.participants[0];
  return state;
}

namespace {

// Inquiry burden: arguments the speaker argued that stand defeated while
// their claims are still on the books.
std::vector<std::string> defeated_instances(const DialogueState& state,
                                            const std::string& speaker) {
  std::vector<std::string> defeated;
  if (state.graph.arguments.empty()) return defeated;
  Labelling labels = grounded_labelling(state.graph);
  auto store = state.top().stores.find(speaker);
  if (store == state.top().stores.end()) return defeated;
  for (const auto& [id, owner] : state.argument_owner) {
    if (owner != speaker) continue;
    auto arg = state.graph.arguments.find(id);
    if (arg == state.graph.arguments.end()) continue;
    if (labels.at(id) == Label::Out && store->second.count(arg->second.claim()))
      defeated.push_back(id);
  }
  return defeated;
}

bool has_unposed_cq(const DialogueState& state, const std::string& opponent) {
  for (const auto& [id, inst] : state.graph.arguments) {
    auto owner = state.argument_owner.find(id);
    if (owner == state.argument_owner.end() || owner->second != opponent)
      continue;
    for (const auto& cq : inst.scheme.cqs)
      if (!state.graph.find_event(id, cq.index)) return true;
  }
  return false;
}

bool has_open_cq_on_own(const DialogueState& state, const std::string& speaker) {
  for (const auto& e : state.graph.cq_events) {
    if (e.status != CqStatus::Posed) continue;
    auto owner = state.argument_owner.find(e.target_argument);
    if (owner != state.argument_owner.end() && owner->second == speaker)
      return true;
  }
  return false;
}

}  // namespace

std::vector<Permission> legal_moves(const DialogueState& state) {
  if (state.closed())
    throw Error(ErrorKind::ClosedDialogue, "dialogue is closed");
  const std::string& sp = state.turn;
  Role role = state.role_of(sp);
  DialogueKind type = state.current_type();
  std::vector<Permission> perms;

  if (type == DialogueKind::Inquiry) {
    std::vector<std::string> defeated = defeated_instances(state, sp);
    if (!defeated.empty()) {
      if (has_open_cq_on_own(state, sp)) perms.push_back({sp, MoveKind::AnswerCq});
      perms.push_back({sp, MoveKind::Retract});
      return perms;
    }
  }

  const auto& top_store = state.top().stores.at(sp);
  for (MoveKind kind :
       {MoveKind::Assert, MoveKind::Argue, MoveKind::PoseCq, MoveKind::AnswerCq,
        MoveKind::Concede, MoveKind::Retract, MoveKind::Offer, MoveKind::Accept,
        MoveKind::ProposeShift, MoveKind::AcceptShift, MoveKind::Close}) {
    if (!kind_permitted(type, role, kind)) continue;
    bool available = true;
    switch (kind) {
      case MoveKind::PoseCq:
        available = has_unposed_cq(state, state.other(sp));
        break;
      case MoveKind::AnswerCq:
        available = has_open_cq_on_own(state, sp);
        break;
      case MoveKind::Concede:
        available = !state.visible_commitments(state.other(sp)).empty();
        break;
      case MoveKind::Retract:
        available = !top_store.empty();
        break;
      case MoveKind::Accept:
        available = state.pending_offer &&
                    state.pending_offer->offerer == state.other(sp);
        break;
      case MoveKind::AcceptShift:
        available = state.pending_shift &&
                    state.pending_shift->proposer == state.other(sp);
        break;
      default:
        break;
    }
    if (available) perms.push_back({sp, kind});
  }
  return perms;
}

namespace {

const std::string& payload_statement(const Move& move) {
  const std::string* s = std::get_if<std::string>(&move.payload);
  if (!s)
    throw Error(ErrorKind::BadMove, std::string(to_string(move.kind)) +
                                        " carries no statement payload");
  return *s;
}

std::string role_name(Role role) {
  return role == Role::Proponent ? "proponent" : "respondent";
}

}  // namespace

DialogueState shift(DialogueState state, DialogueKind new_type, ShiftMode mode) {
  if (mode == ShiftMode::Pop)
    throw Error(ErrorKind::BadMove, "pop is performed by pop_embedding");
  const auto& history = state.top().history;
  size_t n = history.size();
  bool agreed = false;
  if (n >= 2 && history[n - 1].kind == MoveKind::AcceptShift &&
      history[n - 2].kind == MoveKind::ProposeShift &&
      history[n - 1].speaker != history[n - 2].speaker) {
    const auto* proposed = std::get_if<ShiftPayload>(&history[n - 2].payload);
    agreed = proposed && proposed->mode == mode && proposed->target == new_type;
  }
  if (!agreed)
    throw Error(ErrorKind::ShiftProtocol,
                "a shift requires a propose-shift answered by the other "
                "party's accept-shift");

  ShiftEntry entry;
  entry.turn = state.move_count;
  entry.from = state.current_type();
  entry.to = new_type;
  entry.mode = mode;
  entry.degraded = new_type == DialogueKind::Eristic;

  if (mode == ShiftMode::Replace) {
    state.stack.back().type = new_type;
  } else {
    if (state.depth() >= kMaxEmbedDepth)
      throw Error(ErrorKind::EmbedDepthExceeded,
                  "embedding beyond depth " + std::to_string(kMaxEmbedDepth));
    state.stack.push_back(fresh_frame(new_type, state.participants));
  }
  state.shift_log.push_back(entry);
  state.pending_shift.reset();
  state.pending_offer.reset();
  return state;
}

DialogueState pop_embedding(DialogueState state) {
  if (state.depth() < 2)
    throw Error(ErrorKind::RootPop, "cannot pop the root dialogue");
  const Frame& child = state.top();
  if (!child.closed)
    throw Error(ErrorKind::ShiftProtocol, "top frame is not closed");

  std::set<std::string> settled;
  if (child.type == DialogueKind::Deliberation) {
    // A provisional conclusion needs only one party's concession.
    for (const auto& move : child.history) {
      if (move.kind != MoveKind::Concede) continue;
      const std::string& s = payload_statement(move);
      auto store = child.stores.find(move.speaker);
      if (store != child.stores.end() && store->second.count(s))
        settled.insert(s);
    }
  } else {
    const auto& s0 = child.stores.at(state.participants[0]);
    const auto& s1 = child.stores.at(state.participants[1]);
    std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(),
                          std::inserter(settled, settled.begin()));
  }

  ShiftEntry entry;
  entry.turn = state.move_count;
  entry.from = child.type;
  entry.mode = ShiftMode::Pop;
  entry.degraded = false;
  state.stack.pop_back();
  entry.to = state.current_type();
  state.shift_log.push_back(entry);
  for (const auto& s : settled) {
    state.stack.back().stores[state.participants[0]].insert(s);
    state.stack.back().stores[state.participants[1]].insert(s);
  }
  state.pending_shift.reset();
  state.pending_offer.reset();
  return state;
}

DialogueState apply_move(DialogueState state, const Move& move) {
  if (state.closed())
    throw Error(ErrorKind::ClosedDialogue, "dialogue is closed");
  const std::string& sp = move.speaker;
  if (sp != state.participants[0] && sp != state.participants[1])
    throw Error(ErrorKind::RuleViolation, "unknown participant " + sp);
  if (sp != state.turn)
    throw Error(ErrorKind::RuleViolation,
                "it is " + state.turn + "'s turn, not " + sp + "'s");
  Role role = state.role_of(sp);
  DialogueKind type = state.current_type();
  if (!kind_permitted(type, role, move.kind))
    throw Error(ErrorKind::RuleViolation,
                std::string(to_string(move.kind)) + " is not permitted for the " +
                    role_name(role) + " in " + to_string(type));

  if (type == DialogueKind::Inquiry && move.kind != MoveKind::AnswerCq) {
    std::vector<std::string> defeated = defeated_instances(state, sp);
    if (!defeated.empty()) {
      bool resolves = false;
      if (move.kind == MoveKind::Retract) {
        const std::string& s = payload_statement(move);
        for (const auto& id : defeated)
          if (state.graph.argument(id).claim() == s) resolves = true;
      }
      if (!resolves)
        throw Error(ErrorKind::RuleViolation,
                    sp + " must answer the open challenge on " + defeated.front() +
                        " or retract its claim");
    }
  }

  state.move_count += 1;
  std::string next_turn = state.other(sp);
  bool keep_pending_shift = move.kind == MoveKind::ProposeShift;

  switch (move.kind) {
    case MoveKind::Assert: {
      const std::string& s = payload_statement(move);
      if (s.empty())
        throw Error(ErrorKind::RuleViolation, "assert requires a statement");
      state.stack.back().stores[sp].insert(s);
      break;
    }
    case MoveKind::Argue: {
      const ArgumentInstance* inst = std::get_if<ArgumentInstance>(&move.payload);
      if (!inst)
        throw Error(ErrorKind::BadMove, "argue carries no argument instance");
      state.graph = add_argument(state.graph, *inst);
      state.argument_owner[inst->id] = sp;
      for (const auto& st : inst->statements)
        state.stack.back().stores[sp].insert(st.text);
      break;
    }
    case MoveKind::PoseCq: {
      const CqPayload* cq = std::get_if<CqPayload>(&move.payload);
      if (!cq) throw Error(ErrorKind::BadMove, "pose-cq carries no target");
      auto owner = state.argument_owner.find(cq->argument_id);
      if (owner != state.argument_owner.end() && owner->second == sp)
        throw Error(ErrorKind::RuleViolation,
                    "cannot pose a critical question against one's own argument");
      state.graph = pose_cq(state.graph, cq->argument_id, cq->cq_index);
      // The challenged party keeps the floor to answer.
      next_turn = owner == state.argument_owner.end() ? state.other(sp)
                                                      : owner->second;
      break;
    }
    case MoveKind::AnswerCq: {
      const CqPayload* cq = std::get_if<CqPayload>(&move.payload);
      if (!cq) throw Error(ErrorKind::BadMove, "answer-cq carries no target");
      auto owner = state.argument_owner.find(cq->argument_id);
      if (owner == state.argument_owner.end() || owner->second != sp)
        throw Error(ErrorKind::RuleViolation,
                    "only the arguing party answers its critical questions");
      if (cq->answer_text.empty())
        throw Error(ErrorKind::RuleViolation, "answer-cq requires an answer");
      state.graph = answer_cq(state.graph, cq->argument_id, cq->cq_index,
                              cq->answer_text);
      break;
    }
    case MoveKind::Concede: {
      const std::string& s = payload_statement(move);
      if (!state.visible_commitments(state.other(sp)).count(s))
        throw Error(ErrorKind::RuleViolation,
                    "can only concede a statement the other party is "
                    "committed to");
      state.stack.back().stores[sp].insert(s);
      break;
    }
    case MoveKind::Retract: {
      const std::string& s = payload_statement(move);
      auto& store = state.stack.back().stores[sp];
      if (!store.count(s))
        throw Error(ErrorKind::RuleViolation,
                    sp + " is not committed to that statement in this frame");
      store.erase(s);
      break;
    }
    case MoveKind::Offer: {
      const OfferPayload* offer = std::get_if<OfferPayload>(&move.payload);
      if (!offer) throw Error(ErrorKind::BadMove, "offer carries no payload");
      if (offer->statement.empty())
        throw Error(ErrorKind::RuleViolation, "offer requires a statement");
      if (offer->cost && *offer->cost < 0)
        throw Error(ErrorKind::RuleViolation, "offer cost must be non-negative");
      state.pending_offer = PendingOffer{sp, offer->statement, offer->cost};
      break;
    }
    case MoveKind::Accept: {
      if (!state.pending_offer || state.pending_offer->offerer != state.other(sp))
        throw Error(ErrorKind::RuleViolation, "no open offer to accept");
      const std::string* s = std::get_if<std::string>(&move.payload);
      if (s && !s->empty() && *s != state.pending_offer->statement)
        throw Error(ErrorKind::RuleViolation,
                    "accept does not match the open offer");
      // Settlement commits both parties to the offered statement.
      const std::string settled = state.pending_offer->statement;
      state.stack.back().stores[state.participants[0]].insert(settled);
      state.stack.back().stores[state.participants[1]].insert(settled);
      state.pending_offer.reset();
      break;
    }
    case MoveKind::ProposeShift: {
      const ShiftPayload* payload = std::get_if<ShiftPayload>(&move.payload);
      if (!payload)
        throw Error(ErrorKind::BadMove, "propose-shift carries no target");
      if (payload->mode == ShiftMode::Pop)
        throw Error(ErrorKind::RuleViolation, "pop cannot be proposed");
      state.pending_shift = PendingShift{sp, *payload};
      break;
    }
    case MoveKind::AcceptShift: {
      if (!state.pending_shift ||
          state.pending_shift->proposer != state.other(sp))
        throw Error(ErrorKind::RuleViolation, "no shift proposal to accept");
      ShiftPayload payload = state.pending_shift->shift;
      state.stack.back().history.push_back(move);
      state = shift(std::move(state), payload.target, payload.mode);
      state.turn = next_turn;
      return state;
    }
    case MoveKind::Close: {
      state.stack.back().history.push_back(move);
      state.stack.back().closed = true;
      if (state.depth() >= 2) state = pop_embedding(std::move(state));
      state.turn = next_turn;
      if (!keep_pending_shift) state.pending_shift.reset();
      return state;
    }
  }

  state.stack.back().history.push_back(move);
  if (!keep_pending_shift) state.pending_shift.reset();
  state.turn = next_turn;
  return state;
}

std::pair<std::unique_ptr<ReplayPolicy>, std::unique_ptr<ReplayPolicy>>
ReplayPolicy::make_pair_for(std::vector<Move> moves) {
  auto shared = std::make_shared<Shared>();
  shared->moves = std::move(moves);
  return {std::unique_ptr<ReplayPolicy>(new ReplayPolicy(shared)),
          std::unique_ptr<ReplayPolicy>(new ReplayPolicy(shared))};
}

ReplayPolicy::ReplayPolicy(std::shared_ptr<Shared> shared)
    : shared_(std::move(shared)) {}

std::optional<Move> ReplayPolicy::next(const DialogueState& state,
                                       const std::string&) {
  if (shared_->cursor >= shared_->moves.size()) return std::nullopt;
  Move move = shared_->moves[shared_->cursor++];
  if (move.speaker.empty()) move.speaker = state.turn;
  return move;
}

std::optional<Move> ExhaustiveSceptic::next(const DialogueState& state,
                                            const std::string& self) {
  std::vector<Permission> perms = legal_moves(state);
  auto allowed = [&](MoveKind kind) {
    return std::any_of(perms.begin(), perms.end(), [&](const Permission& p) {
      return p.speaker == self && p.kind == kind;
    });
  };
  if (allowed(MoveKind::PoseCq)) {
    for (const auto& [id, inst] : state.graph.arguments) {
      auto owner = state.argument_owner.find(id);
      if (owner == state.argument_owner.end() || owner->second == self) continue;
      for (const auto& cq : inst.scheme.cqs)
        if (!state.graph.find_event(id, cq.index))
          return make_pose_cq(self, id, cq.index);
    }
  }
  if (allowed(MoveKind::Concede)) {
    Labelling labels = grounded_labelling(state.graph);
    std::set<std::string> own = state.visible_commitments(self);
    for (const auto& [id, inst] : state.graph.arguments) {
      auto owner = state.argument_owner.find(id);
      if (owner == state.argument_owner.end() || owner->second == self) continue;
      if (labels.at(id) == Label::In && !own.count(inst.claim()))
        return make_concede(self, inst.claim());
    }
  }
  if (allowed(MoveKind::Close)) return make_close(self);
  return std::nullopt;
}

CompliantProver::CompliantProver(std::vector<ArgumentInstance> instances)
    : instances_(std::move(instances)) {}

std::optional<Move> CompliantProver::next(const DialogueState& state,
                                          const std::string& self) {
  std::vector<Permission> perms = legal_moves(state);
  auto allowed = [&](MoveKind kind) {
    return std::any_of(perms.begin(), perms.end(), [&](const Permission& p) {
      return p.speaker == self && p.kind == kind;
    });
  };
  if (allowed(MoveKind::Argue)) {
    for (const auto& inst : instances_)
      if (!state.graph.arguments.count(inst.id)) return make_argue(self, inst);
  }
  if (allowed(MoveKind::AnswerCq)) {
    for (const auto& e : state.graph.cq_events) {
      if (e.status != CqStatus::Posed) continue;
      auto owner = state.argument_owner.find(e.target_argument);
      if (owner == state.argument_owner.end() || owner->second != self) continue;
      return make_answer_cq(self, e.target_argument, e.cq_index,
                            "The challenge is met with adequate grounds.");
    }
  }
  if (allowed(MoveKind::Close)) return make_close(self);
  return std::nullopt;
}

Transcript run_simulation(DialogueState initial, Policy& proponent_policy,
                          Policy& respondent_policy, int max_turns) {
  if (max_turns < 1)
    throw Error(ErrorKind::BadMove, "max_turns must be at least 1");

  Transcript transcript;
  transcript.type = initial.current_type();
  transcript.situation = initial.situation;
  transcript.goal = initial.goal;
  transcript.participants = initial.participants;

  DialogueState state = std::move(initial);
  while (static_cast<int>(transcript.records.size()) < max_turns) {
    if (state.closed()) break;
    Policy& policy = state.turn == state.participants[0] ? proponent_policy
                                                         : respondent_policy;
    std::optional<Move> move = policy.next(state, state.turn);
    if (!move) break;

    std::map<std::string, std::set<std::string>> before;
    for (const auto& p : state.participants)
      before[p] = state.visible_commitments(p);
    size_t shifts_before = state.shift_log.size();

    try {
      // Apply to a copy so a rejected move leaves the state intact for the
      // violation transcript.
      DialogueState next = apply_move(state, *move);
      state = std::move(next);
    } catch (const Error& e) {
      transcript.status = TranscriptStatus::Violation;
      transcript.violation = move->speaker + " " + to_string(move->kind) +
                             " rejected: " + e.what();
      transcript.final_state = std::move(state);
      return transcript;
    }

    TranscriptRecord record;
    record.index = state.move_count;
    record.move = *move;
    for (const auto& p : state.participants) {
      std::set<std::string> after = state.visible_commitments(p);
      for (const auto& s : after)
        if (!before[p].count(s)) record.deltas.push_back({p, s, true});
      for (const auto& s : before[p])
        if (!after.count(s)) record.deltas.push_back({p, s, false});
    }
    record.shifts.assign(state.shift_log.begin() + shifts_before,
                         state.shift_log.end());
    transcript.records.push_back(std::move(record));
  }

  transcript.status = state.closed() ? TranscriptStatus::Closed
                                     : TranscriptStatus::Timeout;
  transcript.final_state = std::move(state);
  return transcript;
}

std::vector<ShiftEntry> shift_report(const Transcript& transcript) {
  return transcript.final_state.shift_log;
}

}  // namespace argdial
