#include "argdial/errors.hpp"

namespace argdial {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedForm: return "malformed-form";
    case ErrorKind::AmbiguousMatch: return "ambiguity";
    case ErrorKind::BindingConflict: return "conflict";
    case ErrorKind::NonGroundTerm: return "non-ground-term";
    case ErrorKind::IncompleteSubstitution: return "incomplete-substitution";
    case ErrorKind::InvalidScheme: return "invalid-scheme";
    case ErrorKind::DuplicateScheme: return "duplicate-scheme";
    case ErrorKind::SchemeNotFound: return "not-found";
    case ErrorKind::ClassQualifierMismatch: return "class-qualifier-mismatch";
    case ErrorKind::IdCollision: return "id-collision";
    case ErrorKind::BadTermMap: return "bad-term-map";
    case ErrorKind::UnknownArgument: return "unknown-argument";
    case ErrorKind::DuplicateArgument: return "duplicate-argument";
    case ErrorKind::BadNodeId: return "bad-node-id";
    case ErrorKind::InvalidCqIndex: return "invalid-index";
    case ErrorKind::DuplicateCqEvent: return "duplicate-pose";
    case ErrorKind::CqNotPosed: return "not-posed";
    case ErrorKind::CqAlreadyAnswered: return "already-answered";
    case ErrorKind::GraphTooLarge: return "graph-too-large";
    case ErrorKind::IncoherentDialogue: return "incoherent-dialogue";
    case ErrorKind::RuleViolation: return "rule-violation";
    case ErrorKind::ShiftProtocol: return "shift-protocol";
    case ErrorKind::EmbedDepthExceeded: return "embed-depth-exceeded";
    case ErrorKind::RootPop: return "root-pop";
    case ErrorKind::ClosedDialogue: return "closed-dialogue";
    case ErrorKind::BadMove: return "bad-move";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace argdial
