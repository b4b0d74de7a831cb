#pragma once

#include <stdexcept>
#include <string>

namespace argdial {

enum class ErrorKind {
  // scheme model
  MalformedForm,
  AmbiguousMatch,
  BindingConflict,
  NonGroundTerm,
  IncompleteSubstitution,
  // scheme library
  InvalidScheme,
  DuplicateScheme,
  SchemeNotFound,
  ClassQualifierMismatch,
  IdCollision,
  BadTermMap,
  // evaluation
  UnknownArgument,
  DuplicateArgument,
  BadNodeId,
  InvalidCqIndex,
  DuplicateCqEvent,
  CqNotPosed,
  CqAlreadyAnswered,
  GraphTooLarge,
  // dialogue
  IncoherentDialogue,
  RuleViolation,
  ShiftProtocol,
  EmbedDepthExceeded,
  RootPop,
  ClosedDialogue,
  BadMove,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace argdial
