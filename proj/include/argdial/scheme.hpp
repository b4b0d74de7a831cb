#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "argdial/errors.hpp"

namespace argdial {

// Qualifier lattice, weakest first so the enum order is the strength order.
enum class Qualifier { Plausible, Presumable, Probable, Certain };

enum class SchemeClass { A, B, C };

enum class FormRole {
  Data,
  Warrant,
  SpecificPremise,
  GeneralPremise,
  MajorPremise,
  MinorPremise,
  Conclusion,
};

enum class CqKind {
  BackingChallenge,
  PremiseChallenge,
  Rebut,
  Undercut,
  QualifierChallenge,
};

const char* to_string(Qualifier q);
const char* to_string(SchemeClass c);
const char* to_string(FormRole r);
const char* to_string(CqKind k);
std::optional<Qualifier> qualifier_from_string(std::string_view s);
std::optional<SchemeClass> scheme_class_from_string(std::string_view s);
std::optional<FormRole> form_role_from_string(std::string_view s);
std::optional<CqKind> cq_kind_from_string(std::string_view s);

// One lattice step weaker; saturates at plausible.
Qualifier weaken(Qualifier q);

// A template is literal text interleaved with {Name} slots.
struct TemplateSegment {
  bool is_slot = false;
  std::string text;  // literal text, or the slot's variable name
  bool operator==(const TemplateSegment&) const = default;
};

// Splits a template into segments. Throws MalformedForm on unbalanced or
// empty slot delimiters and on invalid slot names.
std::vector<TemplateSegment> split_template(std::string_view tmpl);

// True if the text contains at least one well-formed {Name} slot.
bool contains_slot(std::string_view text);

struct SententialForm {
  FormRole role = FormRole::Conclusion;
  std::string text;                    // template with {Name} slots
  std::vector<std::string> variables;  // distinct, in order of first appearance

  bool has_slots() const { return !variables.empty(); }
  bool operator==(const SententialForm&) const = default;
};

struct CriticalQuestion {
  int index = 0;  // 1-based, consecutive within a scheme
  CqKind kind = CqKind::Rebut;
  std::string text;
  bool operator==(const CriticalQuestion&) const = default;
};

struct Substitution {
  std::map<std::string, std::string> bindings;  // variable -> ground text

  // Throws BindingConflict when the variable is already bound to different
  // text and NonGroundTerm when the term itself contains a slot.
  void bind(const std::string& variable, const std::string& term);
  const std::string* find(const std::string& variable) const;
  bool empty() const { return bindings.empty(); }

  static Substitution of(
      std::initializer_list<std::pair<std::string, std::string>> pairs);

  bool operator==(const Substitution&) const = default;
};

struct Scheme {
  std::string id;
  std::string name;  // display only, never serialized
  SchemeClass scheme_class = SchemeClass::C;
  Qualifier default_qualifier = Qualifier::Presumable;
  std::vector<std::string> variables;  // declared, unique, declaration order
  std::vector<SententialForm> premises;
  SententialForm conclusion;
  std::vector<CriticalQuestion> cqs;

  const CriticalQuestion* cq(int index) const;
  bool operator==(const Scheme&) const = default;
};

struct GroundStatement {
  FormRole role = FormRole::Conclusion;
  std::string text;
  bool operator==(const GroundStatement&) const = default;
};

struct ArgumentInstance {
  std::string id;
  Scheme scheme;  // full copy, so instances evaluate without a registry
  Substitution substitution;
  std::vector<GroundStatement> statements;  // premises in order, conclusion last
  Qualifier qualifier = Qualifier::Presumable;

  const std::string& scheme_id() const { return scheme.id; }
  const GroundStatement* statement_with_role(FormRole role) const;
  // Conclusion text; statements is never empty for a well-formed instance.
  const std::string& claim() const;
  bool operator==(const ArgumentInstance&) const = default;
};

class AmbiguousMatchError : public Error {
public:
  AmbiguousMatchError(const std::string& message,
                      std::vector<Substitution> candidates);
  const std::vector<Substitution>& candidates() const { return candidates_; }

private:
  std::vector<Substitution> candidates_;
};

// Parses a template into a sentential form, collecting its variables.
SententialForm parse_form(std::string_view tmpl,
                          FormRole role = FormRole::Conclusion);

// Matches a ground sentence against a form. Returns the unique substitution
// that reproduces the sentence, absent when no segmentation fits, and throws
// AmbiguousMatchError listing every candidate when more than one fits.
// Slot captures are non-empty; repeated slots must capture identical text.
std::optional<Substitution> match_form(const SententialForm& form,
                                       std::string_view sentence);

// Union of two substitutions; BindingConflict names the offending variable.
Substitution merge_substitutions(const Substitution& a, const Substitution& b);

// Replaces slots with bound text. Throws IncompleteSubstitution listing
// every unbound variable of the template.
std::string instantiate_form(const SententialForm& form,
                             const Substitution& sub);

// Builds a ground argument carrying the Toulmin roles. The substitution must
// bind every declared variable; unbound ones are all named in the error.
ArgumentInstance instantiate_scheme(const Scheme& scheme,
                                    const Substitution& sub,
                                    std::string instance_id = {});

struct ConditionResult {
  std::string condition;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> results;

  bool ok() const;
  const ConditionResult* find(std::string_view condition) const;
};

// Checks the four scheme well-formedness conditions:
//   (i) at least one premise form,
//   (ii) every template parses and references only declared variables,
//   (iii) at least one form contains a variable slot,
//   (iv) exactly one conclusion form,
// plus class/qualifier consistency (class A/B implies certain).
ValidationReport validate_scheme(const Scheme& scheme);

}  // namespace argdial
