#include "argdial/library.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace argdial {

namespace {

Scheme make_scheme(std::string id, std::string name, SchemeClass cls,
                   Qualifier qualifier, std::vector<std::string> variables,
                   std::vector<std::pair<FormRole, std::string>> premises,
                   std::string conclusion,
                   std::vector<std::pair<CqKind, std::string>> cqs) {
  Scheme s;
  s.id = std::move(id);
  s.name = std::move(name);
  s.scheme_class = cls;
  s.default_qualifier = qualifier;
  s.variables = std::move(variables);
  for (auto& [role, text] : premises) s.premises.push_back(parse_form(text, role));
  s.conclusion = parse_form(conclusion, FormRole::Conclusion);
  int index = 1;
  for (auto& [kind, text] : cqs) s.cqs.push_back({index++, kind, text});
  return s;
}

std::vector<Scheme> make_builtins() {
  std::vector<Scheme> out;

  out.push_back(make_scheme(
      "defeasible_modus_ponens", "Defeasible Modus Ponens", SchemeClass::C,
      Qualifier::Presumable, {"P", "Q"},
      {{FormRole::Data, "{P}."},
       {FormRole::Warrant, "As a rule, if {P}, then {Q}."}},
      "{Q}.",
      {{CqKind::BackingChallenge,
        "What reason is there to accept that, as a rule, if {P}, then {Q}?"},
       {CqKind::Undercut,
        "Is the present case an exception to the rule that if {P}, then "
        "{Q}?"}}));

  out.push_back(make_scheme(
      "argument_from_sign", "Argument from Sign", SchemeClass::C,
      Qualifier::Presumable, {"A", "B"},
      {{FormRole::SpecificPremise, "{A} (a finding) is true in this situation."},
       {FormRole::GeneralPremise,
        "{B} is generally indicated as true when its sign, {A}, is true."}},
      "{B} is true in this situation.",
      {{CqKind::BackingChallenge,
        "What is the strength of the correlation of the sign with the event "
        "signified?"},
       {CqKind::Rebut,
        "Are there other events that would more reliably account for the "
        "sign?"}}));

  out.push_back(make_scheme(
      "argument_from_an_established_rule", "Argument from an Established Rule",
      SchemeClass::C, Qualifier::Presumable, {"A", "x", "a"},
      {{FormRole::MajorPremise,
        "If carrying out types of actions including {A} is the established "
        "rule for {x}, then (unless the case is an exception), {x} must carry "
        "out {A}."},
       {FormRole::MinorPremise,
        "Carrying out types of actions including {A} is the established rule "
        "for {a}."}},
      "{a} must carry out {A}.",
      {{CqKind::PremiseChallenge,
        "Does the rule require carrying out types of actions that include {A} "
        "as an instance?"},
       {CqKind::Rebut,
        "Are there other established rules that might conflict with or "
        "override this one?"},
       {CqKind::Undercut,
        "Is this case an exceptional one, that is, could there be extenuating "
        "circumstances or an excuse for noncompliance?"}}));

  out.push_back(make_scheme(
      "practical_inference", "Practical Inference", SchemeClass::C,
      Qualifier::Presumable, {"G", "A"},
      {{FormRole::MajorPremise, "I have a goal {G}."},
       {FormRole::MinorPremise,
        "Carrying out this action {A} is a means to realise {G}."}},
      "I ought (practically speaking) to carry out this action {A}.",
      {{CqKind::Rebut,
        "What other goals that I have that might conflict with {G} should be "
        "considered?"},
       {CqKind::Undercut,
        "What alternative actions to my bringing about {A} that would also "
        "bring about {G} should be considered?"},
       {CqKind::Undercut,
        "Among bringing about {A} and these alternative actions, which is "
        "arguably the most efficient?"},
       {CqKind::PremiseChallenge,
        "What grounds are there for arguing it is practically possible for me "
        "to bring about {A}?"},
       {CqKind::Rebut,
        "What consequences of my bringing about {A} should also be taken into "
        "account?"}}));

  out.push_back(make_scheme(
      "ethotic", "Ethotic Argument", SchemeClass::C, Qualifier::Presumable,
      {"x", "a"},
      {{FormRole::MajorPremise,
        "If {x} is a person of good (bad) moral character, then what {x} says "
        "should be accepted as more plausible (rejected as less plausible)."},
       {FormRole::MinorPremise,
        "{a} is a person of good (bad) moral character."}},
      "what {a} says should be accepted as more plausible (rejected as less "
      "plausible).",
      {{CqKind::PremiseChallenge,
        "Is {a} a person of good (bad) moral character?"},
       {CqKind::Undercut, "Is moral character relevant in the dialogue?"},
       {CqKind::QualifierChallenge,
        "Is the weight of presumption claimed strongly enough warranted by "
        "the evidence given?"}}));

  out.push_back(make_scheme(
      "ethotic_mathematical", "Ethotic Mathematical Argument", SchemeClass::C,
      Qualifier::Presumable, {"x", "a"},
      {{FormRole::MajorPremise,
        "If {x} is a person of good (bad) mathematical character, then what "
        "{x} says should be accepted as more plausible (rejected as less "
        "plausible)."},
       {FormRole::MinorPremise,
        "{a} is a person of good (bad) mathematical character."}},
      "what {a} says should be accepted as more plausible (rejected as less "
      "plausible).",
      {{CqKind::PremiseChallenge,
        "Is {a} a person of good (bad) mathematical character?"},
       {CqKind::Undercut,
        "Is mathematical character relevant in the dialogue?"},
       {CqKind::QualifierChallenge,
        "Is the weight of presumption claimed strongly enough warranted by "
        "the evidence given?"}}));

  return out;
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool iequal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

}  // namespace

const std::vector<Scheme>& builtin_schemes() {
  static const std::vector<Scheme> builtins = make_builtins();
  return builtins;
}

std::string replace_whole_words(std::string_view text, const std::string& from,
                                const std::string& to, bool* changed) {
  if (changed) *changed = false;
  if (from.empty()) return std::string(text);
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    bool at_boundary = i == 0 || !word_char(text[i - 1]);
    if (at_boundary && i + from.size() <= text.size() &&
        iequal(text.substr(i, from.size()), from) &&
        (i + from.size() == text.size() || !word_char(text[i + from.size()]))) {
      std::string replacement = to;
      if (!replacement.empty() &&
          std::isupper(static_cast<unsigned char>(text[i])))
        replacement[0] =
            static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
      out += replacement;
      i += from.size();
      if (changed) *changed = true;
    } else {
      out += text[i];
      ++i;
    }
  }
  return out;
}

namespace {

// Rewrites only the literal runs of a template, leaving slot names intact.
std::string localize_template(const std::string& tmpl, const TermMap& map,
                              std::map<std::string, bool>& matched) {
  std::vector<TemplateSegment> segments;
  try {
    segments = split_template(tmpl);
  } catch (const Error&) {
    segments = {{false, tmpl}};
  }
  std::string out;
  for (const auto& seg : segments) {
    if (seg.is_slot) {
      out += "{" + seg.text + "}";
      continue;
    }
    std::string literal = seg.text;
    for (const auto& [from, to] : map.replacements) {
      bool changed = false;
      literal = replace_whole_words(literal, from, to, &changed);
      if (changed) matched[from] = true;
    }
    out += literal;
  }
  return out;
}

}  // namespace

LocalizeResult localize_scheme(const Scheme& scheme, const TermMap& map,
                               std::string new_id) {
  if (map.replacements.empty())
    throw Error(ErrorKind::BadTermMap, "term map is empty");
  std::map<std::string, bool> matched;
  for (const auto& [from, to] : map.replacements) matched[from] = false;

  LocalizeResult result;
  result.scheme = scheme;
  result.scheme.id = std::move(new_id);
  for (auto& p : result.scheme.premises)
    p = parse_form(localize_template(p.text, map, matched), p.role);
  result.scheme.conclusion = parse_form(
      localize_template(scheme.conclusion.text, map, matched),
      FormRole::Conclusion);
  for (auto& q : result.scheme.cqs)
    q.text = localize_template(q.text, map, matched);

  for (const auto& [from, hit] : matched)
    if (!hit)
      result.warnings.push_back("term \"" + from +
                                "\" does not occur in any template");
  return result;
}

bool structurally_equal(const Scheme& a, const Scheme& b) {
  return a.scheme_class == b.scheme_class &&
         a.default_qualifier == b.default_qualifier &&
         a.variables == b.variables && a.premises == b.premises &&
         a.conclusion == b.conclusion && a.cqs == b.cqs;
}

void SchemeRegistry::register_scheme(Scheme scheme, Provenance provenance) {
  ValidationReport report = validate_scheme(scheme);
  std::string failures;
  for (const auto& r : report.results) {
    if (r.passed || r.condition == "class-qualifier") continue;
    if (!failures.empty()) failures += "; ";
    failures += "(" + r.condition + ") " + r.detail;
  }
  if (!failures.empty())
    throw Error(ErrorKind::InvalidScheme,
                "scheme " + scheme.id + " rejected: " + failures);

  std::unique_lock lock(mutex_);
  if (schemes_.count(scheme.id))
    throw Error(ErrorKind::DuplicateScheme,
                "scheme id " + scheme.id + " already registered");
  order_.push_back(scheme.id);
  std::string id = scheme.id;
  schemes_.emplace(std::move(id),
                   std::make_pair(std::move(scheme), provenance));
}

const Scheme& SchemeRegistry::find_locked(const std::string& id) const {
  auto it = schemes_.find(id);
  if (it == schemes_.end())
    throw Error(ErrorKind::SchemeNotFound, "no scheme with id " + id);
  return it->second.first;
}

Scheme SchemeRegistry::lookup(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return find_locked(id);
}

bool SchemeRegistry::contains(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return schemes_.count(id) != 0;
}

std::vector<std::string> SchemeRegistry::ids() const {
  std::shared_lock lock(mutex_);
  return order_;
}

Provenance SchemeRegistry::provenance(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = schemes_.find(id);
  if (it == schemes_.end())
    throw Error(ErrorKind::SchemeNotFound, "no scheme with id " + id);
  return it->second.second;
}

SchemeClass SchemeRegistry::classify(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const Scheme& s = find_locked(id);
  if (s.scheme_class != SchemeClass::C &&
      s.default_qualifier != Qualifier::Certain)
    throw Error(ErrorKind::ClassQualifierMismatch,
                "scheme " + id + " is class " + to_string(s.scheme_class) +
                    " but its qualifier is " + to_string(s.default_qualifier));
  return s.scheme_class;
}

LocalizeResult SchemeRegistry::localize(const std::string& source_id,
                                        const TermMap& map,
                                        const std::string& new_id) {
  Scheme source = lookup(source_id);
  if (contains(new_id))
    throw Error(ErrorKind::IdCollision,
                "scheme id " + new_id + " already registered");
  LocalizeResult result = localize_scheme(source, map, new_id);
  register_scheme(result.scheme, Provenance::User);
  return result;
}

void register_builtins(SchemeRegistry& registry) {
  for (const auto& s : builtin_schemes())
    registry.register_scheme(s, Provenance::Builtin);
}

}  // namespace argdial
