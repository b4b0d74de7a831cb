#include "argdial/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace argdial {

const char* to_string(Qualifier q) {
  switch (q) {
    case Qualifier::Plausible: return "plausible";
    case Qualifier::Presumable: return "presumable";
    case Qualifier::Probable: return "probable";
    case Qualifier::Certain: return "certain";
  }
  return "?";
}

const char* to_string(SchemeClass c) {
  switch (c) {
    case SchemeClass::A: return "A";
    case SchemeClass::B: return "B";
    case SchemeClass::C: return "C";
  }
  return "?";
}

const char* to_string(FormRole r) {
  switch (r) {
    case FormRole::Data: return "data";
    case FormRole::Warrant: return "warrant";
    case FormRole::SpecificPremise: return "specific-premise";
    case FormRole::GeneralPremise: return "general-premise";
    case FormRole::MajorPremise: return "major-premise";
    case FormRole::MinorPremise: return "minor-premise";
    case FormRole::Conclusion: return "conclusion";
  }
  return "?";
}

const char* to_string(CqKind k) {
  switch (k) {
    case CqKind::BackingChallenge: return "backing-challenge";
    case CqKind::PremiseChallenge: return "premise-challenge";
    case CqKind::Rebut: return "rebut";
    case CqKind::Undercut: return "undercut";
    case CqKind::QualifierChallenge: return "qualifier-challenge";
  }
  return "?";
}

std::optional<Qualifier> qualifier_from_string(std::string_view s) {
  if (s == "plausible") return Qualifier::Plausible;
  if (s == "presumable") return Qualifier::Presumable;
  if (s == "probable") return Qualifier::Probable;
  if (s == "certain") return Qualifier::Certain;
  return std::nullopt;
}

std::optional<SchemeClass> scheme_class_from_string(std::string_view s) {
  if (s == "A") return SchemeClass::A;
  if (s == "B") return SchemeClass::B;
  if (s == "C") return SchemeClass::C;
  return std::nullopt;
}

std::optional<FormRole> form_role_from_string(std::string_view s) {
  if (s == "data") return FormRole::Data;
  if (s == "warrant") return FormRole::Warrant;
  if (s == "specific-premise") return FormRole::SpecificPremise;
  if (s == "general-premise") return FormRole::GeneralPremise;
  if (s == "major-premise") return FormRole::MajorPremise;
  if (s == "minor-premise") return FormRole::MinorPremise;
  if (s == "conclusion") return FormRole::Conclusion;
  return std::nullopt;
}

std::optional<CqKind> cq_kind_from_string(std::string_view s) {
  if (s == "backing-challenge") return CqKind::BackingChallenge;
  if (s == "premise-challenge") return CqKind::PremiseChallenge;
  if (s == "rebut") return CqKind::Rebut;
  if (s == "undercut") return CqKind::Undercut;
  if (s == "qualifier-challenge") return CqKind::QualifierChallenge;
  return std::nullopt;
}

Qualifier weaken(Qualifier q) {
  if (q == Qualifier::Plausible) return Qualifier::Plausible;
  return static_cast<Qualifier>(static_cast<int>(q) - 1);
}

namespace {

bool valid_slot_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  out.append(s);
  out += '"';
  return out;
}

}  // namespace

std::vector<TemplateSegment> split_template(std::string_view tmpl) {
  std::vector<TemplateSegment> segments;
  std::string literal;
  size_t i = 0;
  while (i < tmpl.size()) {
    char c = tmpl[i];
    if (c == '{') {
      size_t close = tmpl.find_first_of("{}", i + 1);
      if (close == std::string_view::npos || tmpl[close] == '{')
        throw Error(ErrorKind::MalformedForm,
                    "unbalanced slot delimiter at offset " + std::to_string(i));
      std::string_view name = tmpl.substr(i + 1, close - i - 1);
      if (name.empty())
        throw Error(ErrorKind::MalformedForm,
                    "empty slot at offset " + std::to_string(i));
      if (!valid_slot_name(name))
        throw Error(ErrorKind::MalformedForm,
                    "invalid slot name " + quoted(name));
      if (!literal.empty()) {
        segments.push_back({false, std::move(literal)});
        literal.clear();
      }
      segments.push_back({true, std::string(name)});
      i = close + 1;
    } else if (c == '}') {
      throw Error(ErrorKind::MalformedForm,
                  "unbalanced slot delimiter at offset " + std::to_string(i));
    } else {
      literal += c;
      ++i;
    }
  }
  if (!literal.empty()) segments.push_back({false, std::move(literal)});
  return segments;
}

bool contains_slot(std::string_view text) {
  size_t open = text.find('{');
  while (open != std::string_view::npos) {
    size_t close = text.find_first_of("{}", open + 1);
    if (close != std::string_view::npos && text[close] == '}' &&
        valid_slot_name(text.substr(open + 1, close - open - 1)))
      return true;
    open = text.find('{', open + 1);
  }
  return false;
}

void Substitution::bind(const std::string& variable, const std::string& term) {
  if (contains_slot(term))
    throw Error(ErrorKind::NonGroundTerm,
                "term bound to " + variable + " contains a variable slot");
  auto it = bindings.find(variable);
  if (it != bindings.end()) {
    if (it->second != term)
      throw Error(ErrorKind::BindingConflict,
                  "variable " + variable + " bound to conflicting texts");
    return;
  }
  bindings.emplace(variable, term);
}

const std::string* Substitution::find(const std::string& variable) const {
  auto it = bindings.find(variable);
  return it == bindings.end() ? nullptr : &it->second;
}

Substitution Substitution::of(
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  Substitution s;
  for (const auto& [var, term] : pairs) s.bind(var, term);
  return s;
}

const CriticalQuestion* Scheme::cq(int index) const {
  for (const auto& q : cqs)
    if (q.index == index) return &q;
  return nullptr;
}

const GroundStatement* ArgumentInstance::statement_with_role(
    FormRole role) const {
  for (const auto& s : statements)
    if (s.role == role) return &s;
  return nullptr;
}

const std::string& ArgumentInstance::claim() const {
  return statements.back().text;
}

AmbiguousMatchError::AmbiguousMatchError(const std::string& message,
                                         std::vector<Substitution> candidates)
    : Error(ErrorKind::AmbiguousMatch, message),
      candidates_(std::move(candidates)) {}

SententialForm parse_form(std::string_view tmpl, FormRole role) {
  SententialForm form;
  form.role = role;
  form.text = std::string(tmpl);
  for (const auto& seg : split_template(tmpl)) {
    if (!seg.is_slot) continue;
    if (std::find(form.variables.begin(), form.variables.end(), seg.text) ==
        form.variables.end())
      form.variables.push_back(seg.text);
  }
  return form;
}

namespace {

// Collects every consistent segmentation; candidates are deduplicated since
// different split points can induce the same bindings.
void match_segments(const std::vector<TemplateSegment>& segments, size_t seg,
                    std::string_view sentence, size_t pos,
                    std::map<std::string, std::string>& partial,
                    std::set<std::map<std::string, std::string>>& out) {
  if (out.size() > 64) return;  // enough to report ambiguity
  if (seg == segments.size()) {
    if (pos == sentence.size()) out.insert(partial);
    return;
  }
  const TemplateSegment& s = segments[seg];
  if (!s.is_slot) {
    if (sentence.compare(pos, s.text.size(), s.text) == 0)
      match_segments(segments, seg + 1, sentence, pos + s.text.size(), partial,
                     out);
    return;
  }
  auto bound = partial.find(s.text);
  if (bound != partial.end()) {
    const std::string& term = bound->second;
    if (sentence.compare(pos, term.size(), term) == 0)
      match_segments(segments, seg + 1, sentence, pos + term.size(), partial,
                     out);
    return;
  }
  for (size_t end = pos + 1; end <= sentence.size(); ++end) {
    auto [it, inserted] =
        partial.emplace(s.text, std::string(sentence.substr(pos, end - pos)));
    (void)inserted;
    match_segments(segments, seg + 1, sentence, end, partial, out);
    partial.erase(it);
  }
}

}  // namespace

std::optional<Substitution> match_form(const SententialForm& form,
                                       std::string_view sentence) {
  std::vector<TemplateSegment> segments = split_template(form.text);
  std::set<std::map<std::string, std::string>> solutions;
  std::map<std::string, std::string> partial;
  match_segments(segments, 0, sentence, 0, partial, solutions);
  if (solutions.empty()) return std::nullopt;
  if (solutions.size() == 1) {
    Substitution sub;
    sub.bindings = *solutions.begin();
    return sub;
  }
  std::vector<Substitution> candidates;
  std::ostringstream msg;
  msg << solutions.size() << " substitutions match form " << quoted(form.text)
      << ":";
  for (const auto& bindings : solutions) {
    Substitution sub;
    sub.bindings = bindings;
    candidates.push_back(sub);
    msg << " {";
    bool first = true;
    for (const auto& [var, term] : bindings) {
      if (!first) msg << ", ";
      first = false;
      msg << var << "=" << quoted(term);
    }
    msg << "}";
  }
  throw AmbiguousMatchError(msg.str(), std::move(candidates));
}

Substitution merge_substitutions(const Substitution& a, const Substitution& b) {
  Substitution merged = a;
  for (const auto& [var, term] : b.bindings) merged.bind(var, term);
  return merged;
}

std::string instantiate_form(const SententialForm& form,
                             const Substitution& sub) {
  std::string out;
  std::vector<std::string> unbound;
  for (const auto& seg : split_template(form.text)) {
    if (!seg.is_slot) {
      out += seg.text;
      continue;
    }
    if (const std::string* term = sub.find(seg.text)) {
      out += *term;
    } else if (std::find(unbound.begin(), unbound.end(), seg.text) ==
               unbound.end()) {
      unbound.push_back(seg.text);
    }
  }
  if (!unbound.empty()) {
    std::string msg = "unbound variables:";
    for (const auto& v : unbound) msg += " " + v;
    throw Error(ErrorKind::IncompleteSubstitution, msg);
  }
  return out;
}

ArgumentInstance instantiate_scheme(const Scheme& scheme, const Substitution& sub,
                                    std::string instance_id) {
  std::vector<std::string> unbound;
  for (const auto& v : scheme.variables)
    if (!sub.find(v)) unbound.push_back(v);
  if (!unbound.empty()) {
    std::string msg = "unbound variables:";
    for (const auto& v : unbound) msg += " " + v;
    throw Error(ErrorKind::IncompleteSubstitution, msg);
  }
  ArgumentInstance instance;
  instance.id = std::move(instance_id);
  instance.scheme = scheme;
  instance.substitution = sub;
  instance.qualifier = scheme.default_qualifier;
  for (const auto& p : scheme.premises)
    instance.statements.push_back({p.role, instantiate_form(p, sub)});
  instance.statements.push_back(
      {FormRole::Conclusion, instantiate_form(scheme.conclusion, sub)});
  return instance;
}

bool ValidationReport::ok() const {
  return std::all_of(results.begin(), results.end(),
                     [](const ConditionResult& r) { return r.passed; });
}

const ConditionResult* ValidationReport::find(std::string_view condition) const {
  for (const auto& r : results)
    if (r.condition == condition) return &r;
  return nullptr;
}

ValidationReport validate_scheme(const Scheme& scheme) {
  ValidationReport report;

  report.results.push_back(
      {"i", !scheme.premises.empty(),
       scheme.premises.empty() ? "scheme has no premise forms"
                               : "at least one premise form"});

  bool well_formed = true;
  std::string detail = "all templates parse and reference declared variables";
  std::set<std::string> declared(scheme.variables.begin(),
                                 scheme.variables.end());
  if (declared.size() != scheme.variables.size()) {
    well_formed = false;
    detail = "duplicate variable declaration";
  }
  auto check_form = [&](const SententialForm& form) {
    if (!well_formed) return;
    try {
      for (const auto& seg : split_template(form.text)) {
        if (seg.is_slot && !declared.count(seg.text)) {
          well_formed = false;
          detail = "undeclared variable " + seg.text + " in form";
          return;
        }
      }
    } catch (const Error& e) {
      well_formed = false;
      detail = e.what();
    }
  };
  for (const auto& p : scheme.premises) check_form(p);
  check_form(scheme.conclusion);
  for (const auto& q : scheme.cqs) {
    if (!well_formed) break;
    try {
      for (const auto& seg : split_template(q.text)) {
        if (seg.is_slot && !declared.count(seg.text)) {
          well_formed = false;
          detail = "undeclared variable " + seg.text + " in critical question";
        }
      }
    } catch (const Error& e) {
      well_formed = false;
      detail = e.what();
    }
  }
  report.results.push_back({"ii", well_formed, detail});

  bool has_slot = scheme.conclusion.has_slots();
  for (const auto& p : scheme.premises) has_slot = has_slot || p.has_slots();
  report.results.push_back(
      {"iii", has_slot,
       has_slot ? "a form contains a variable slot"
                : "no form contains a variable slot"});

  bool one_conclusion =
      !scheme.conclusion.text.empty() &&
      scheme.conclusion.role == FormRole::Conclusion &&
      std::none_of(scheme.premises.begin(), scheme.premises.end(),
                   [](const SententialForm& p) {
                     return p.role == FormRole::Conclusion;
                   });
  report.results.push_back(
      {"iv", one_conclusion,
       one_conclusion ? "exactly one conclusion form"
                      : "scheme must have exactly one conclusion form"});

  bool class_ok = scheme.scheme_class == SchemeClass::C ||
                  scheme.default_qualifier == Qualifier::Certain;
  report.results.push_back(
      {"class-qualifier", class_ok,
       class_ok ? "class and qualifier consistent"
                : "class A/B schemes must carry the certain qualifier"});

  return report;
}

}  // namespace argdial
