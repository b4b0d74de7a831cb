#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "argdial/scheme.hpp"

namespace argdial {

// The six built-in schemes, in their canonical order:
//   defeasible_modus_ponens, argument_from_sign,
//   argument_from_an_established_rule, practical_inference,
//   ethotic, ethotic_mathematical.
const std::vector<Scheme>& builtin_schemes();

struct TermMap {
  std::map<std::string, std::string> replacements;  // source word -> target
};

struct LocalizeResult {
  Scheme scheme;
  std::vector<std::string> warnings;  // one per map key that matched nothing
};

// Rewrites every whole-word occurrence of each source word in every premise,
// conclusion, and critical-question template. Matching is case-insensitive;
// the replacement preserves the case of the first letter. Slot names are
// never touched. Class, qualifier, roles, and CQ kinds are preserved.
LocalizeResult localize_scheme(const Scheme& scheme, const TermMap& map,
                               std::string new_id);

// Equality of substance: class, qualifier, variables, premises, conclusion,
// and critical questions. Ignores id, name, and provenance.
bool structurally_equal(const Scheme& a, const Scheme& b);

// Whole-word, case-insensitive replacement preserving first-letter case.
std::string replace_whole_words(std::string_view text, const std::string& from,
                                const std::string& to, bool* changed = nullptr);

enum class Provenance { Builtin, User };

// Scheme store with concurrent reads and serialized registration.
class SchemeRegistry {
public:
  SchemeRegistry() = default;
  SchemeRegistry(const SchemeRegistry&) = delete;
  SchemeRegistry& operator=(const SchemeRegistry&) = delete;

  // Rejects duplicate ids and schemes failing conditions i-iv.
  void register_scheme(Scheme scheme, Provenance provenance = Provenance::User);
  Scheme lookup(const std::string& id) const;  // throws SchemeNotFound
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;  // registration order
  Provenance provenance(const std::string& id) const;

  // Returns the stored class; throws ClassQualifierMismatch for a class A/B
  // scheme whose default qualifier is not certain.
  SchemeClass classify(const std::string& id) const;

  // Localizes a registered scheme and registers the result under new_id.
  LocalizeResult localize(const std::string& source_id, const TermMap& map,
                          const std::string& new_id);

private:
  const Scheme& find_locked(const std::string& id) const;

  mutable std::shared_mutex mutex_;
  std::vector<std::string> order_;
  std::map<std::string, std::pair<Scheme, Provenance>> schemes_;
};

void register_builtins(SchemeRegistry& registry);

}  // namespace argdial
