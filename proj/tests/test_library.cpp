#include <functional>
#include <string>
#include <vector>

#include "argdial/errors.hpp"
#include "argdial/library.hpp"
#include "doctest.h"

using namespace argdial;

namespace {

const Scheme& builtin(const std::string& id) {
  for (const auto& s : builtin_schemes())
    if (s.id == id) return s;
  throw std::runtime_error("missing builtin " + id);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected an error");
}

}  // namespace

TEST_SUITE("library") {

TEST_CASE("six built-ins in canonical order, all class C presumable") {
  const auto& schemes = builtin_schemes();
  REQUIRE(schemes.size() == 6);
  std::vector<std::string> ids;
  for (const auto& s : schemes) {
    ids.push_back(s.id);
    CHECK(s.scheme_class == SchemeClass::C);
    CHECK(s.default_qualifier == Qualifier::Presumable);
    CHECK(validate_scheme(s).ok());
  }
  CHECK(ids == std::vector<std::string>{
                   "defeasible_modus_ponens", "argument_from_sign",
                   "argument_from_an_established_rule", "practical_inference",
                   "ethotic", "ethotic_mathematical"});
}

TEST_CASE("built-in critical question kinds carry the attack taxonomy") {
  auto kinds = [](const std::string& id) {
    std::vector<CqKind> out;
    for (const auto& q : builtin(id).cqs) out.push_back(q.kind);
    return out;
  };
  CHECK(kinds("defeasible_modus_ponens") ==
        std::vector<CqKind>{CqKind::BackingChallenge, CqKind::Undercut});
  CHECK(kinds("argument_from_sign") ==
        std::vector<CqKind>{CqKind::BackingChallenge, CqKind::Rebut});
  CHECK(kinds("argument_from_an_established_rule") ==
        std::vector<CqKind>{CqKind::PremiseChallenge, CqKind::Rebut,
                            CqKind::Undercut});
  CHECK(kinds("practical_inference") ==
        std::vector<CqKind>{CqKind::Rebut, CqKind::Undercut, CqKind::Undercut,
                            CqKind::PremiseChallenge, CqKind::Rebut});
  CHECK(kinds("ethotic") ==
        std::vector<CqKind>{CqKind::PremiseChallenge, CqKind::Undercut,
                            CqKind::QualifierChallenge});
  CHECK(kinds("ethotic_mathematical") == kinds("ethotic"));
}

TEST_CASE("localizing ethotic to the mathematical domain reproduces the "
          "built-in variant") {
  TermMap map;
  map.replacements["moral"] = "mathematical";
  LocalizeResult r = localize_scheme(builtin("ethotic"), map, "eth_math");
  CHECK(r.warnings.empty());
  CHECK(r.scheme.id == "eth_math");
  CHECK(structurally_equal(r.scheme, builtin("ethotic_mathematical")));
  // Same texts, not merely the same shape.
  CHECK(r.scheme.premises == builtin("ethotic_mathematical").premises);
  CHECK(r.scheme.conclusion == builtin("ethotic_mathematical").conclusion);
  CHECK(r.scheme.cqs == builtin("ethotic_mathematical").cqs);
}

TEST_CASE("localization with an identity map changes no text") {
  TermMap map;
  map.replacements["moral"] = "moral";
  LocalizeResult r = localize_scheme(builtin("ethotic"), map, "eth_same");
  CHECK(structurally_equal(r.scheme, builtin("ethotic")));
}

TEST_CASE("localization warns for terms that never occur") {
  TermMap map;
  map.replacements["telescope"] = "microscope";
  LocalizeResult r = localize_scheme(builtin("argument_from_sign"), map, "s2");
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("telescope") != std::string::npos);
  CHECK(structurally_equal(r.scheme, builtin("argument_from_sign")));
}

TEST_CASE("localization rejects an empty term map") {
  CHECK(kind_of([] {
          localize_scheme(builtin("ethotic"), TermMap{}, "x");
        }) == ErrorKind::BadTermMap);
}

TEST_CASE("replace_whole_words is case-insensitive and case-preserving") {
  bool changed = false;
  CHECK(replace_whole_words("Moral character matters.", "moral",
                            "mathematical",
                            &changed) == "Mathematical character matters.");
  CHECK(changed);
  CHECK(replace_whole_words("Is moral character relevant?", "moral",
                            "mathematical") ==
        "Is mathematical character relevant?");
  // Whole words only: no substring rewrites.
  changed = false;
  CHECK(replace_whole_words("morality is not a whole-word match", "moral",
                            "mathematical",
                            &changed) == "morality is not a whole-word match");
  CHECK(!changed);
  // Punctuation counts as a boundary.
  CHECK(replace_whole_words("good (bad) moral character", "moral", "odd") ==
        "good (bad) odd character");
}

TEST_CASE("localization never rewrites slot names") {
  Scheme s = builtin("defeasible_modus_ponens");
  TermMap map;
  map.replacements["P"] = "Z";
  LocalizeResult r = localize_scheme(s, map, "dmp2");
  CHECK(r.scheme.variables == s.variables);
  // The warrant template still references {P}; only literal words change.
  CHECK(r.scheme.premises[1].text.find("{P}") != std::string::npos);
}

TEST_CASE("registry registers, lists, and looks up schemes") {
  SchemeRegistry reg;
  register_builtins(reg);
  CHECK(reg.ids().size() == 6);
  CHECK(reg.contains("ethotic"));
  CHECK(reg.provenance("ethotic") == Provenance::Builtin);
  CHECK(reg.lookup("argument_from_sign").id == "argument_from_sign");
  CHECK(kind_of([&] { reg.lookup(""); }) == ErrorKind::SchemeNotFound);
  CHECK(kind_of([&] { reg.lookup("no_such_scheme"); }) ==
        ErrorKind::SchemeNotFound);
}

TEST_CASE("registry rejects duplicates and ill-formed schemes") {
  SchemeRegistry reg;
  register_builtins(reg);
  CHECK(kind_of([&] { reg.register_scheme(builtin("ethotic")); }) ==
        ErrorKind::DuplicateScheme);

  Scheme bad = builtin("ethotic");
  bad.id = "broken";
  bad.premises.clear();
  CHECK(kind_of([&] { reg.register_scheme(bad); }) == ErrorKind::InvalidScheme);

  Scheme undeclared = builtin("ethotic");
  undeclared.id = "undeclared_var";
  undeclared.conclusion = parse_form("{Mystery} follows.");
  CHECK(kind_of([&] { reg.register_scheme(undeclared); }) ==
        ErrorKind::InvalidScheme);
}

TEST_CASE("classify reports the class and audits the qualifier") {
  SchemeRegistry reg;
  register_builtins(reg);
  CHECK(reg.classify("practical_inference") == SchemeClass::C);

  // Class/qualifier consistency is not part of conditions i-iv, so an
  // inconsistent scheme registers but classify refuses to bless it.
  Scheme b = builtin("defeasible_modus_ponens");
  b.id = "class_b_presumable";
  b.scheme_class = SchemeClass::B;
  reg.register_scheme(b);
  CHECK(kind_of([&] { reg.classify("class_b_presumable"); }) ==
        ErrorKind::ClassQualifierMismatch);

  Scheme a = builtin("defeasible_modus_ponens");
  a.id = "class_a_certain";
  a.scheme_class = SchemeClass::A;
  a.default_qualifier = Qualifier::Certain;
  reg.register_scheme(a);
  CHECK(reg.classify("class_a_certain") == SchemeClass::A);
}

TEST_CASE("registry localize registers the result under the new id") {
  SchemeRegistry reg;
  register_builtins(reg);
  TermMap map;
  map.replacements["moral"] = "legal";
  LocalizeResult r = reg.localize("ethotic", map, "ethotic_legal");
  CHECK(reg.contains("ethotic_legal"));
  CHECK(reg.provenance("ethotic_legal") == Provenance::User);
  CHECK(r.scheme.premises[1].text.find("legal") != std::string::npos);

  CHECK(kind_of([&] { reg.localize("ethotic", map, "ethotic_legal"); }) ==
        ErrorKind::IdCollision);
  CHECK(kind_of([&] { reg.localize("missing", map, "x"); }) ==
        ErrorKind::SchemeNotFound);
}

TEST_CASE("structural equality ignores id and name") {
  Scheme a = builtin("argument_from_sign");
  Scheme b = a;
  b.id = "renamed";
  b.name = "Renamed";
  CHECK(structurally_equal(a, b));
  b.default_qualifier = Qualifier::Probable;
  CHECK(!structurally_equal(a, b));
}

}  // TEST_SUITE
