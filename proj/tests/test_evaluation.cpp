#include <functional>
#include <random>
#include <string>
#include <vector>

#include "argdial/errors.hpp"
#include "argdial/evaluation.hpp"
#include "argdial/library.hpp"
#include "doctest.h"

using namespace argdial;

namespace {

const Scheme& builtin(const std::string& id) {
  for (const auto& s : builtin_schemes())
    if (s.id == id) return s;
  throw std::runtime_error("missing builtin " + id);
}

ArgumentInstance dmp_instance(const std::string& id, const std::string& p,
                              const std::string& q) {
  return instantiate_scheme(builtin("defeasible_modus_ponens"),
                            Substitution::of({{"P", p}, {"Q", q}}), id);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected an error");
}

// Random argument-only attack graph; structure is what matters here.
ArgumentGraph random_graph(std::mt19937& rng, int max_nodes) {
  std::uniform_int_distribution<int> node_count(1, max_nodes);
  int n = node_count(rng);
  ArgumentGraph g;
  for (int i = 0; i < n; ++i)
    g = add_argument(g, dmp_instance("n" + std::to_string(i),
                                     "p" + std::to_string(i),
                                     "q" + std::to_string(i)));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> kind_pick(0, 2);
  double density = coin(rng) * 0.5;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (coin(rng) < density)
        g = add_attack(g, "n" + std::to_string(a), "n" + std::to_string(b),
                       static_cast<AttackKind>(kind_pick(rng)));
  return g;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("critical question kinds map onto attack kinds") {
  CHECK(attack_kind_for_cq(CqKind::BackingChallenge) == AttackKind::Undermine);
  CHECK(attack_kind_for_cq(CqKind::PremiseChallenge) == AttackKind::Undermine);
  CHECK(attack_kind_for_cq(CqKind::Rebut) == AttackKind::Rebut);
  CHECK(attack_kind_for_cq(CqKind::Undercut) == AttackKind::Undercut);
  CHECK(attack_kind_for_cq(CqKind::QualifierChallenge) == std::nullopt);
}

TEST_CASE("an unattacked argument is IN with its default qualifier") {
  ArgumentGraph g = add_argument(ArgumentGraph{}, dmp_instance("a", "p", "q"));
  ArgumentEvaluation e = evaluate_argument(g, "a");
  CHECK(e.label == Label::In);
  CHECK(e.qualifier == Qualifier::Presumable);
  CHECK(e.open_cqs.empty());
  CHECK(grounded_labelling(g).at("a") == Label::In);
}

TEST_CASE("reinstatement chain: attacker of an attacker restores the target") {
  ArgumentGraph g;
  g = add_argument(g, dmp_instance("a", "pa", "qa"));
  g = add_argument(g, dmp_instance("b", "pb", "qb"));
  g = add_argument(g, dmp_instance("c", "pc", "qc"));
  g = add_attack(g, "b", "a", AttackKind::Rebut);
  g = add_attack(g, "c", "b", AttackKind::Rebut);
  Labelling l = grounded_labelling(g);
  CHECK(l.at("c") == Label::In);
  CHECK(l.at("b") == Label::Out);
  CHECK(l.at("a") == Label::In);
}

TEST_CASE("mutual attack leaves both arguments undecided") {
  ArgumentGraph g;
  g = add_argument(g, dmp_instance("a", "pa", "qa"));
  g = add_argument(g, dmp_instance("b", "pb", "qb"));
  g = add_attack(g, "a", "b", AttackKind::Rebut);
  g = add_attack(g, "b", "a", AttackKind::Rebut);
  Labelling l = grounded_labelling(g);
  CHECK(l.at("a") == Label::Undec);
  CHECK(l.at("b") == Label::Undec);
  CHECK(brute_force_labelling(g) == l);
}

TEST_CASE("self-attack is undecided under grounded semantics") {
  ArgumentGraph g = add_argument(ArgumentGraph{}, dmp_instance("a", "p", "q"));
  g = add_attack(g, "a", "a", AttackKind::Undercut);
  CHECK(grounded_labelling(g).at("a") == Label::Undec);
  CHECK(brute_force_labelling(g).at("a") == Label::Undec);
}

TEST_CASE("posing a critical question defeats until it is answered") {
  ArgumentGraph g = add_argument(ArgumentGraph{}, dmp_instance("a", "p", "q"));
  g = pose_cq(g, "a", 1);

  const std::string cq = cq_node_id("a", 1);
  CHECK(cq == "cq:a:1");
  Labelling posed = grounded_labelling(g);
  CHECK(posed.at(cq) == Label::In);
  CHECK(posed.at("a") == Label::Out);
  CHECK(g.open_cqs("a") == std::vector<int>{1});

  g = answer_cq(g, "a", 1, "The backing is the published base-case table.");
  const std::string ans = answer_node_id("a", 1);
  CHECK(ans == "ans:a:1");
  Labelling answered = grounded_labelling(g);
  CHECK(answered.at(ans) == Label::In);
  CHECK(answered.at(cq) == Label::Out);
  CHECK(answered.at("a") == Label::In);
  CHECK(g.open_cqs("a").empty());

  const CQEvent* event = g.find_event("a", 1);
  REQUIRE(event != nullptr);
  CHECK(event->status == CqStatus::Answered);
  CHECK(event->answer_text ==
        std::optional<std::string>("The backing is the published base-case "
                                   "table."));
}

TEST_CASE("undermine metadata names the challenged premise") {
  // CQ1 of the rule scheme challenges a premise; CQ1 of the sign scheme
  // challenges the backing. Both induce undermines with premise metadata.
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(builtin("argument_from_sign"),
                         Substitution::of({{"A", "the probe lights up"},
                                           {"B", "the reagent is present"}}),
                         "s1"));
  g = pose_cq(g, "s1", 1);
  bool found = false;
  for (const auto& e : g.edges) {
    if (e.attacker != cq_node_id("s1", 1)) continue;
    found = true;
    CHECK(e.kind == AttackKind::Undermine);
    CHECK(e.target == "s1");
    REQUIRE(e.premise.has_value());
    CHECK(e.premise->find("generally indicated") != std::string::npos);
    CHECK(!e.user_edge);
  }
  CHECK(found);
}

TEST_CASE("qualifier challenges weaken instead of attacking") {
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(builtin("ethotic"),
                         Substitution::of({{"x", "one"}, {"a", "the author"}}),
                         "e1"));
  CHECK(effective_qualifier(g, "e1") == Qualifier::Presumable);

  g = pose_cq(g, "e1", 3);  // the qualifier challenge
  CHECK(grounded_labelling(g).at("e1") == Label::In);  // no attack edge
  CHECK(effective_qualifier(g, "e1") == Qualifier::Plausible);
  CHECK(g.open_cqs("e1") == std::vector<int>{3});
  // No derived node appears for a qualifier challenge.
  for (const auto& n : g.derived_nodes) CHECK(n != cq_node_id("e1", 3));

  g = answer_cq(g, "e1", 3, "The presumption is warranted by the record.");
  CHECK(effective_qualifier(g, "e1") == Qualifier::Presumable);
}

TEST_CASE("qualifier weakening saturates at plausible") {
  Scheme s = builtin("ethotic");
  s.id = "cautious";
  s.cqs.push_back({4, CqKind::QualifierChallenge, "Really?"});
  s.cqs.push_back({5, CqKind::QualifierChallenge, "Truly?"});
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(
          s, Substitution::of({{"x", "one"}, {"a", "the author"}}), "e1"));
  g = pose_cq(g, "e1", 3);
  g = pose_cq(g, "e1", 4);
  g = pose_cq(g, "e1", 5);
  CHECK(effective_qualifier(g, "e1") == Qualifier::Plausible);
}

TEST_CASE("class A and B arguments stay certain under qualifier challenges") {
  Scheme s = builtin("ethotic");
  s.id = "axiomatic";
  s.scheme_class = SchemeClass::A;
  s.default_qualifier = Qualifier::Certain;
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(
          s, Substitution::of({{"x", "one"}, {"a", "the author"}}), "e1"));
  CHECK(effective_qualifier(g, "e1") == Qualifier::Certain);
  g = pose_cq(g, "e1", 3);
  CHECK(effective_qualifier(g, "e1") == Qualifier::Certain);
}

TEST_CASE("answering restores one lattice step per challenge") {
  Scheme s = builtin("ethotic");
  s.id = "cautious2";
  s.cqs.push_back({4, CqKind::QualifierChallenge, "Really?"});
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(
          s, Substitution::of({{"x", "one"}, {"a", "the author"}}), "e1"));
  g = pose_cq(g, "e1", 3);
  g = pose_cq(g, "e1", 4);
  CHECK(effective_qualifier(g, "e1") == Qualifier::Plausible);
  g = answer_cq(g, "e1", 4, "Yes, truly.");
  CHECK(effective_qualifier(g, "e1") == Qualifier::Plausible);  // one open
  g = answer_cq(g, "e1", 3, "Warranted.");
  CHECK(effective_qualifier(g, "e1") == Qualifier::Presumable);
}

TEST_CASE("graph operations validate their references") {
  ArgumentGraph g = add_argument(ArgumentGraph{}, dmp_instance("a", "p", "q"));
  CHECK(kind_of([&] { add_argument(g, dmp_instance("a", "x", "y")); }) ==
        ErrorKind::DuplicateArgument);
  CHECK(kind_of([&] { add_attack(g, "a", "ghost", AttackKind::Rebut); }) ==
        ErrorKind::UnknownArgument);
  CHECK(kind_of([&] { pose_cq(g, "ghost", 1); }) == ErrorKind::UnknownArgument);
  CHECK(kind_of([&] { pose_cq(g, "a", 7); }) == ErrorKind::InvalidCqIndex);
  CHECK(kind_of([&] { answer_cq(g, "a", 1, "x"); }) == ErrorKind::CqNotPosed);
  g = pose_cq(g, "a", 1);
  CHECK(kind_of([&] { pose_cq(g, "a", 1); }) == ErrorKind::DuplicateCqEvent);
  g = answer_cq(g, "a", 1, "answered");
  CHECK(kind_of([&] { answer_cq(g, "a", 1, "again"); }) ==
        ErrorKind::CqAlreadyAnswered);
  CHECK(kind_of([&] { evaluate_argument(g, "ghost"); }) ==
        ErrorKind::UnknownArgument);
}

TEST_CASE("graph operations are persistent values") {
  ArgumentGraph g1 = add_argument(ArgumentGraph{}, dmp_instance("a", "p", "q"));
  ArgumentGraph g2 = pose_cq(g1, "a", 1);
  CHECK(g1.cq_events.empty());
  CHECK(g1.derived_nodes.empty());
  CHECK(g2.cq_events.size() == 1);
  CHECK(grounded_labelling(g1).at("a") == Label::In);
  CHECK(grounded_labelling(g2).at("a") == Label::Out);
}

TEST_CASE("node order lists arguments before derived nodes") {
  ArgumentGraph g;
  g = add_argument(g, dmp_instance("b", "p1", "q1"));
  g = add_argument(g, dmp_instance("a", "p2", "q2"));
  g = pose_cq(g, "b", 1);
  g = answer_cq(g, "b", 1, "met");
  g = pose_cq(g, "a", 2);
  CHECK(g.node_ids() == std::vector<std::string>{"a", "b", "cq:b:1",
                                                 "ans:b:1", "cq:a:2"});
}

TEST_CASE("open_cqs lists posed unanswered indices in ascending order") {
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(builtin("practical_inference"),
                         Substitution::of({{"G", "the goal"}, {"A", "acting"}}),
                         "pi"));
  g = pose_cq(g, "pi", 4);
  g = pose_cq(g, "pi", 1);
  g = pose_cq(g, "pi", 3);
  g = answer_cq(g, "pi", 3, "done");
  CHECK(g.open_cqs("pi") == std::vector<int>{1, 4});
}

TEST_CASE("brute force agrees with the fixpoint on random graphs") {
  std::mt19937 rng(20260822);
  for (int trial = 0; trial < 60; ++trial) {
    ArgumentGraph g = random_graph(rng, 8);
    CAPTURE(trial);
    CHECK(brute_force_labelling(g) == grounded_labelling(g));
  }
}

TEST_CASE("brute force refuses oversized graphs") {
  ArgumentGraph g;
  for (int i = 0; i < 21; ++i)
    g = add_argument(g, dmp_instance("n" + std::to_string(i), "p", "q"));
  CHECK(kind_of([&] { brute_force_labelling(g); }) == ErrorKind::GraphTooLarge);
}

TEST_CASE("evaluate_argument folds label, qualifier, and open challenges") {
  ArgumentGraph g = add_argument(
      ArgumentGraph{},
      instantiate_scheme(builtin("ethotic"),
                         Substitution::of({{"x", "one"}, {"a", "the author"}}),
                         "e1"));
  g = pose_cq(g, "e1", 2);
  g = pose_cq(g, "e1", 3);
  ArgumentEvaluation e = evaluate_argument(g, "e1");
  CHECK(e.label == Label::Out);  // the undercut from CQ2 stands
  CHECK(e.qualifier == Qualifier::Plausible);
  CHECK(e.open_cqs == std::vector<int>{2, 3});
}

}  // TEST_SUITE
