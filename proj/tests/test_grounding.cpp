#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plancheck/grounding.hpp"
#include "plancheck/semantics.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace plancheck;
using testsupport::taxi_action;
using testsupport::taxi_atom;
using testsupport::taxi_domain;

namespace {

Literal pos(const GroundAtom &a) { return {Polarity::positive, a}; }
Literal neg(const GroundAtom &a) { return {Polarity::negative, a}; }

GroundActionDescription ground_ok(const Domain &d, const GroundAction &a) {
  auto r = ground_action(d, a);
  REQUIRE(std::holds_alternative<GroundActionDescription>(r));
  return std::get<GroundActionDescription>(r);
}

GroundingError ground_err(const Domain &d, const GroundAction &a) {
  auto r = ground_action(d, a);
  REQUIRE(std::holds_alternative<GroundingError>(r));
  return std::get<GroundingError>(r);
}

}  // namespace

TEST_CASE("grounding drive substitutes positionally") {
  const auto desc =
      ground_ok(taxi_domain(), taxi_action("drive", {"taxi1", "loc1", "loc2"}));
  CHECK(desc.preconditions.literals ==
        std::vector<Literal>{pos(taxi_atom("taxiIn", "taxi1", "loc1"))});
  CHECK(desc.effects.literals ==
        std::vector<Literal>{neg(taxi_atom("taxiIn", "taxi1", "loc1")),
                             pos(taxi_atom("taxiIn", "taxi1", "loc2"))});
}

TEST_CASE("grounding drive_passenger keeps the schema's literal order") {
  const auto desc = ground_ok(
      taxi_domain(),
      taxi_action("drive_passenger", {"taxi3", "person3", "loc3", "loc1"}));
  CHECK(desc.preconditions.literals ==
        std::vector<Literal>{pos(taxi_atom("taxiIn", "taxi3", "loc3")),
                             pos(taxi_atom("personIn", "person3", "loc3"))});
  CHECK(desc.effects.literals ==
        std::vector<Literal>{neg(taxi_atom("taxiIn", "taxi3", "loc3")),
                             neg(taxi_atom("personIn", "person3", "loc3")),
                             pos(taxi_atom("taxiIn", "taxi3", "loc1")),
                             pos(taxi_atom("personIn", "person3", "loc1"))});
}

TEST_CASE("unknown action names are rejected") {
  const auto err = ground_err(taxi_domain(), taxi_action("fly", {"taxi1"}));
  CHECK(err.kind == GroundingErrorKind::unknown_action);
  CHECK(err.message == "unknown action fly");
  CHECK(err.action.name == "fly");
}

TEST_CASE("wrong argument counts are rejected with both arities") {
  const auto err =
      ground_err(taxi_domain(), taxi_action("drive", {"taxi1", "loc1"}));
  CHECK(err.kind == GroundingErrorKind::arity_mismatch);
  CHECK(err.message == "action drive expects 3 arguments, got 2");
}

TEST_CASE("arguments of the wrong declared type are rejected") {
  const auto err = ground_err(
      taxi_domain(), taxi_action("drive", {"person1", "loc1", "loc2"}));
  CHECK(err.kind == GroundingErrorKind::type_mismatch);
  CHECK(err.message ==
        "argument person1 has type person, parameter ?t1 wants taxi");
}

TEST_CASE("arguments whose type the domain never declared are unknown names") {
  Domain d = taxi_domain();
  GroundAction a{"drive",
                 {testsupport::taxi_obj("taxi1"),
                  ObjectRef{"loc9", TypeName{"place"}},  // no such type
                  testsupport::taxi_obj("loc2")}};
  const auto err = ground_err(d, a);
  CHECK(err.kind == GroundingErrorKind::unknown_name);
  CHECK(err.message == "unknown name loc9");
}

TEST_CASE("error kinds render as kebab-case tags") {
  CHECK(std::string(to_string(GroundingErrorKind::unknown_action)) ==
        "unknown-action");
  CHECK(std::string(to_string(GroundingErrorKind::arity_mismatch)) ==
        "arity-mismatch");
  CHECK(std::string(to_string(GroundingErrorKind::type_mismatch)) ==
        "type-mismatch");
  CHECK(std::string(to_string(GroundingErrorKind::unknown_name)) ==
        "unknown-name");
}

TEST_CASE("repeating an object across parameters grounds fine") {
  // drive(taxi1, loc1, loc1): a legal if pointless action whose effects
  // mention the same atom twice with opposite polarities
  const auto desc =
      ground_ok(taxi_domain(), taxi_action("drive", {"taxi1", "loc1", "loc1"}));
  CHECK(desc.effects.literals ==
        std::vector<Literal>{neg(taxi_atom("taxiIn", "taxi1", "loc1")),
                             pos(taxi_atom("taxiIn", "taxi1", "loc1"))});
  CHECK_FALSE(normalized(desc.effects));

  // the earlier (negative) literal wins: the taxi ends up nowhere
  const World out = update_world(
      desc.effects, World{{taxi_atom("taxiIn", "taxi1", "loc1")}});
  CHECK_FALSE(contains(out, taxi_atom("taxiIn", "taxi1", "loc1")));
}

TEST_CASE("grounding succeeds on every well-typed generated action") {
  std::mt19937 rng(4242);
  for (int round = 0; round < 300; ++round) {
    const Domain d = testgen::random_domain(rng);
    const Problem p = testgen::random_problem(rng, d);
    for (const GroundAction &a : testgen::all_ground_actions(d, p)) {
      auto r = ground_action(d, a);
      REQUIRE(std::holds_alternative<GroundActionDescription>(r));
      const auto &desc = std::get<GroundActionDescription>(r);
      const ActionSchema *schema = nullptr;
      for (const ActionSchema &s : d.schemas)
        if (s.name == a.name) schema = &s;
      REQUIRE(schema != nullptr);
      CHECK(desc.preconditions.literals.size() == schema->preconditions.size());
      CHECK(desc.effects.literals.size() == schema->effects.size());
    }
  }
}
