#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "plancheck/parser.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace plancheck;
using testsupport::fixture;
using testsupport::taxi_domain;
using testsupport::taxi_plan;
using testsupport::taxi_problem;

namespace {

template <class T>
T ok(Parsed<T> r) {
  if (const auto *err = std::get_if<ParseError>(&r))
    FAIL("unexpected parse error at " << err->pos.line << ':'
                                      << err->pos.column << ": "
                                      << err->message);
  return std::get<T>(std::move(r));
}

template <class T>
ParseError err(Parsed<T> r) {
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(std::move(r));
}

const char *kMiniDomain =
    "(define (domain mini)"
    " (:types taxi location person)"
    " (:predicates (taxiIn ?t - taxi ?l - location)"
    "              (personIn ?p - person ?l - location))"
    " (:action drive"
    "   :parameters (?t1 - taxi ?l1 - location ?l2 - location)"
    "   :precondition (taxiIn ?t1 ?l1)"
    "   :effect (and (not (taxiIn ?t1 ?l1)) (taxiIn ?t1 ?l2))))";

Domain mini_domain() { return ok(parse_domain(kMiniDomain)); }

Problem mini_problem(const Domain &d, const std::string &body) {
  return ok(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi person1 - person loc1 loc2 - location)" +
          body + ")",
      d));
}

}  // namespace

TEST_CASE("the taxi domain file parses to the hand-built structure") {
  const Domain d = ok(parse_domain(fixture("taxi-domain.pddl")));
  CHECK(d == taxi_domain());
  REQUIRE(d.schemas.size() == 2);
  CHECK(d.schemas[0].params.size() == 4);
  CHECK(d.schemas[1].params.size() == 3);
  // the bare-atom precondition reads the same as a one-literal (and ...)
  CHECK(d.schemas[1].preconditions.size() == 1);
}

TEST_CASE("the taxi problem file parses to the hand-built structure") {
  const Domain d = taxi_domain();
  const Problem p = ok(parse_problem(fixture("taxi-problem.pddl"), d));
  CHECK(p == taxi_problem());
  CHECK(p.objects.size() == 9);
  CHECK(p.initial_world.atoms.size() == 6);
  CHECK(p.goal.literals.size() == 3);
}

TEST_CASE("plan files parse line by line, comments and all") {
  const Domain d = taxi_domain();
  const Problem p = taxi_problem();
  CHECK(ok(parse_plan(fixture("taxi-plan.txt"), d, p)) == taxi_plan());

  // trailing same-line comments right after ')'
  const Plan alt = ok(parse_plan(fixture("taxi-plan-alt.txt"), d, p));
  REQUIRE(alt.actions.size() == 3);
  CHECK(alt.actions[0].name == "drive_passenger");

  CHECK(ok(parse_plan("", d, p)).actions.empty());
  CHECK(ok(parse_plan("; nothing here\n\n  \n", d, p)).actions.empty());
}

TEST_CASE("goals may negate atoms") {
  const Domain d = mini_domain();
  const Problem p = mini_problem(
      d, "(:goal (and (taxiIn taxi1 loc1) (not (taxiIn taxi1 loc2))))");
  REQUIRE(p.goal.literals.size() == 2);
  CHECK(p.goal.literals[0].polarity == Polarity::positive);
  CHECK(p.goal.literals[1].polarity == Polarity::negative);
  CHECK(p.goal.literals[1].atom.predicate == "taxiIn");
}

TEST_CASE("init atoms are type-checked against the predicate declaration") {
  const Domain d = mini_domain();
  const auto e = err(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi person1 - person loc1 - location)"
      " (:init (taxiIn person1 loc1)))",
      d));
  CHECK(e.kind == ParseErrorKind::type_mismatch);
  CHECK(e.message == "argument type mismatch: person vs taxi");
}

TEST_CASE("negated init atoms are refused: worlds are closed") {
  const Domain d = mini_domain();
  const auto e = err(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi loc1 - location)"
      " (:init (not (taxiIn taxi1 loc1))))",
      d));
  CHECK(e.kind == ParseErrorKind::unsupported_feature);
}

TEST_CASE("disjunction and friends are named as unsupported, not mangled") {
  const Domain d = mini_domain();
  const auto e = err(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi loc1 loc2 - location)"
      " (:goal (or (taxiIn taxi1 loc1) (taxiIn taxi1 loc2))))",
      d));
  CHECK(e.kind == ParseErrorKind::unsupported_feature);
  CHECK(e.message == "'or' is outside the supported subset");

  const auto e2 = err(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi loc1 - location)"
      " (:goal (not (and (taxiIn taxi1 loc1)))))",
      d));
  CHECK(e2.kind == ParseErrorKind::unsupported_feature);
}

TEST_CASE("unsupported requirements and type hierarchies are refused") {
  const auto e = err(parse_domain(
      "(define (domain d) (:requirements :strips :functions))"));
  CHECK(e.kind == ParseErrorKind::unsupported_feature);
  CHECK(e.message == "requirement :functions is outside the supported subset");

  const auto e2 =
      err(parse_domain("(define (domain d) (:types truck - vehicle))"));
  CHECK(e2.kind == ParseErrorKind::unsupported_feature);
  CHECK(e2.message == "type hierarchies are outside the supported subset");
}

TEST_CASE("reserved words cannot name things") {
  const auto e = err(parse_domain("(define (domain and))"));
  CHECK(e.kind == ParseErrorKind::syntax);
  CHECK(e.message == "domain name 'and' is reserved");
  CHECK(e.pos == SourcePos{1, 17});
}

TEST_CASE("duplicate declarations are refused") {
  CHECK(err(parse_domain("(define (domain d) (:types a a))")).message ==
        "duplicate type a");
  CHECK(err(parse_domain("(define (domain d) (:types a)"
                         " (:predicates (p ?x - a) (p ?x - a)))"))
            .message == "duplicate predicate p");
}

TEST_CASE("action bodies only see the schema's own parameters") {
  const auto e = err(parse_domain(
      "(define (domain d) (:types a) (:predicates (p ?x - a))"
      " (:action act :parameters (?x - a) :precondition (p ?y)))"));
  CHECK(e.kind == ParseErrorKind::unknown_name);
  CHECK(e.message == "unknown parameter ?y");

  const auto e2 = err(parse_domain(
      "(define (domain d) (:types a) (:predicates (p ?x - a))"
      " (:action act :parameters (?x - a) :precondition (p box)))"));
  CHECK(e2.kind == ParseErrorKind::unsupported_feature);
}

TEST_CASE("atom arities are checked at parse time") {
  const Domain d = mini_domain();
  const auto e = err(parse_problem(
      "(define (problem mini) (:domain mini)"
      " (:objects taxi1 - taxi)"
      " (:init (taxiIn taxi1)))",
      d));
  CHECK(e.kind == ParseErrorKind::arity_mismatch);
  CHECK(e.message == "predicate taxiIn expects 2 arguments, got 1");
}

TEST_CASE("a problem must name the domain it belongs to") {
  const Domain d = mini_domain();
  const auto e =
      err(parse_problem("(define (problem q) (:domain other))", d));
  CHECK(e.kind == ParseErrorKind::unknown_name);
  CHECK(e.message == "problem is for domain other, not mini");

  const auto e2 = err(parse_problem("(define (problem q))", d));
  CHECK(e2.kind == ParseErrorKind::syntax);
  CHECK(e2.message == "problem is missing its (:domain ...) section");
}

TEST_CASE("plan lines are checked like ground actions") {
  const Domain d = taxi_domain();
  const Problem p = taxi_problem();

  auto check_line = [&](const char *line, ParseErrorKind kind,
                        const char *message) {
    const auto e = err(parse_plan(line, d, p));
    CHECK(e.kind == kind);
    CHECK(e.message == message);
  };
  check_line("(drive taxi1 loc1)", ParseErrorKind::arity_mismatch,
             "action drive expects 3 arguments, got 2");
  check_line("(fly taxi1)", ParseErrorKind::unknown_name,
             "unknown action fly");
  check_line("(drive taxi1 loc1 loc9)", ParseErrorKind::unknown_name,
             "unknown object loc9");
  check_line("(drive person1 loc1 loc2)", ParseErrorKind::type_mismatch,
             "argument type mismatch: person vs taxi");
  check_line("(drive taxi1 loc1 loc2) (drive taxi1 loc2 loc1)",
             ParseErrorKind::syntax, "one action per line");
}

TEST_CASE("errors carry accurate 1-based positions") {
  // (define (domain d)
  //   (:types a)
  //   (:predicates (p ?x - b)))   <- unknown type b, line 3 column 24
  const auto e = err(parse_domain(
      "(define (domain d)\n  (:types a)\n  (:predicates (p ?x - b)))"));
  CHECK(e.kind == ParseErrorKind::unknown_name);
  CHECK(e.message == "unknown type b");
  CHECK(e.pos == SourcePos{3, 24});

  const auto e2 = err(parse_plan("(drive taxi1 loc1 loc2)\n(oops)",
                                 taxi_domain(), taxi_problem()));
  CHECK(e2.pos == SourcePos{2, 2});
}

TEST_CASE("malformed text fails cleanly, never crashes") {
  CHECK(err(parse_domain("")).message == "unexpected end of input");
  CHECK(err(parse_domain("(define (domain d)")).message ==
        "unterminated '(' here");
  CHECK(err(parse_domain("(define (domain d)) junk")).message ==
        "trailing input after expression");
  CHECK(err(parse_domain("(define (domain d@))")).kind ==
        ParseErrorKind::lex);

  // nesting guard
  std::string deep(250, '(');
  deep += "a";
  deep.append(250, ')');
  CHECK(err(parse_domain(deep)).message == "expression nested too deeply");
}

TEST_CASE("arbitrary bytes produce a value or an error, nothing else") {
  std::mt19937 rng(20260814);
  const Domain d = taxi_domain();
  const Problem p = taxi_problem();
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string charset = "()?:-; \n\tabAB09_";
  for (int round = 0; round < 400; ++round) {
    std::string text;
    const std::size_t len = testgen::pick(rng, 0, 120);
    const bool parens_heavy = testgen::chance(rng, 0.5);
    for (std::size_t i = 0; i < len; ++i)
      text.push_back(parens_heavy
                         ? charset[testgen::pick(rng, 0, charset.size() - 1)]
                         : static_cast<char>(byte(rng)));
    // must terminate and return through the variant; value or error alike
    (void)parse_domain(text);
    (void)parse_problem(text, d);
    (void)parse_plan(text, d, p);
  }
  SUCCEED("no crashes on 400 random inputs");
}

TEST_CASE("printing then parsing is the identity on the taxi fixture") {
  const Domain d = taxi_domain();
  const Problem p = taxi_problem();
  const Plan pl = taxi_plan();
  CHECK(ok(parse_domain(print_domain(d))) == d);
  CHECK(ok(parse_problem(print_problem(p), d)) == p);
  CHECK(ok(parse_plan(print_plan(pl), d, p)) == pl);
}

TEST_CASE("printing then parsing is the identity on random instances") {
  std::mt19937 rng(6061);
  for (int round = 0; round < 200; ++round) {
    const Domain d = testgen::random_domain(rng);
    const Problem p = testgen::random_problem(rng, d);
    const auto pool = testgen::all_ground_actions(d, p);
    const Plan pl = testgen::random_plan(rng, pool, 4);

    const Domain d2 = ok(parse_domain(print_domain(d)));
    CAPTURE(print_domain(d));
    CHECK(d2 == d);
    const Problem p2 = ok(parse_problem(print_problem(p), d));
    CAPTURE(print_problem(p));
    CHECK(p2 == p);
    const Plan pl2 = ok(parse_plan(print_plan(pl), d, p));
    CHECK(pl2 == pl);
  }
}

TEST_CASE("error kinds render as stable tags") {
  CHECK(std::string(to_string(ParseErrorKind::lex)) == "lex");
  CHECK(std::string(to_string(ParseErrorKind::syntax)) == "syntax");
  CHECK(std::string(to_string(ParseErrorKind::unknown_name)) == "unknown-name");
  CHECK(std::string(to_string(ParseErrorKind::arity_mismatch)) ==
        "arity-mismatch");
  CHECK(std::string(to_string(ParseErrorKind::type_mismatch)) ==
        "type-mismatch");
  CHECK(std::string(to_string(ParseErrorKind::unsupported_feature)) ==
        "unsupported-feature");
}
