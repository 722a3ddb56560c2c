#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "plancheck/model.hpp"

// Shared test plumbing: fixture access and terse builders for the taxi
// universe used across the suites.

namespace testsupport {

inline std::string fixture_path(const std::string &name) {
  return std::string(PLANCHECK_FIXTURES) + "/" + name;
}

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing test input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture(const std::string &name) {
  return slurp(fixture_path(name));
}

// Objects of the taxi fixture, typed by name prefix.
inline plancheck::ObjectRef taxi_obj(const std::string &name) {
  std::string type;
  if (name.starts_with("taxi")) type = "taxi";
  else if (name.starts_with("person")) type = "person";
  else if (name.starts_with("loc")) type = "location";
  else throw std::runtime_error("not a taxi-universe object: " + name);
  return {name, plancheck::TypeName{type}};
}

inline plancheck::GroundAtom taxi_atom(const std::string &pred,
                                       const std::string &a,
                                       const std::string &b) {
  return {pred, {taxi_obj(a), taxi_obj(b)}};
}

inline plancheck::World taxi_world(
    std::initializer_list<std::pair<const char *, std::pair<const char *, const char *>>>
        atoms) {
  plancheck::World w;
  for (const auto &[pred, args] : atoms)
    w.atoms.push_back(taxi_atom(pred, args.first, args.second));
  return w;
}

inline plancheck::GroundAction taxi_action(
    const std::string &name, std::initializer_list<const char *> args) {
  plancheck::GroundAction a;
  a.name = name;
  for (const char *arg : args) a.args.push_back(taxi_obj(arg));
  return a;
}

// The taxi domain/problem built by hand, so tests of the core calculus do
// not depend on the parser being right.
inline plancheck::Domain taxi_domain() {
  using namespace plancheck;
  const TypeName taxi{"taxi"}, location{"location"}, person{"person"};
  Domain d;
  d.name = "taxi";
  d.types = {taxi, location, person};
  d.predicates = {{"taxiIn", {taxi, location}}, {"personIn", {person, location}}};

  ActionSchema drive_passenger;
  drive_passenger.name = "drive_passenger";
  drive_passenger.params = {{"t1", taxi}, {"p1", person}, {"l1", location}, {"l2", location}};
  drive_passenger.preconditions = {
      {Polarity::positive, "taxiIn", {VariableRef{"t1"}, VariableRef{"l1"}}},
      {Polarity::positive, "personIn", {VariableRef{"p1"}, VariableRef{"l1"}}}};
  drive_passenger.effects = {
      {Polarity::negative, "taxiIn", {VariableRef{"t1"}, VariableRef{"l1"}}},
      {Polarity::negative, "personIn", {VariableRef{"p1"}, VariableRef{"l1"}}},
      {Polarity::positive, "taxiIn", {VariableRef{"t1"}, VariableRef{"l2"}}},
      {Polarity::positive, "personIn", {VariableRef{"p1"}, VariableRef{"l2"}}}};

  ActionSchema drive;
  drive.name = "drive";
  drive.params = {{"t1", taxi}, {"l1", location}, {"l2", location}};
  drive.preconditions = {
      {Polarity::positive, "taxiIn", {VariableRef{"t1"}, VariableRef{"l1"}}}};
  drive.effects = {
      {Polarity::negative, "taxiIn", {VariableRef{"t1"}, VariableRef{"l1"}}},
      {Polarity::positive, "taxiIn", {VariableRef{"t1"}, VariableRef{"l2"}}}};

  d.schemas = {drive_passenger, drive};
  return d;
}

inline plancheck::Problem taxi_problem() {
  using namespace plancheck;
  Problem p;
  p.name = "taxi";
  p.domain_name = "taxi";
  for (const char *o : {"taxi1", "taxi2", "taxi3"}) p.objects.push_back(taxi_obj(o));
  for (const char *o : {"person1", "person2", "person3"}) p.objects.push_back(taxi_obj(o));
  for (const char *o : {"loc1", "loc2", "loc3"}) p.objects.push_back(taxi_obj(o));
  p.initial_world = taxi_world({{"taxiIn", {"taxi1", "loc1"}},
                                {"taxiIn", {"taxi2", "loc2"}},
                                {"taxiIn", {"taxi3", "loc3"}},
                                {"personIn", {"person1", "loc1"}},
                                {"personIn", {"person2", "loc2"}},
                                {"personIn", {"person3", "loc3"}}});
  p.goal.literals = {{Polarity::positive, taxi_atom("taxiIn", "taxi1", "loc2")},
                     {Polarity::positive, taxi_atom("personIn", "person1", "loc3")},
                     {Polarity::positive, taxi_atom("personIn", "person3", "loc1")}};
  return p;
}

// The walkthrough plan: reposition taxi1, then the two passenger trips.
inline plancheck::Plan taxi_plan() {
  plancheck::Plan pl;
  pl.actions = {taxi_action("drive", {"taxi1", "loc1", "loc2"}),
                taxi_action("drive_passenger", {"taxi3", "person3", "loc3", "loc1"}),
                taxi_action("drive_passenger", {"taxi3", "person1", "loc1", "loc3"})};
  return pl;
}

}  // namespace testsupport
