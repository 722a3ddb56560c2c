#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

// Core vocabulary: typed objects, predicates, literals, states, worlds,
// action schemas, ground actions, domains, problems, plans.
//
// All types are immutable value types by convention: build them, then share
// freely. Equality is structural throughout.

namespace plancheck {

struct TypeName {
  std::string name;

  friend auto operator<=>(const TypeName &, const TypeName &) = default;
};

struct ObjectRef {
  std::string name;
  TypeName type;

  friend auto operator<=>(const ObjectRef &, const ObjectRef &) = default;
};

enum class Polarity { positive, negative };

[[nodiscard]] constexpr Polarity negate(Polarity z) {
  return z == Polarity::positive ? Polarity::negative : Polarity::positive;
}

struct PredicateDecl {
  std::string name;
  std::vector<TypeName> param_types;

  friend bool operator==(const PredicateDecl &, const PredicateDecl &) = default;
};

struct GroundAtom {
  std::string predicate;
  std::vector<ObjectRef> args;

  friend auto operator<=>(const GroundAtom &, const GroundAtom &) = default;
};

struct Literal {
  Polarity polarity = Polarity::positive;
  GroundAtom atom;

  friend auto operator<=>(const Literal &, const Literal &) = default;
};

// A polarity-tagged literal sequence: preconditions, effects, goals.
// Order matters (see update_world); a State is "normalized" when no ground
// atom occurs twice.
struct State {
  std::vector<Literal> literals;

  friend bool operator==(const State &, const State &) = default;
};

[[nodiscard]] inline bool normalized(const State &s) {
  std::vector<GroundAtom> seen;
  for (const Literal &l : s.literals) {
    if (std::find(seen.begin(), seen.end(), l.atom) != seen.end())
      return false;
    seen.push_back(l.atom);
  }
  return true;
}

// The atoms currently true, closed-world: anything absent is false.
// Kept as an ordered sequence (duplicates permitted) so update traces are
// reproducible verbatim; all observations are up to set semantics.
struct World {
  std::vector<GroundAtom> atoms;

  friend bool operator==(const World &, const World &) = default;
};

[[nodiscard]] inline bool contains(const World &w, const GroundAtom &p) {
  return std::find(w.atoms.begin(), w.atoms.end(), p) != w.atoms.end();
}

struct Parameter {
  std::string name;  // without the '?' sigil
  TypeName type;

  friend bool operator==(const Parameter &, const Parameter &) = default;
};

// A schema-level argument: either a parameter variable or a constant.
struct VariableRef {
  std::string name;

  friend bool operator==(const VariableRef &, const VariableRef &) = default;
};

using SchemaArg = std::variant<VariableRef, ObjectRef>;

struct SchemaLiteral {
  Polarity polarity = Polarity::positive;
  std::string predicate;
  std::vector<SchemaArg> args;

  friend bool operator==(const SchemaLiteral &, const SchemaLiteral &) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<Parameter> params;
  std::vector<SchemaLiteral> preconditions;
  std::vector<SchemaLiteral> effects;

  friend bool operator==(const ActionSchema &, const ActionSchema &) = default;
};

// A schema instantiated at concrete objects.
struct GroundActionDescription {
  State preconditions;
  State effects;

  friend bool operator==(const GroundActionDescription &,
                         const GroundActionDescription &) = default;
};

struct GroundAction {
  std::string name;
  std::vector<ObjectRef> args;

  friend auto operator<=>(const GroundAction &, const GroundAction &) = default;
};

struct Domain {
  std::string name;
  std::vector<TypeName> types;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> schemas;

  friend bool operator==(const Domain &, const Domain &) = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<ObjectRef> objects;
  World initial_world;
  State goal;

  friend bool operator==(const Problem &, const Problem &) = default;
};

struct Plan {
  std::vector<GroundAction> actions;

  friend bool operator==(const Plan &, const Plan &) = default;
};

// --- rendering ------------------------------------------------------------

inline std::ostream &operator<<(std::ostream &os, const GroundAtom &p) {
  os << p.predicate << '(';
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) os << ',';
    os << p.args[i].name;
  }
  return os << ')';
}

inline std::ostream &operator<<(std::ostream &os, const Literal &l) {
  return os << (l.polarity == Polarity::positive ? '+' : '-') << l.atom;
}

inline std::ostream &operator<<(std::ostream &os, const GroundAction &a) {
  os << a.name << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    os << a.args[i].name;
  }
  return os << ')';
}

namespace detail {
template <class T> std::string stringify(const T &v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace detail

[[nodiscard]] inline std::string to_string(const GroundAtom &p) {
  return detail::stringify(p);
}
[[nodiscard]] inline std::string to_string(const Literal &l) {
  return detail::stringify(l);
}
[[nodiscard]] inline std::string to_string(const GroundAction &a) {
  return detail::stringify(a);
}

// --- well-formedness ------------------------------------------------------

namespace detail {

template <class Seq, class Name>
bool duplicated(const Seq &seq, const Name &name,
                std::string (*key)(const typename Seq::value_type &)) {
  int hits = 0;
  for (const auto &item : seq)
    if (key(item) == name && ++hits > 1) return true;
  return false;
}

inline const PredicateDecl *find_predicate(const Domain &d,
                                           const std::string &name) {
  for (const PredicateDecl &p : d.predicates)
    if (p.name == name) return &p;
  return nullptr;
}

inline const ActionSchema *find_schema(const Domain &d,
                                       const std::string &name) {
  for (const ActionSchema &s : d.schemas)
    if (s.name == name) return &s;
  return nullptr;
}

inline const ObjectRef *find_object(const Problem &p, const std::string &name) {
  for (const ObjectRef &o : p.objects)
    if (o.name == name) return &o;
  return nullptr;
}

inline bool type_declared(const Domain &d, const TypeName &t) {
  return std::find(d.types.begin(), d.types.end(), t) != d.types.end();
}

}  // namespace detail

// Checks every structural invariant of a Domain. Empty result means ok;
// otherwise each entry names the offending declaration.
[[nodiscard]] std::vector<std::string> well_formed_domain(const Domain &d);

// Checks a Problem against its (already well-formed) Domain.
[[nodiscard]] std::vector<std::string> well_formed_problem(const Domain &d,
                                                           const Problem &p);

// --- implementation -------------------------------------------------------

namespace detail {

inline void check_atom(const Domain &d, const GroundAtom &atom,
                       const std::string &where,
                       std::vector<std::string> &out) {
  const PredicateDecl *decl = find_predicate(d, atom.predicate);
  if (!decl) {
    out.push_back(where + ": unknown predicate " + atom.predicate);
    return;
  }
  if (decl->param_types.size() != atom.args.size()) {
    out.push_back(where + ": arity mismatch for " + atom.predicate);
    return;
  }
  for (std::size_t i = 0; i < atom.args.size(); ++i)
    if (atom.args[i].type != decl->param_types[i])
      out.push_back(where + ": argument type mismatch: " +
                    atom.args[i].type.name + " vs " +
                    decl->param_types[i].name);
}

}  // namespace detail

inline std::vector<std::string> well_formed_domain(const Domain &d) {
  std::vector<std::string> out;
  for (const TypeName &t : d.types)
    if (detail::duplicated(d.types, t.name,
                           +[](const TypeName &x) { return x.name; }))
      out.push_back("duplicate type " + t.name);
  for (const PredicateDecl &p : d.predicates) {
    if (detail::duplicated(d.predicates, p.name,
                           +[](const PredicateDecl &x) { return x.name; }))
      out.push_back("duplicate predicate " + p.name);
    for (const TypeName &t : p.param_types)
      if (!detail::type_declared(d, t))
        out.push_back("predicate " + p.name + ": unknown type " + t.name);
  }
  for (const ActionSchema &s : d.schemas) {
    if (detail::duplicated(d.schemas, s.name,
                           +[](const ActionSchema &x) { return x.name; }))
      out.push_back("duplicate action " + s.name);
    for (const Parameter &q : s.params) {
      if (detail::duplicated(s.params, q.name,
                             +[](const Parameter &x) { return x.name; }))
        out.push_back("action " + s.name + ": duplicate parameter ?" + q.name);
      if (!detail::type_declared(d, q.type))
        out.push_back("action " + s.name + ": unknown type " + q.type.name);
    }
    auto check_schema_literal = [&](const SchemaLiteral &l,
                                    const char *section) {
      const std::string where = "action " + s.name + " " + section;
      const PredicateDecl *decl = detail::find_predicate(d, l.predicate);
      if (!decl) {
        out.push_back(where + ": unknown predicate " + l.predicate);
        return;
      }
      if (decl->param_types.size() != l.args.size()) {
        out.push_back(where + ": arity mismatch for " + l.predicate);
        return;
      }
      for (std::size_t i = 0; i < l.args.size(); ++i) {
        const TypeName expected = decl->param_types[i];
        if (const auto *var = std::get_if<VariableRef>(&l.args[i])) {
          auto it = std::find_if(s.params.begin(), s.params.end(),
                                 [&](const Parameter &q) {
                                   return q.name == var->name;
                                 });
          if (it == s.params.end())
            out.push_back(where + ": unbound variable ?" + var->name);
          else if (it->type != expected)
            out.push_back(where + ": argument type mismatch: " +
                          it->type.name + " vs " + expected.name);
        } else {
          const auto &obj = std::get<ObjectRef>(l.args[i]);
          if (obj.type != expected)
            out.push_back(where + ": argument type mismatch: " +
                          obj.type.name + " vs " + expected.name);
        }
      }
    };
    for (const SchemaLiteral &l : s.preconditions)
      check_schema_literal(l, "precondition");
    for (const SchemaLiteral &l : s.effects) check_schema_literal(l, "effect");
  }
  return out;
}

inline std::vector<std::string> well_formed_problem(const Domain &d,
                                                    const Problem &p) {
  std::vector<std::string> out;
  for (const ObjectRef &o : p.objects) {
    if (detail::duplicated(p.objects, o.name,
                           +[](const ObjectRef &x) { return x.name; }))
      out.push_back("duplicate object " + o.name);
    if (!detail::type_declared(d, o.type))
      out.push_back("object " + o.name + ": unknown type " + o.type.name);
  }
  auto check_args_declared = [&](const GroundAtom &atom,
                                 const std::string &where) {
    for (const ObjectRef &a : atom.args) {
      const ObjectRef *o = detail::find_object(p, a.name);
      if (!o)
        out.push_back(where + ": unknown object " + a.name);
      else if (*o != a)
        out.push_back(where + ": object " + a.name + " used at type " +
                      a.type.name + " but declared " + o->type.name);
    }
  };
  for (const GroundAtom &atom : p.initial_world.atoms) {
    detail::check_atom(d, atom, "init", out);
    check_args_declared(atom, "init");
  }
  for (const Literal &l : p.goal.literals) {
    detail::check_atom(d, l.atom, "goal", out);
    check_args_declared(l.atom, "goal");
  }
  return out;
}

}  // namespace plancheck
