#pragma once

#include <map>
#include <string>
#include <variant>

#include "plancheck/model.hpp"

// Instantiating action schemas: map a ground action to the ground
// precondition/effect description its schema prescribes.

namespace plancheck {

// Parameter variable name -> bound object. Total over the schema's params.
using Binding = std::map<std::string, ObjectRef>;

enum class GroundingErrorKind {
  unknown_action,
  arity_mismatch,
  type_mismatch,
  unknown_name,  // an argument whose type the domain never declared
};

struct GroundingError {
  GroundingErrorKind kind = GroundingErrorKind::unknown_action;
  GroundAction action;
  std::string message;

  friend bool operator==(const GroundingError &, const GroundingError &) = default;
};

[[nodiscard]] inline const char *to_string(GroundingErrorKind k) {
  switch (k) {
    case GroundingErrorKind::unknown_action: return "unknown-action";
    case GroundingErrorKind::arity_mismatch: return "arity-mismatch";
    case GroundingErrorKind::type_mismatch: return "type-mismatch";
    case GroundingErrorKind::unknown_name: return "unknown-name";
  }
  return "?";
}

// Builds the positional binding from schema params to a.args and substitutes
// it into every schema literal, preserving literal order and polarity.
// Deterministic and total on well-typed actions; repeated objects are fine
// (the resulting effect state may then be non-normalized — the update
// semantics' ordering rules take over from there).
[[nodiscard]] inline std::variant<GroundActionDescription, GroundingError>
ground_action(const Domain &d, const GroundAction &a) {
  const ActionSchema *schema = detail::find_schema(d, a.name);
  if (!schema)
    return GroundingError{GroundingErrorKind::unknown_action, a,
                          "unknown action " + a.name};
  if (schema->params.size() != a.args.size())
    return GroundingError{
        GroundingErrorKind::arity_mismatch, a,
        "action " + a.name + " expects " +
            std::to_string(schema->params.size()) + " arguments, got " +
            std::to_string(a.args.size())};

  Binding binding;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Parameter &param = schema->params[i];
    const ObjectRef &arg = a.args[i];
    if (!detail::type_declared(d, arg.type))
      return GroundingError{GroundingErrorKind::unknown_name, a,
                            "unknown name " + arg.name};
    if (arg.type != param.type)
      return GroundingError{GroundingErrorKind::type_mismatch, a,
                            "argument " + arg.name + " has type " +
                                arg.type.name + ", parameter ?" + param.name +
                                " wants " + param.type.name};
    binding.emplace(param.name, arg);
  }

  auto substitute = [&](const SchemaLiteral &l) {
    Literal out;
    out.polarity = l.polarity;
    out.atom.predicate = l.predicate;
    for (const SchemaArg &arg : l.args) {
      if (const auto *var = std::get_if<VariableRef>(&arg))
        out.atom.args.push_back(binding.at(var->name));
      else
        out.atom.args.push_back(std::get<ObjectRef>(arg));
    }
    return out;
  };

  GroundActionDescription desc;
  for (const SchemaLiteral &l : schema->preconditions)
    desc.preconditions.literals.push_back(substitute(l));
  for (const SchemaLiteral &l : schema->effects)
    desc.effects.literals.push_back(substitute(l));
  return desc;
}

}  // namespace plancheck
