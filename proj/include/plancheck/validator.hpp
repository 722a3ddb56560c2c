#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "plancheck/grounding.hpp"
#include "plancheck/model.hpp"
#include "plancheck/semantics.hpp"

// The two-rule calculus as an algorithm: a plan is valid when every action's
// preconditions hold in the world it is applied to and the final world
// satisfies the goal. The check is a deterministic simulation — exactly one
// rule applies to any plan shape, so there is nothing to search.

namespace plancheck {

struct DerivationStep {
  std::size_t index = 0;  // position in the plan
  GroundAction action;
  World world_before;
  GroundActionDescription description;

  friend bool operator==(const DerivationStep &, const DerivationStep &) = default;
};

// The auditable certificate check_plan builds: per-step worlds plus the
// world the goal was checked against.
struct Derivation {
  std::vector<DerivationStep> steps;
  World final_world;

  friend bool operator==(const Derivation &, const Derivation &) = default;
};

enum class ValidationErrorKind {
  precondition_unsatisfied,
  goal_unsatisfied,
  grounding_failed,
};

[[nodiscard]] inline const char *to_string(ValidationErrorKind k) {
  switch (k) {
    case ValidationErrorKind::precondition_unsatisfied:
      return "precondition-unsatisfied";
    case ValidationErrorKind::goal_unsatisfied: return "goal-unsatisfied";
    case ValidationErrorKind::grounding_failed: return "grounding-failed";
  }
  return "?";
}

struct ValidationError {
  ValidationErrorKind kind = ValidationErrorKind::goal_unsatisfied;
  std::optional<std::size_t> step;       // absent for goal failures
  std::optional<GroundAction> action;    // ditto
  std::optional<Literal> literal;        // the unsatisfied literal
  World world;                           // where the failure occurred
  std::optional<GroundingError> grounding;  // when kind == grounding_failed
};

// Walks the plan left to right, grounding and precondition-checking each
// action, then checks the goal against the final world. First failure wins.
[[nodiscard]] inline std::variant<Derivation, ValidationError> check_plan(
    const Domain &d, const Problem &p, const Plan &pl) {
  Derivation deriv;
  World world = p.initial_world;
  for (std::size_t i = 0; i < pl.actions.size(); ++i) {
    const GroundAction &action = pl.actions[i];
    auto desc_or = ground_action(d, action);
    if (auto *err = std::get_if<GroundingError>(&desc_or)) {
      ValidationError out;
      out.kind = ValidationErrorKind::grounding_failed;
      out.step = i;
      out.action = action;
      out.world = world;
      out.grounding = *err;
      return out;
    }
    const auto &desc = std::get<GroundActionDescription>(desc_or);
    if (auto unsatisfied = satisfies(world, desc.preconditions)) {
      ValidationError out;
      out.kind = ValidationErrorKind::precondition_unsatisfied;
      out.step = i;
      out.action = action;
      out.literal = *unsatisfied;
      out.world = world;
      return out;
    }
    deriv.steps.push_back({i, action, world, desc});
    world = update_world(desc.effects, std::move(world));
  }
  if (auto unsatisfied = satisfies(world, p.goal)) {
    ValidationError out;
    out.kind = ValidationErrorKind::goal_unsatisfied;
    out.literal = *unsatisfied;
    out.world = world;
    return out;
  }
  deriv.final_world = std::move(world);
  return deriv;
}

// Audit trail check: recomputes the world sequence from step 0's stored
// world and flags any step whose stored world disagrees (set-wise) with the
// recomputation — a tampered or hand-built certificate.
struct TamperDetected {
  std::size_t step = 0;  // steps.size() means the final world disagreed
  World recomputed;
  World stored;
};

[[nodiscard]] inline std::variant<World, TamperDetected> replay(
    const Derivation &deriv) {
  if (deriv.steps.empty()) return deriv.final_world;
  World world = deriv.steps.front().world_before;
  for (std::size_t i = 0; i < deriv.steps.size(); ++i) {
    const DerivationStep &step = deriv.steps[i];
    if (!world_set_eq(world, step.world_before))
      return TamperDetected{i, world, step.world_before};
    world = update_world(step.description.effects, std::move(world));
  }
  if (!world_set_eq(world, deriv.final_world))
    return TamperDetected{deriv.steps.size(), world, deriv.final_world};
  return world;
}

}  // namespace plancheck
