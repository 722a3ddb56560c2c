#pragma once

#include <any>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plancheck/grounding.hpp"
#include "plancheck/model.hpp"
#include "plancheck/semantics.hpp"

// Plan execution via action handlers, plus enriched handlers ("monitors"):
// per-action checks with their own state that can refuse an action with
// structured evidence. Fuel metering and gender-fairness are the two
// built-in monitors; the Monitor contract is open for others.

namespace plancheck {

// --- handlers ---------------------------------------------------------------

// Thrown when a handler is asked to apply an action its domain cannot
// ground. Validated plans never reach this; it exists for callers that skip
// validation.
struct GroundingFailure : std::runtime_error {
  GroundingError error;

  explicit GroundingFailure(GroundingError e)
      : std::runtime_error(e.message), error(std::move(e)) {}
};

using ActionHandler = std::function<World(const GroundAction &, const World &)>;

// The canonical handler: ground the action and apply its effects. It never
// looks at preconditions — checking them is the validator's job, done before
// execution.
[[nodiscard]] inline ActionHandler canonical_handler(Domain d) {
  return [d = std::move(d)](const GroundAction &a, const World &w) -> World {
    auto desc_or = ground_action(d, a);
    if (auto *err = std::get_if<GroundingError>(&desc_or))
      throw GroundingFailure(*err);
    return update_world(std::get<GroundActionDescription>(desc_or).effects, w);
  };
}

// Left fold of the handler over the plan.
[[nodiscard]] inline World execute(const Plan &pl, const ActionHandler &h,
                                   World w) {
  for (const GroundAction &a : pl.actions) w = h(a, w);
  return w;
}

// --- the monitor contract ----------------------------------------------------

struct FuelState {
  std::uint64_t remaining = 0;

  friend bool operator==(const FuelState &, const FuelState &) = default;
};

struct OutOfFuelError {
  GroundAction action;  // the action that could not be afforded
  World world;          // the world it would have been applied to

  friend bool operator==(const OutOfFuelError &, const OutOfFuelError &) = default;
};

enum class Gender { male, female, other };

inline constexpr std::array<Gender, 3> all_genders{Gender::male, Gender::female,
                                                   Gender::other};

[[nodiscard]] inline const char *to_string(Gender g) {
  switch (g) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::other: return "other";
  }
  return "?";
}

// Revenue trips taken so far, by driver gender.
struct TripCount {
  std::uint64_t male = 0;
  std::uint64_t female = 0;
  std::uint64_t other = 0;

  [[nodiscard]] std::uint64_t operator[](Gender g) const {
    switch (g) {
      case Gender::male: return male;
      case Gender::female: return female;
      case Gender::other: return other;
    }
    return 0;
  }

  [[nodiscard]] std::uint64_t &operator[](Gender g) {
    switch (g) {
      case Gender::male: return male;
      case Gender::female: return female;
      default: return other;
    }
  }

  friend bool operator==(const TripCount &, const TripCount &) = default;
};

struct FairnessRefutation {
  GroundAction action;   // the trip that tipped the balance
  TripCount trip_count;  // counts after that trip
  Gender gender;         // the shortchanged gender
  std::uint64_t assignment_pct = 0;
  std::uint64_t lower_bound_pct = 0;

  friend bool operator==(const FairnessRefutation &,
                         const FairnessRefutation &) = default;
};

// Escape hatch for user-defined monitors.
struct MonitorRefusal {
  std::string monitor;
  std::string message;
  GroundAction action;
  World world;
};

using MonitorError = std::variant<OutOfFuelError, FairnessRefutation, MonitorRefusal>;

struct MonitorState {
  std::any value;
};

// A per-action check with threaded state. The transition sees the world
// *before* the action is applied; it must be deterministic and
// side-effect free.
struct Monitor {
  std::string name;
  MonitorState initial_state;
  std::function<std::variant<MonitorState, MonitorError>(
      const GroundAction &, const World &, const MonitorState &)>
      transition;
};

using ExecutionOutcome = std::variant<World, MonitorError>;

// Monitored left fold: each action first passes the monitor, then the
// handler applies it. On refusal the error is returned as-is and no further
// action (including the refused one) touches the world.
[[nodiscard]] inline ExecutionOutcome execute_monitored(const Plan &pl,
                                                        const ActionHandler &h,
                                                        const Monitor &m,
                                                        World w) {
  MonitorState state = m.initial_state;
  for (const GroundAction &a : pl.actions) {
    auto step = m.transition(a, w, state);
    if (auto *err = std::get_if<MonitorError>(&step)) return *err;
    state = std::move(std::get<MonitorState>(step));
    w = h(a, w);
  }
  return w;
}

// Runs several monitors in the order given; the first refusal wins.
[[nodiscard]] inline Monitor compose_monitors(std::vector<Monitor> monitors) {
  Monitor out;
  for (const Monitor &m : monitors) {
    if (!out.name.empty()) out.name += '+';
    out.name += m.name;
  }
  std::vector<MonitorState> init;
  init.reserve(monitors.size());
  for (const Monitor &m : monitors) init.push_back(m.initial_state);
  out.initial_state.value = std::move(init);
  out.transition = [monitors = std::move(monitors)](
                       const GroundAction &a, const World &w,
                       const MonitorState &s)
      -> std::variant<MonitorState, MonitorError> {
    auto states = std::any_cast<const std::vector<MonitorState> &>(s.value);
    for (std::size_t i = 0; i < monitors.size(); ++i) {
      auto step = monitors[i].transition(a, w, states[i]);
      if (auto *err = std::get_if<MonitorError>(&step)) return *err;
      states[i] = std::move(std::get<MonitorState>(step));
    }
    return MonitorState{std::move(states)};
  };
  return out;
}

// --- fuel ---------------------------------------------------------------------

// Every action costs one unit. With the budget at zero and actions left,
// refuses with the action it could not afford and the pre-action world.
[[nodiscard]] inline Monitor fuel_monitor(std::uint64_t initial) {
  Monitor m;
  m.name = "fuel";
  m.initial_state.value = FuelState{initial};
  m.transition = [](const GroundAction &a, const World &w,
                    const MonitorState &s)
      -> std::variant<MonitorState, MonitorError> {
    const auto &fuel = std::any_cast<const FuelState &>(s.value);
    if (fuel.remaining == 0) return MonitorError{OutOfFuelError{a, w}};
    return MonitorState{FuelState{fuel.remaining - 1}};
  };
  return m;
}

// --- fairness -------------------------------------------------------------------

struct FairnessConfig {
  TypeName driver_type;
  std::uint64_t margin = 10;
  std::uint64_t min_trip_factor = 10;
  // schema name -> position of the driver argument
  std::map<std::string, std::size_t> trip_actions;
  // driver object name -> gender; total over the problem's driver objects
  std::map<std::string, Gender> driver_gender;
};

// Natural-number arithmetic exactly as the fairness rules use it: division
// yields 0 on a zero denominator, subtraction truncates at 0.
[[nodiscard]] constexpr std::uint64_t div0(std::uint64_t n, std::uint64_t m) {
  return m == 0 ? 0 : n / m;
}

[[nodiscard]] constexpr std::uint64_t monus(std::uint64_t a, std::uint64_t b) {
  return a > b ? a - b : 0;
}

[[nodiscard]] inline std::uint64_t total_trips_taken(const TripCount &tc) {
  return tc.male + tc.female + tc.other;
}

// Share of all trips so far assigned to gender g, in integer percent.
[[nodiscard]] inline std::uint64_t gender_assignment_pct(Gender g,
                                                         const TripCount &tc) {
  return div0(tc[g] * 100, total_trips_taken(tc));
}

[[nodiscard]] inline std::uint64_t total_drivers(const FairnessConfig &cfg,
                                                 const Problem &p) {
  std::uint64_t n = 0;
  for (const ObjectRef &o : p.objects)
    if (o.type == cfg.driver_type) ++n;
  return n;
}

[[nodiscard]] inline std::uint64_t gender_driver_count(Gender g,
                                                       const FairnessConfig &cfg,
                                                       const Problem &p) {
  std::uint64_t n = 0;
  for (const ObjectRef &o : p.objects) {
    if (o.type != cfg.driver_type) continue;
    auto it = cfg.driver_gender.find(o.name);
    if (it != cfg.driver_gender.end() && it->second == g) ++n;
  }
  return n;
}

// Share of the driver pool that is gender g, in integer percent.
[[nodiscard]] inline std::uint64_t gender_pct(Gender g,
                                              const FairnessConfig &cfg,
                                              const Problem &p) {
  return div0(gender_driver_count(g, cfg, p) * 100, total_drivers(cfg, p));
}

// The pool share minus a margin-th of itself: the least trip share gender g
// may hold once enough trips have happened.
[[nodiscard]] inline std::uint64_t lower_bound_pct(Gender g,
                                                   const FairnessConfig &cfg,
                                                   const Problem &p) {
  const std::uint64_t pct = gender_pct(g, cfg, p);
  return monus(pct, div0(pct, cfg.margin));
}

struct FairnessCheck {
  bool fair = true;
  std::uint64_t assignment_pct = 0;
  std::uint64_t lower_bound_pct = 0;
};

[[nodiscard]] inline FairnessCheck is_fair(Gender g, const TripCount &tc,
                                           const FairnessConfig &cfg,
                                           const Problem &p) {
  FairnessCheck out;
  out.assignment_pct = gender_assignment_pct(g, tc);
  out.lower_bound_pct = lower_bound_pct(g, cfg, p);
  out.fair = out.assignment_pct >= out.lower_bound_pct;
  return out;
}

// Too few trips for percentages to mean anything yet?
[[nodiscard]] inline bool under_minimum_trip_threshold(const TripCount &tc,
                                                       const FairnessConfig &cfg,
                                                       const Problem &p) {
  return total_trips_taken(tc) < total_drivers(cfg, p) * cfg.min_trip_factor;
}

// Actions that don't count as revenue trips are exempt from the fairness
// rule altogether.
[[nodiscard]] inline bool trip_agnostic(const GroundAction &a,
                                        const FairnessConfig &cfg) {
  return !cfg.trip_actions.contains(a.name);
}

enum class FairnessJustification { agnostic, under_threshold, fair_for_all };

[[nodiscard]] inline const char *to_string(FairnessJustification j) {
  switch (j) {
    case FairnessJustification::agnostic: return "agnostic";
    case FairnessJustification::under_threshold: return "under-threshold";
    case FairnessJustification::fair_for_all: return "fair-for-all";
  }
  return "?";
}

using FairnessDecision = std::variant<FairnessJustification, FairnessRefutation>;

// The fairness rule, decided in this order: trip-agnostic actions pass;
// while under the minimum-trip threshold everything passes; otherwise every
// gender's trip share must reach its lower bound, and the first gender
// falling short (in male/female/other order) becomes the refutation.
[[nodiscard]] inline FairnessDecision action_preserves_fairness(
    const GroundAction &a, const TripCount &tc, const FairnessConfig &cfg,
    const Problem &p) {
  if (trip_agnostic(a, cfg)) return FairnessJustification::agnostic;
  if (under_minimum_trip_threshold(tc, cfg, p))
    return FairnessJustification::under_threshold;
  for (Gender g : all_genders) {
    const FairnessCheck check = is_fair(g, tc, cfg, p);
    if (!check.fair)
      return FairnessRefutation{a, tc, g, check.assignment_pct,
                                check.lower_bound_pct};
  }
  return FairnessJustification::fair_for_all;
}

// Trip bookkeeping: a trip-counting action credits one trip to its driver's
// gender; everything else leaves the counts alone. Misconfigured lookups
// (driver position out of range, wrong type, unmapped driver) throw — the
// config loader rules them out for file-supplied configs.
[[nodiscard]] inline TripCount update_trip_count(const GroundAction &a,
                                                 TripCount tc,
                                                 const FairnessConfig &cfg) {
  auto it = cfg.trip_actions.find(a.name);
  if (it == cfg.trip_actions.end()) return tc;
  if (it->second >= a.args.size())
    throw std::invalid_argument("fairness config: driver position " +
                                std::to_string(it->second) +
                                " out of range for action " + a.name);
  const ObjectRef &driver = a.args[it->second];
  if (driver.type != cfg.driver_type)
    throw std::invalid_argument("fairness config: argument " + driver.name +
                                " of " + a.name + " is not a " +
                                cfg.driver_type.name);
  auto gender = cfg.driver_gender.find(driver.name);
  if (gender == cfg.driver_gender.end())
    throw std::invalid_argument("fairness config: no gender configured for " +
                                driver.name);
  tc[gender->second] += 1;
  return tc;
}

// The fairness monitor: counts the trip first, then decides on the updated
// counts. A refused action is therefore reported with the counts as they
// would have been had it run.
[[nodiscard]] inline Monitor fairness_monitor(FairnessConfig cfg, Problem p) {
  Monitor m;
  m.name = "fairness";
  m.initial_state.value = TripCount{};
  m.transition = [cfg = std::move(cfg), p = std::move(p)](
                     const GroundAction &a, const World &, const MonitorState &s)
      -> std::variant<MonitorState, MonitorError> {
    const auto &tc = std::any_cast<const TripCount &>(s.value);
    TripCount updated = update_trip_count(a, tc, cfg);
    FairnessDecision decision = action_preserves_fairness(a, updated, cfg, p);
    if (auto *refutation = std::get_if<FairnessRefutation>(&decision))
      return MonitorError{*refutation};
    return MonitorState{updated};
  };
  return m;
}

}  // namespace plancheck
