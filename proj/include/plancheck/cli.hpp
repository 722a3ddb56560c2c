#pragma once

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plancheck/fairness_config.hpp"
#include "plancheck/model.hpp"
#include "plancheck/monitors.hpp"
#include "plancheck/parser.hpp"
#include "plancheck/validator.hpp"

// The command workflows behind the plancheck binary: validate a plan, or
// execute it under monitors. Kept out of main() so the exact stream output
// and exit codes are testable in-process.
//
// Exit codes: 0 success, 1 plan invalid, 2 monitor refusal, 3 parse or
// usage trouble. Results go to `out`, diagnostics to `err`.

namespace plancheck {

enum class OutputFormat { text, json };

[[nodiscard]] inline std::optional<OutputFormat> parse_output_format(
    std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  return std::nullopt;
}

struct RunConfig {
  std::string domain_path;
  std::string problem_path;
  std::string plan_path;
  std::vector<std::string> monitors;  // "fuel=<n>" / "fairness=<path>", in order
  OutputFormat format = OutputFormat::text;
  bool trace = false;
  bool skip_validation = false;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_monitor = 2;
inline constexpr int exit_usage = 3;

// --- serialization helpers ---------------------------------------------------

namespace detail {

using ordered_json = nlohmann::ordered_json;

[[nodiscard]] inline ordered_json to_json(const GroundAtom &atom) {
  ordered_json j;
  j["pred"] = atom.predicate;
  auto &args = j["args"] = ordered_json::array();
  for (const ObjectRef &a : atom.args) args.push_back(a.name);
  return j;
}

[[nodiscard]] inline ordered_json to_json(const World &w) {
  ordered_json j = ordered_json::array();
  for (const GroundAtom &atom : w.atoms) j.push_back(to_json(atom));
  return j;
}

[[nodiscard]] inline ordered_json to_json(const GroundAction &a) {
  ordered_json j;
  j["name"] = a.name;
  auto &args = j["args"] = ordered_json::array();
  for (const ObjectRef &arg : a.args) args.push_back(arg.name);
  return j;
}

[[nodiscard]] inline ordered_json to_json(const Literal &l) {
  ordered_json j;
  j["polarity"] = l.polarity == Polarity::positive ? "positive" : "negative";
  j["atom"] = to_json(l.atom);
  return j;
}

[[nodiscard]] inline ordered_json to_json(const TripCount &tc) {
  ordered_json j;
  j["male"] = tc.male;
  j["female"] = tc.female;
  j["other"] = tc.other;
  return j;
}

inline void emit(std::ostream &out, const ordered_json &doc) {
  out << doc.dump(2) << '\n';
}

[[nodiscard]] inline std::string comma_join(const World &w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.atoms.size(); ++i) {
    if (i) os << ", ";
    os << w.atoms[i];
  }
  return os.str();
}

[[nodiscard]] inline std::optional<std::string> read_file(
    const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

// --- error rendering -----------------------------------------------------------

namespace detail {

inline int report_parse_error(const RunConfig &cfg, const std::string &path,
                              const ParseError &e, std::ostream &out,
                              std::ostream &err) {
  err << path << ':' << e.pos.line << ':' << e.pos.column << ": "
      << to_string(e.kind) << ": " << e.message << '\n';
  if (cfg.format == OutputFormat::json) {
    ordered_json doc;
    doc["status"] = "invalid";
    auto &error = doc["error"];
    error["kind"] = to_string(e.kind);
    error["file"] = path;
    error["line"] = e.pos.line;
    error["column"] = e.pos.column;
    error["message"] = e.message;
    emit(out, doc);
  }
  return exit_usage;
}

inline int report_usage_error(const RunConfig &cfg, const std::string &message,
                              std::ostream &out, std::ostream &err) {
  err << "plancheck: " << message << '\n';
  if (cfg.format == OutputFormat::json) {
    ordered_json doc;
    doc["status"] = "invalid";
    doc["error"]["kind"] = "usage";
    doc["error"]["message"] = message;
    emit(out, doc);
  }
  return exit_usage;
}

inline int report_validation_error(const RunConfig &cfg,
                                   const ValidationError &e, std::ostream &out,
                                   std::ostream &err) {
  switch (e.kind) {
    case ValidationErrorKind::precondition_unsatisfied:
      err << "plan invalid: precondition unsatisfied at step " << *e.step
          << ": " << *e.action << '\n'
          << "  requires: " << *e.literal << '\n';
      break;
    case ValidationErrorKind::goal_unsatisfied:
      err << "plan invalid: goal unsatisfied\n"
          << "  requires: " << *e.literal << '\n';
      break;
    case ValidationErrorKind::grounding_failed:
      err << "plan invalid: grounding failed at step " << *e.step << ": "
          << *e.action << '\n'
          << "  " << to_string(e.grounding->kind) << ": "
          << e.grounding->message << '\n';
      break;
  }
  err << "  world: " << comma_join(e.world) << '\n';

  if (cfg.format == OutputFormat::json) {
    ordered_json doc;
    doc["status"] = "invalid";
    auto &error = doc["error"];
    error["kind"] = to_string(e.kind);
    if (e.step) error["step"] = *e.step;
    if (e.action) error["action"] = to_json(*e.action);
    if (e.literal) error["literal"] = to_json(*e.literal);
    if (e.grounding) {
      error["grounding"]["kind"] = to_string(e.grounding->kind);
      error["grounding"]["message"] = e.grounding->message;
    }
    error["world"] = to_json(e.world);
    emit(out, doc);
  }
  return exit_invalid;
}

inline int report_monitor_error(const RunConfig &cfg, const MonitorError &e,
                                std::ostream &out, std::ostream &err) {
  ordered_json error;
  if (const auto *fuel = std::get_if<OutOfFuelError>(&e)) {
    err << "monitor 'fuel' refused action " << fuel->action
        << ": out of fuel\n"
        << "  world: " << comma_join(fuel->world) << '\n';
    error["kind"] = "out-of-fuel";
    error["action"] = to_json(fuel->action);
    error["world"] = to_json(fuel->world);
  } else if (const auto *fair = std::get_if<FairnessRefutation>(&e)) {
    err << "monitor 'fairness' refused action " << fair->action << ": gender "
        << to_string(fair->gender) << " holds " << fair->assignment_pct
        << "% of trips, lower bound is " << fair->lower_bound_pct << "%\n"
        << "  trips: male=" << fair->trip_count.male
        << " female=" << fair->trip_count.female
        << " other=" << fair->trip_count.other << '\n';
    error["kind"] = "fairness-refutation";
    error["action"] = to_json(fair->action);
    error["gender"] = to_string(fair->gender);
    error["assignment_pct"] = fair->assignment_pct;
    error["lower_bound_pct"] = fair->lower_bound_pct;
    error["trip_count"] = to_json(fair->trip_count);
  } else {
    const auto &refusal = std::get<MonitorRefusal>(e);
    err << "monitor '" << refusal.monitor << "' refused action "
        << refusal.action << ": " << refusal.message << '\n'
        << "  world: " << comma_join(refusal.world) << '\n';
    error["kind"] = "monitor-refusal";
    error["monitor"] = refusal.monitor;
    error["message"] = refusal.message;
    error["action"] = to_json(refusal.action);
    error["world"] = to_json(refusal.world);
  }
  if (cfg.format == OutputFormat::json) {
    ordered_json doc;
    doc["status"] = "monitor-error";
    doc["error"] = std::move(error);
    emit(out, doc);
  }
  return exit_monitor;
}

}  // namespace detail

// --- loading ---------------------------------------------------------------------

namespace detail {

struct LoadedInputs {
  Domain domain;
  Problem problem;
  Plan plan;
};

// Reads and parses the three input files; on failure reports and yields the
// exit code instead.
[[nodiscard]] inline std::variant<LoadedInputs, int> load_inputs(
    const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  auto domain_text = read_file(cfg.domain_path);
  if (!domain_text)
    return report_usage_error(cfg, "cannot read " + cfg.domain_path, out, err);
  auto problem_text = read_file(cfg.problem_path);
  if (!problem_text)
    return report_usage_error(cfg, "cannot read " + cfg.problem_path, out, err);
  auto plan_text = read_file(cfg.plan_path);
  if (!plan_text)
    return report_usage_error(cfg, "cannot read " + cfg.plan_path, out, err);

  auto domain_or = parse_domain(*domain_text);
  if (auto *e = std::get_if<ParseError>(&domain_or))
    return report_parse_error(cfg, cfg.domain_path, *e, out, err);
  LoadedInputs inputs;
  inputs.domain = std::move(std::get<Domain>(domain_or));

  auto problem_or = parse_problem(*problem_text, inputs.domain);
  if (auto *e = std::get_if<ParseError>(&problem_or))
    return report_parse_error(cfg, cfg.problem_path, *e, out, err);
  inputs.problem = std::move(std::get<Problem>(problem_or));

  auto plan_or = parse_plan(*plan_text, inputs.domain, inputs.problem);
  if (auto *e = std::get_if<ParseError>(&plan_or))
    return report_parse_error(cfg, cfg.plan_path, *e, out, err);
  inputs.plan = std::move(std::get<Plan>(plan_or));
  return inputs;
}

// "fuel=<n>" / "fairness=<path>" specs, in the order given.
[[nodiscard]] inline std::variant<std::vector<Monitor>, std::string>
build_monitors(const std::vector<std::string> &specs, const Domain &d,
               const Problem &p) {
  std::vector<Monitor> monitors;
  for (const std::string &spec : specs) {
    if (spec.starts_with("fuel=")) {
      const std::string_view value = std::string_view(spec).substr(5);
      std::uint64_t units = 0;
      auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), units);
      if (ec != std::errc() || ptr != value.data() + value.size())
        return "monitor spec '" + spec + "': expected fuel=<nonnegative integer>";
      monitors.push_back(fuel_monitor(units));
    } else if (spec.starts_with("fairness=")) {
      const std::string path = spec.substr(9);
      auto text = read_file(path);
      if (!text) return "cannot read " + path;
      auto cfg_or = load_fairness_config(*text, d, p);
      if (auto *e = std::get_if<std::string>(&cfg_or)) return *e;
      monitors.push_back(
          fairness_monitor(std::move(std::get<FairnessConfig>(cfg_or)), p));
    } else {
      return "unknown monitor spec '" + spec +
             "' (expected fuel=<n> or fairness=<path>)";
    }
  }
  return monitors;
}

}  // namespace detail

// --- commands -------------------------------------------------------------------

inline int cmd_validate(const RunConfig &cfg, std::ostream &out,
                        std::ostream &err) {
  auto inputs_or = detail::load_inputs(cfg, out, err);
  if (auto *code = std::get_if<int>(&inputs_or)) return *code;
  const auto &in = std::get<detail::LoadedInputs>(inputs_or);

  auto result = check_plan(in.domain, in.problem, in.plan);
  if (auto *e = std::get_if<ValidationError>(&result))
    return detail::report_validation_error(cfg, *e, out, err);
  const Derivation &deriv = std::get<Derivation>(result);

  if (cfg.format == OutputFormat::json) {
    detail::ordered_json doc;
    doc["status"] = "valid";
    auto &steps = doc["steps"] = detail::ordered_json::array();
    for (const DerivationStep &step : deriv.steps) {
      detail::ordered_json s;
      s["index"] = step.index;
      s["action"] = detail::to_json(step.action);
      s["world_size"] = step.world_before.atoms.size();
      if (cfg.trace) s["world_before"] = detail::to_json(step.world_before);
      steps.push_back(std::move(s));
    }
    doc["final_world"] = detail::to_json(deriv.final_world);
    detail::emit(out, doc);
  } else {
    for (const DerivationStep &step : deriv.steps) {
      out << "step " << step.index << ": " << step.action << " [world: "
          << step.world_before.atoms.size() << " atoms]\n";
      if (cfg.trace)
        for (const GroundAtom &atom : step.world_before.atoms)
          out << "  " << atom << '\n';
    }
    out << "plan valid: " << deriv.steps.size() << " steps, goal satisfied\n";
  }
  return exit_ok;
}

inline int cmd_execute(const RunConfig &cfg, std::ostream &out,
                       std::ostream &err) {
  auto inputs_or = detail::load_inputs(cfg, out, err);
  if (auto *code = std::get_if<int>(&inputs_or)) return *code;
  const auto &in = std::get<detail::LoadedInputs>(inputs_or);

  auto monitors_or = detail::build_monitors(cfg.monitors, in.domain, in.problem);
  if (auto *e = std::get_if<std::string>(&monitors_or))
    return detail::report_usage_error(cfg, *e, out, err);

  if (!cfg.skip_validation) {
    auto result = check_plan(in.domain, in.problem, in.plan);
    if (auto *e = std::get_if<ValidationError>(&result))
      return detail::report_validation_error(cfg, *e, out, err);
  }

  const Monitor monitor =
      compose_monitors(std::move(std::get<std::vector<Monitor>>(monitors_or)));
  auto applied = std::make_shared<std::size_t>(0);
  auto current = std::make_shared<World>(in.problem.initial_world);
  ActionHandler handler = [inner = canonical_handler(in.domain), applied,
                           current, trace = cfg.trace,
                           &err](const GroundAction &a, const World &w) {
    *current = w;              // remembered for error reporting
    World next = inner(a, w);  // may throw GroundingFailure
    ++*applied;
    if (trace)
      err << "applied " << a << " -> " << detail::comma_join(next) << '\n';
    return next;
  };

  ExecutionOutcome outcome{World{}};
  try {
    outcome = execute_monitored(in.plan, handler, monitor,
                                in.problem.initial_world);
  } catch (const GroundingFailure &failure) {
    // only reachable with --skip-validation
    ValidationError e;
    e.kind = ValidationErrorKind::grounding_failed;
    e.step = *applied;
    e.action = failure.error.action;
    e.world = *current;
    e.grounding = failure.error;
    return detail::report_validation_error(cfg, e, out, err);
  }

  if (auto *monitor_error = std::get_if<MonitorError>(&outcome))
    return detail::report_monitor_error(cfg, *monitor_error, out, err);
  const World &final_world = std::get<World>(outcome);

  if (cfg.format == OutputFormat::json) {
    detail::ordered_json doc;
    doc["status"] = "executed";
    auto &steps = doc["steps"] = detail::ordered_json::array();
    for (std::size_t i = 0; i < in.plan.actions.size(); ++i) {
      detail::ordered_json s;
      s["index"] = i;
      s["action"] = detail::to_json(in.plan.actions[i]);
      steps.push_back(std::move(s));
    }
    doc["final_world"] = detail::to_json(final_world);
    detail::emit(out, doc);
  } else {
    for (const GroundAtom &atom : final_world.atoms) out << atom << '\n';
  }
  return exit_ok;
}

}  // namespace plancheck
