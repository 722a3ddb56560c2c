#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "plancheck/model.hpp"
#include "plancheck/monitors.hpp"

// Reading a fairness configuration from JSON and validating it against a
// domain/problem pair. Expected shape:
//
//   {
//     "driver_type": "taxi",
//     "margin": 10,
//     "min_trip_factor": 10,                  // optional, default 10
//     "trip_actions": {"drive_passenger": {"driver_param": 0}},
//     "genders": {"taxi1": "male", "taxi2": "female", "taxi3": "other"}
//   }
//
// Unknown keys are rejected, and every object of the driver type must have
// a gender entry.

namespace plancheck {

namespace detail {

[[nodiscard]] inline std::optional<Gender> gender_from_string(
    std::string_view s) {
  if (s == "male") return Gender::male;
  if (s == "female") return Gender::female;
  if (s == "other") return Gender::other;
  return std::nullopt;
}

[[nodiscard]] inline std::optional<std::string> natural_field(
    const nlohmann::json &j, const char *key, std::uint64_t &out) {
  const auto &v = j.at(key);
  if (!v.is_number_unsigned())
    return std::string("fairness config: '") + key +
           "' must be a nonnegative integer";
  out = v.get<std::uint64_t>();
  return std::nullopt;
}

}  // namespace detail

// Parses and validates; returns the config or a human-readable complaint.
[[nodiscard]] inline std::variant<FairnessConfig, std::string>
load_fairness_config(std::string_view text, const Domain &d, const Problem &p) {
  const nlohmann::json j =
      nlohmann::json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return std::string("fairness config: invalid JSON");
  if (!j.is_object()) return std::string("fairness config: expected an object");

  for (const auto &[key, value] : j.items()) {
    if (key != "driver_type" && key != "margin" && key != "min_trip_factor" &&
        key != "trip_actions" && key != "genders")
      return "fairness config: unknown key '" + key + "'";
    (void)value;
  }
  for (const char *key : {"driver_type", "margin", "genders"})
    if (!j.contains(key))
      return std::string("fairness config: missing key '") + key + "'";

  FairnessConfig cfg;

  if (!j.at("driver_type").is_string())
    return std::string("fairness config: 'driver_type' must be a string");
  cfg.driver_type = TypeName{j.at("driver_type").get<std::string>()};
  if (!detail::type_declared(d, cfg.driver_type))
    return "fairness config: unknown driver type " + cfg.driver_type.name;

  if (auto err = detail::natural_field(j, "margin", cfg.margin)) return *err;
  if (j.contains("min_trip_factor"))
    if (auto err = detail::natural_field(j, "min_trip_factor", cfg.min_trip_factor))
      return *err;

  if (j.contains("trip_actions")) {
    const auto &actions = j.at("trip_actions");
    if (!actions.is_object())
      return std::string("fairness config: 'trip_actions' must be an object");
    for (const auto &[name, spec] : actions.items()) {
      const ActionSchema *schema = detail::find_schema(d, name);
      if (!schema) return "fairness config: unknown action " + name;
      if (!spec.is_object() || spec.size() != 1 || !spec.contains("driver_param"))
        return "fairness config: trip action " + name +
               " must be {\"driver_param\": <index>}";
      std::uint64_t position = 0;
      if (auto err = detail::natural_field(spec, "driver_param", position))
        return *err;
      if (position >= schema->params.size())
        return "fairness config: driver_param " + std::to_string(position) +
               " out of range for action " + name;
      if (schema->params[position].type != cfg.driver_type)
        return "fairness config: parameter ?" + schema->params[position].name +
               " of " + name + " is a " + schema->params[position].type.name +
               ", not a " + cfg.driver_type.name;
      cfg.trip_actions.emplace(name, static_cast<std::size_t>(position));
    }
  }

  const auto &genders = j.at("genders");
  if (!genders.is_object())
    return std::string("fairness config: 'genders' must be an object");
  for (const auto &[name, value] : genders.items()) {
    const ObjectRef *obj = detail::find_object(p, name);
    if (!obj) return "fairness config: unknown object " + name;
    if (obj->type != cfg.driver_type)
      return "fairness config: object " + name + " is a " + obj->type.name +
             ", not a " + cfg.driver_type.name;
    if (!value.is_string())
      return "fairness config: gender of " + name + " must be a string";
    auto gender = detail::gender_from_string(value.get<std::string>());
    if (!gender)
      return "fairness config: gender of " + name +
             " must be one of male/female/other";
    cfg.driver_gender.emplace(name, *gender);
  }
  for (const ObjectRef &o : p.objects)
    if (o.type == cfg.driver_type && !cfg.driver_gender.contains(o.name))
      return "fairness config: no gender for " + o.name;

  return cfg;
}

}  // namespace plancheck
