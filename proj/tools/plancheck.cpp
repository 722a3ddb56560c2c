#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plancheck/cli.hpp"

// plancheck — validate STRIPS-style plans and execute them under monitors.
//
//   plancheck validate --domain d.pddl --problem p.pddl --plan plan.txt
//   plancheck execute  --domain d.pddl --problem p.pddl --plan plan.txt
//                      --monitor fuel=3 --monitor fairness=cfg.json
//
// Exit codes: 0 ok, 1 plan invalid, 2 monitor refusal, 3 parse/usage error.

namespace {

void add_common_options(CLI::App &cmd, plancheck::RunConfig &cfg,
                        std::string &format_flag) {
  cmd.add_option("--domain", cfg.domain_path, "domain file (PDDL subset)")
      ->required();
  cmd.add_option("--problem", cfg.problem_path, "problem file (PDDL subset)")
      ->required();
  cmd.add_option("--plan", cfg.plan_path, "plan file, one (action ...) per line")
      ->required();
  cmd.add_option("--format", format_flag, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd.add_flag("--trace", cfg.trace, "show full worlds step by step");
}

// --format beats PLANCHECK_FORMAT beats text.
int resolve_format(const std::string &format_flag, plancheck::RunConfig &cfg) {
  if (!format_flag.empty()) {
    cfg.format = *plancheck::parse_output_format(format_flag);
    return 0;
  }
  if (const char *env = std::getenv("PLANCHECK_FORMAT")) {
    auto format = plancheck::parse_output_format(env);
    if (!format) {
      std::cerr << "plancheck: PLANCHECK_FORMAT must be 'text' or 'json', got '"
                << env << "'\n";
      return plancheck::exit_usage;
    }
    cfg.format = *format;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"plan validation and monitored execution"};
  app.require_subcommand(1);

  plancheck::RunConfig validate_cfg;
  std::string validate_format;
  CLI::App *validate =
      app.add_subcommand("validate", "check a plan against domain and problem");
  add_common_options(*validate, validate_cfg, validate_format);

  plancheck::RunConfig execute_cfg;
  std::string execute_format;
  CLI::App *execute =
      app.add_subcommand("execute", "validate, then run the plan under monitors");
  add_common_options(*execute, execute_cfg, execute_format);
  execute->add_option("--monitor", execute_cfg.monitors,
                      "monitor spec: fuel=<n> or fairness=<path>; repeatable");
  execute->add_flag("--skip-validation", execute_cfg.skip_validation,
                    "execute even if the plan does not validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // CLI11 prints help itself; fold its exit into our usage code
    const int code = app.exit(e);
    return code == 0 ? 0 : plancheck::exit_usage;
  }

  if (validate->parsed()) {
    if (int code = resolve_format(validate_format, validate_cfg)) return code;
    return plancheck::cmd_validate(validate_cfg, std::cout, std::cerr);
  }
  if (int code = resolve_format(execute_format, execute_cfg)) return code;
  return plancheck::cmd_execute(execute_cfg, std::cout, std::cerr);
}
