#pragma once

// Umbrella header: the whole toolkit in one include.

#include "plancheck/cli.hpp"
#include "plancheck/fairness_config.hpp"
#include "plancheck/grounding.hpp"
#include "plancheck/model.hpp"
#include "plancheck/monitors.hpp"
#include "plancheck/parser.hpp"
#include "plancheck/semantics.hpp"
#include "plancheck/validator.hpp"
