#pragma once

#include <string>

#include "morlax/trainer.hpp"

namespace morlax {

// Parses the JSON run-config document. Missing keys keep their documented
// defaults; unknown keys are rejected with their full path ("trainer.foo").
// Structural validation only — call RunConfig::validate() for value checks.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Fully resolved snapshot with every key present. Re-parsing it yields an
// identical configuration.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace morlax
