#pragma once

#include <stdexcept>
#include <string>

#include "phasemc/scenario.hpp"

namespace phasemc {

/// Config-file problem with a line-anchored message.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario defaults: shared values plus the per-kind detector domain and
/// particle budget used throughout the (desk-scale) studies.
ScenarioConfig default_config(ScenarioKind kind);

/// Parses flat `key = value` text (one scenario per file, '#' comments).
///
/// `kind` must appear before it is needed and selects which keys are legal;
/// unknown or wrong-kind keys, malformed numbers, and invalid values are all
/// rejected with the offending line number and key name.
ScenarioConfig parse_config(const std::string& text);

/// Canonical round-trippable text form: parse_config(emit_config(c))
/// reproduces c exactly.
std::string emit_config(const ScenarioConfig& cfg);

} // namespace phasemc
