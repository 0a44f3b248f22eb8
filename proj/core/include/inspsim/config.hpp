#pragma once

#include <string>

#include "inspsim/validation.hpp"

namespace inspsim {

/// Fully resolved experiment configuration: chief-orbit constants, the
/// Monte-Carlo stage, the validation stage, and output plumbing.
struct ExperimentConfig {
    Constants constants;
    McConfig mc;
    ValConfig val;
    std::string ph_strategy_file;   ///< optional PointHold StrategySpec path
    std::string nmc_strategy_file;  ///< optional NmcHold StrategySpec path
    std::string output_dir = "out";
};

/// Load and validate a TOML or JSON config (by extension; `.toml` gets a
/// line-oriented TOML subset: tables, scalars, flat arrays). Unknown keys,
/// range violations, and an inconsistent `constants.sigma_mu` are rejected
/// with path-qualified ConfigError messages. An empty file yields the full
/// default configuration.
ExperimentConfig load_config(const std::string& path);

/// Parse a JSON config document given as a string (used by load_config and
/// the tests).
ExperimentConfig parse_config_json(const std::string& text);

/// Canonical resolved-config JSON, annotated with fixed per-field notes.
/// dump(load(x)) is a fixed point under reload.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace inspsim
