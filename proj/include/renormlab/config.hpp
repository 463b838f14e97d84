#pragma once

#include <string>

#include "renormlab/combinatorics.hpp"
#include "renormlab/real.hpp"

namespace renormlab {

// One experiment, fully determined. Defaults here are the documented
// defaults of every subcommand; `command` may be empty when the caller
// supplies it out of band (the CLI always does).
struct ExperimentConfig {
  std::string command;
  Real c = 0;
  Real c_prime = 0.5;
  std::string cf = "(1)";
  int steps = 8;
  Real tol = 1e-10;
  int degree = kDefaultDegree;
  int grid = 257;
  Real ellipse = 1.15;
  std::string out = "out";
  std::string pair;  // input pair file, validate-pair only
  std::string precision = precision_name();
  unsigned long long seed = 0;
};

// Parse the flat key = value subset of TOML used by the experiment files:
// quoted strings, integers, reals, booleans, # comments. Unknown keys,
// duplicate keys, and type mismatches are rejected with their line number.
// Defaults fill unset keys and validate_config runs before returning.
ExperimentConfig parse_config(const std::string& text);

// Semantic validation shared by the parser and the flag-override path.
// Throws ConfigError naming the offending key.
void validate_config(const ExperimentConfig& cfg);

// The word named by cfg.cf, checked against the alphabet {1, .., kNMax}.
SymbolWord config_word(const ExperimentConfig& cfg);

}  // namespace renormlab
