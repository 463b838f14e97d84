#pragma once

#include <filesystem>
#include <string>

#include "renormlab/config.hpp"
#include "renormlab/renorm.hpp"

namespace renormlab {

struct RunOutcome {
  std::filesystem::path out_dir;
  std::string content_hash;  // FNV-1a 64 over every artifact except run.log
  StopReason stop = StopReason::Completed;
  std::string stop_detail;
};

// Execute cfg.command, writing its artifacts into cfg.out. Deterministic
// given the config: numeric text uses shortest round-trip decimals, column
// and key orders are fixed, and wall-clock timestamps go to run.log only,
// the one file excluded from the content hash. An orbit that stops early is
// still a successful run (the stop reason lands in summary.json); hard
// failures throw after writing what they can.
RunOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace renormlab
