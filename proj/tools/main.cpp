#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "renormlab/config.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/runner.hpp"

namespace {

using renormlab::ConfigError;
using renormlab::ExperimentConfig;

// Flag values land here as text so that "given at all" is distinguishable
// from "given the default"; only flags the user actually passed override
// file keys.
struct Flags {
  std::string config, out, precision, cf, pair;
  double c = 0, c_prime = 0, tol = 0, ellipse = 0;
  int steps = 0, degree = 0, grid = 0;
  unsigned long long seed = 0;
};

void add_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "experiment config file (TOML)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--precision", f.precision, "double or extended");
  cmd->add_option("--seed", f.seed, "seed recorded for noise-injection tests");
  cmd->add_option("--c", f.c, "family parameter of the first lift");
  cmd->add_option("--c-prime", f.c_prime, "family parameter of the second lift");
  cmd->add_option("--cf", f.cf, "continued-fraction word, e.g. \"(1)\"");
  cmd->add_option("--steps", f.steps, "renormalization depth");
  cmd->add_option("--tol", f.tol, "rotation-number tuning tolerance");
  cmd->add_option("--degree", f.degree, "Chebyshev degree for extraction");
  cmd->add_option("--grid", f.grid, "comparison grid size");
  cmd->add_option("--ellipse", f.ellipse, "Bernstein ellipse parameter");
  cmd->add_option("--pair", f.pair, "pair file to validate");
}

ExperimentConfig assemble(const CLI::App* cmd, const Flags& f,
                          const std::string& command) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + f.config);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = renormlab::parse_config(buf.str());
  }
  if (!cfg.command.empty() && cfg.command != command)
    throw ConfigError("config file names command '" + cfg.command +
                      "' but the invocation asks for '" + command + "'");
  cfg.command = command;
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--out")) cfg.out = f.out;
  if (given("--precision")) cfg.precision = f.precision;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--c")) cfg.c = f.c;
  if (given("--c-prime")) cfg.c_prime = f.c_prime;
  if (given("--cf")) cfg.cf = f.cf;
  if (given("--steps")) cfg.steps = f.steps;
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--degree")) cfg.degree = f.degree;
  if (given("--grid")) cfg.grid = f.grid;
  if (given("--ellipse")) cfg.ellipse = f.ellipse;
  if (given("--pair")) cfg.pair = f.pair;
  renormlab::validate_config(cfg);
  return cfg;
}

int report_error(const std::string& tag, const std::string& message,
                 int code, const std::string& out_dir) {
  nlohmann::ordered_json j;
  j["error"] = tag;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump(2) << std::endl;
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!ec) {
      std::ofstream out(std::filesystem::path(out_dir) / "error.json",
                        std::ios::binary | std::ios::trunc);
      if (out) out << j.dump(2) << "\n";
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormalization laboratory for critical commuting pairs"};
  app.require_subcommand(1);

  const char* names[] = {"tune",         "extract-pair", "renorm-orbit",
                         "universality", "shift-demo",   "scaling",
                         "validate-pair"};
  const char* blurbs[] = {
      "bisect omega until the lift hits a periodic rotation target",
      "tune, then write the normalized first-return pair",
      "run a renormalization orbit and its per-step diagnostics",
      "compare renormalization orbits of two families of one type",
      "realize a periodic word as orbit heights and track periodicity",
      "golden scaling ratios of two families against the direct estimate",
      "check pair axioms and the commutation residual of a stored pair"};

  Flags flags;
  std::string chosen;
  for (int i = 0; i < 7; ++i) {
    CLI::App* cmd = app.add_subcommand(names[i], blurbs[i]);
    add_options(cmd, flags);
    cmd->callback([&chosen, name = names[i]] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  std::string out_hint = flags.out;
  try {
    const CLI::App* cmd = app.get_subcommands().front();
    ExperimentConfig cfg = assemble(cmd, flags, chosen);
    out_hint = cfg.out;
    renormlab::RunOutcome outcome = renormlab::run_experiment(cfg);
    std::cout << chosen << ": " << renormlab::stop_reason_name(outcome.stop)
              << ", artifacts in " << outcome.out_dir.string()
              << ", content hash " << outcome.content_hash << "\n";
    return 0;
  } catch (const ConfigError& e) {
    return report_error(e.tag, e.what(), 1, out_hint);
  } catch (const renormlab::Error& e) {
    return report_error(e.tag, e.what(), 2, out_hint);
  } catch (const std::exception& e) {
    return report_error("internal_error", e.what(), 2, out_hint);
  }
}
