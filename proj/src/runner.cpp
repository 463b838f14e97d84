#include "renormlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "renormlab/analysis.hpp"
#include "renormlab/circle_maps.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/pairs.hpp"

namespace renormlab {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

// Artifacts accumulate in memory, get hashed in name order, and are written
// in one pass so a failed run never leaves a half-written summary behind.
struct Artifacts {
  std::map<std::string, std::string> files;
  std::vector<std::string> log_lines;

  void add(const std::string& name, const std::string& content) {
    files[name] = content;
  }
  void log(const std::string& msg) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    log_lines.push_back(std::string(stamp) + " " + msg);
  }
  std::string hash() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& [name, content] : files) {
      h = fnv1a(h, name);
      h = fnv1a(h, std::string(1, '\0'));
      h = fnv1a(h, content);
      h = fnv1a(h, std::string(1, '\0'));
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }
};

std::string csv_real(Real v) {
  if (!std::isfinite(v)) return "";
  return real_to_string(v);
}

ordered_json json_real(Real v) { return real_to_string(v); }

ordered_json config_echo(const ExperimentConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["c"] = json_real(cfg.c);
  j["c_prime"] = json_real(cfg.c_prime);
  j["cf"] = cfg.cf;
  j["steps"] = cfg.steps;
  j["tol"] = json_real(cfg.tol);
  j["degree"] = cfg.degree;
  j["grid"] = cfg.grid;
  j["ellipse"] = json_real(cfg.ellipse);
  j["precision"] = cfg.precision;
  j["seed"] = cfg.seed;
  if (!cfg.pair.empty()) j["pair"] = cfg.pair;
  return j;
}

// Orbit table with self-distances between consecutive accepted pairs; the
// first accepted step has no predecessor distance beyond the seed, which is
// pairs[0], so every row carries one.
std::string orbit_csv(const RenormOrbit& orbit, int grid) {
  std::ostringstream os;
  os << "k,height,eta0,residual,decay,d_c0_prev,d_c3_prev\n";
  for (const auto& row : orbit.rows) {
    Real d0 = dist_c0(orbit.pairs[row.k], orbit.pairs[row.k - 1], grid);
    Real d3 = dist_ck(orbit.pairs[row.k], orbit.pairs[row.k - 1], 3, grid);
    os << row.k << ',' << row.height << ',' << csv_real(row.eta0) << ','
       << csv_real(row.residual) << ',' << csv_real(row.decay) << ','
       << csv_real(d0) << ',' << csv_real(d3) << '\n';
  }
  return os.str();
}

// Contraction fit over the self-distance sequence, dropping the first
// accepted step as an extraction transient. Returns an empty fit when too
// few points remain.
ContractionFit orbit_fit(const RenormOrbit& orbit, int grid) {
  std::vector<Real> d;
  for (size_t k = 2; k < orbit.pairs.size(); ++k)
    d.push_back(dist_c0(orbit.pairs[k], orbit.pairs[k - 1], grid));
  try {
    return fit_contraction_rate(d);
  } catch (const FitError&) {
    return {};
  }
}

ordered_json fit_json(const ContractionFit& fit) {
  ordered_json j;
  j["lambda"] =
      fit.usable() ? ordered_json(real_to_string(fit.lambda)) : nullptr;
  j["r2"] = fit.points >= 4 ? ordered_json(real_to_string(fit.r2)) : nullptr;
  j["fit_points"] = fit.points;
  return j;
}

struct Summary {
  ordered_json result;
  ContractionFit fit;
  ordered_json limits;  // null unless the command estimates limits
  StopReason stop = StopReason::Completed;
  std::string stop_detail;
};

void run_tune(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  TuneReport tr;
  tune_omega(cfg.c, config_word(cfg), cfg.tol, &tr);
  art.log("tuned omega for " + cfg.cf);
  ordered_json j;
  j["omega"] = json_real(tr.omega);
  j["target"] = json_real(tr.target);
  j["achieved"] = json_real(tr.achieved);
  j["accuracy"] = json_real(tr.accuracy);
  j["bisections"] = tr.bisections;
  art.add("tune.json", j.dump(2) + "\n");
  sum.result = j;
}

void run_extract(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  Real om = tune_omega(cfg.c, config_word(cfg), cfg.tol);
  CommutingPair p = extract_pair(CircleLift(om, cfg.c), cfg.degree);
  art.log("extracted pair at omega " + real_to_string(om));
  art.add("pair.json", to_json(p).dump(2) + "\n");
  ValidationReport rep = validate(p);
  ordered_json j;
  j["omega"] = json_real(om);
  j["a"] = json_real(p.eta.eval(0));
  j["residual"] = json_real(rep.residual);
  sum.result = j;
}

void run_orbit(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  Real om = tune_omega(cfg.c, config_word(cfg), cfg.tol);
  CommutingPair seed = extract_pair(CircleLift(om, cfg.c), cfg.degree);
  RenormOrbit orbit = renorm_orbit(seed, cfg.steps);
  art.log("orbit ran " + std::to_string(orbit.rows.size()) + " steps");
  art.add("orbit.csv", orbit_csv(orbit, cfg.grid));
  art.add("seed_pair.json", to_json(orbit.pairs.front()).dump(2) + "\n");
  art.add("final_pair.json", to_json(orbit.pairs.back()).dump(2) + "\n");
  sum.fit = orbit_fit(orbit, cfg.grid);
  sum.stop = orbit.stop;
  sum.stop_detail = orbit.stop_detail;
  ordered_json j;
  j["omega"] = json_real(om);
  j["accepted_steps"] = orbit.rows.size();
  sum.result = j;
}

void run_universality(const ExperimentConfig& cfg, Artifacts& art,
                      Summary& sum) {
  UniversalityResult res =
      universality_experiment(cfg.c, cfg.c_prime, config_word(cfg), cfg.steps,
                              cfg.tol, cfg.degree, cfg.grid, cfg.ellipse);
  art.log("universality orbits ran");
  art.add("orbit_a.csv", orbit_csv(res.orbit_a, cfg.grid));
  art.add("orbit_b.csv", orbit_csv(res.orbit_b, cfg.grid));
  std::ostringstream os;
  os << "k,d_c0,d_c3,d_analytic\n";
  for (size_t k = 0; k < res.d0.size(); ++k)
    os << k << ',' << csv_real(res.d0[k]) << ',' << csv_real(res.d3[k]) << ','
       << csv_real(res.dan[k]) << '\n';
  art.add("distances.csv", os.str());
  sum.fit = res.fit;
  sum.stop = res.stop;
  sum.stop_detail = res.stop_detail;
  ordered_json j;
  j["omega_a"] = json_real(res.omega_a);
  j["omega_b"] = json_real(res.omega_b);
  j["compared_steps"] = res.d0.size();
  if (!res.d0.empty()) j["final_d_c0"] = json_real(res.d0.back());
  sum.result = j;
}

void run_shift(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  ShiftResult res = shift_experiment(cfg.c, config_word(cfg), cfg.steps,
                                     cfg.tol, cfg.degree, cfg.grid);
  art.log("shift orbit ran");
  art.add("orbit.csv", orbit_csv(res.orbit, cfg.grid));
  std::ostringstream os;
  os << "k,d_period\n";
  for (size_t k = 0; k < res.period_dist.size(); ++k)
    os << k << ',' << csv_real(res.period_dist[k]) << '\n';
  art.add("period.csv", os.str());
  sum.fit = res.fit;
  sum.stop = res.orbit.stop;
  sum.stop_detail = res.orbit.stop_detail;
  ordered_json j;
  j["omega"] = json_real(res.omega);
  j["heights_match"] = res.heights_match;
  if (!res.period_dist.empty())
    j["final_d_period"] = json_real(res.period_dist.back());
  sum.result = j;
}

void run_scaling(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  ScalingResult res =
      scaling_study(cfg.c, cfg.c_prime, cfg.steps, cfg.tol, cfg.degree);
  art.log("scaling study ran");
  std::ostringstream os;
  os << "k,ratio_a,ratio_b,direct\n";
  size_t n = std::max({res.ratios_a.size(), res.ratios_b.size(),
                       res.direct_ratios.size()});
  auto cell = [](const std::vector<Real>& v, size_t k) {
    return k < v.size() ? csv_real(v[k]) : std::string();
  };
  for (size_t k = 0; k < n; ++k)
    os << k << ',' << cell(res.ratios_a, k) << ',' << cell(res.ratios_b, k)
       << ',' << cell(res.direct_ratios, k) << '\n';
  art.add("ratios.csv", os.str());
  sum.limits = ordered_json{{"eta0_a", json_real(res.limit_a)},
                            {"eta0_b", json_real(res.limit_b)},
                            {"direct", json_real(res.direct_limit)},
                            {"rigid_baseline", json_real(res.rigid_baseline)}};
  sum.stop =
      res.stop_a != StopReason::Completed ? res.stop_a : res.stop_b;
  sum.stop_detail = res.stop_detail;
  ordered_json j;
  j["omega_a"] = json_real(res.omega_a);
  j["omega_b"] = json_real(res.omega_b);
  sum.result = j;
}

void run_validate(const ExperimentConfig& cfg, Artifacts& art, Summary& sum) {
  std::ifstream in(cfg.pair, std::ios::binary);
  if (!in) throw DomainError("cannot read pair file " + cfg.pair);
  std::ostringstream buf;
  buf << in.rdbuf();
  CommutingPair p = pair_from_string(buf.str());
  ValidationReport rep = validate(p);
  art.log("validated pair from " + cfg.pair);
  ordered_json j;
  j["ok"] = rep.ok();
  j["monotone_ok"] = rep.monotone_ok;
  j["critical_ok"] = rep.critical_ok;
  j["residual"] = json_real(rep.residual);
  j["normalized"] = p.normalized;
  j["a"] = json_real(p.eta.eval(0));
  j["b"] = json_real(p.xi.eval(0));
  art.add("validation.json", j.dump(2) + "\n");
  sum.result = j;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.command.empty())
    throw ConfigError("no command: pass a subcommand or a 'command' key");

  Artifacts art;
  art.log("run " + cfg.command + " starting");
  Summary sum;
  if (cfg.command == "tune")
    run_tune(cfg, art, sum);
  else if (cfg.command == "extract-pair")
    run_extract(cfg, art, sum);
  else if (cfg.command == "renorm-orbit")
    run_orbit(cfg, art, sum);
  else if (cfg.command == "universality")
    run_universality(cfg, art, sum);
  else if (cfg.command == "shift-demo")
    run_shift(cfg, art, sum);
  else if (cfg.command == "scaling")
    run_scaling(cfg, art, sum);
  else if (cfg.command == "validate-pair")
    run_validate(cfg, art, sum);

  std::string hash = art.hash();
  ordered_json summary;
  summary["command"] = cfg.command;
  summary["precision"] = cfg.precision;
  summary["config"] = config_echo(cfg);
  summary["result"] = sum.result;
  ordered_json fj = fit_json(sum.fit);
  summary["lambda"] = fj["lambda"];
  summary["r2"] = fj["r2"];
  summary["fit_points"] = fj["fit_points"];
  summary["stop_reason"] = stop_reason_name(sum.stop);
  summary["stop_detail"] = sum.stop_detail;
  summary["limits"] = sum.limits.is_null() ? ordered_json(nullptr) : sum.limits;
  summary["content_hash"] = hash;
  art.files["summary.json"] = summary.dump(2) + "\n";
  art.log("run " + cfg.command + " finished, content hash " + hash);

  std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : art.files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write artifact " + (dir / name).string());
    out << content;
  }
  {
    std::ofstream log(dir / "run.log", std::ios::binary | std::ios::trunc);
    for (const auto& line : art.log_lines) log << line << '\n';
  }

  RunOutcome outcome;
  outcome.out_dir = dir;
  outcome.content_hash = hash;
  outcome.stop = sum.stop;
  outcome.stop_detail = sum.stop_detail;
  return outcome;
}

}  // namespace renormlab
