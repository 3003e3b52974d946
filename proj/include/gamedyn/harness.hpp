#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gamedyn/catalog.hpp"
#include "gamedyn/dynamics.hpp"

namespace gamedyn {

struct GameRef {
  std::string name;
  ParamMap params;

  Game build() const { return builtin_game(name, params); }
};

/// Learning rates: an explicit list, or a log/linear grid over [min, max].
struct EtaSpec {
  std::vector<double> values;  // non-empty -> explicit list, grid ignored
  double grid_min = 0.0;
  double grid_max = 0.0;
  int grid_count = 0;
  bool log_spacing = true;

  static EtaSpec list(std::vector<double> v);
  static EtaSpec grid(double min, double max, int count, bool log_spacing = true);
  /// Concrete etas, validated all-positive (ParamError otherwise).
  std::vector<double> resolve() const;
};

/// Start points: one explicit vector, or `trials` draws from a seeded ball.
struct W0Spec {
  Vec explicit_w0;  // used when ball = false
  bool ball = false;
  Vec center;
  double radius = 1.0;
  std::uint64_t seed = 0;
  int trials = 1;

  static W0Spec point(Vec w0);
  static W0Spec sampled_ball(Vec center, double radius, std::uint64_t seed, int trials);
  /// The trial start points, all of dimension d.
  std::vector<Vec> resolve(int d) const;
};

struct SweepSpec {
  GameRef game;
  std::vector<AlgorithmSpec> algorithms;  // eta field overridden per grid cell
  EtaSpec etas;
  W0Spec w0;
  StoppingRule stopping;
  std::string out_path;  // empty -> stdout
  std::string format = "csv";
};

struct SweepRow {
  AlgorithmSpec spec;  // with the cell's eta filled in
  int trial = 0;
  Verdict verdict = Verdict::exhausted;
  int steps = 0;  // verdict step; max_steps when exhausted
  double final_avg_abs_loss = 0.0;  // trailing-window mean, capped at loss_cap
  double final_w_norm = 0.0;
  double final_H = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // (algorithm, eta, trial) order
};

/// Reported losses are capped here; matches the sweep CSV golden files.
inline constexpr double kSweepLossCap = 5.0;

/// Runs every (algorithm, eta, trial) cell, optionally on a worker pool.
/// Output is byte-identical for any worker count.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/// Shortest round-trip decimal form of a double (CSV number format).
std::string format_double(double x);

std::string sweep_csv(const SweepResult& result);
std::string trajectory_csv(const Trajectory& t);

/// Parses the JSON config document mirroring SweepSpec (see README for the
/// schema). Throws ConfigError with the offending key on bad input.
SweepSpec parse_sweep_config(const std::string& json_text);
SweepSpec load_sweep_config(const std::string& path);

/// Full CLI entry point (subcommands decompose, simulate, sweep, classify,
/// typed, check). Returns the process exit code: 0 success, 1 usage error,
/// 2 numeric failure.
int run_cli(int argc, const char* const* argv);

}  // namespace gamedyn
