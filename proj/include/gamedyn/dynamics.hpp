#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gamedyn/calculus.hpp"
#include "gamedyn/game.hpp"

namespace gamedyn {

enum class AlgorithmKind { gd, sga, consensus, aligned_consensus, omd };

std::string to_string(AlgorithmKind kind);
AlgorithmKind algorithm_kind_from_string(const std::string& s);  // ParamError on unknown

/// One first-order update rule. align is honored only for kind = sga; the
/// aligned consensus rule carries its own sign logic.
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::gd;
  double lambda = 1.0;
  bool align = false;
  double epsilon_align = 0.1;
  double eta = 0.01;

  void validate() const;  // eta > 0, epsilon_align >= 0, finite lambda
  std::string label() const;
};

/// Iteration state threaded through simulate; prev_xi is present exactly for
/// omd past the first step.
struct StepState {
  JointPoint w;
  std::optional<Vec> prev_xi;
  int step_index = 0;
};

struct StoppingRule {
  int max_steps = 1000;
  int loss_window = 10;
  double loss_threshold = 0.01;
  double divergence_norm = 1e6;

  void validate() const;
};

enum class Verdict { converged, diverged, exhausted };

std::string to_string(Verdict v);

struct TrajectoryState {
  int step = 0;
  Vec w;
  Vec losses;
  double H = 0.0;
  double xi_norm = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryState> states;
  Verdict verdict = Verdict::exhausted;
  int verdict_step = 0;  // step at which the verdict fired; max_steps when exhausted
  AlgorithmSpec spec;
  StoppingRule stopping;

  const TrajectoryState& final_state() const { return states.back(); }
};

/// Evaluator failure mid-run; carries everything recorded before the throw.
struct SimulationError : NumericError {
  Trajectory partial;
  SimulationError(const std::string& msg, Trajectory t)
      : NumericError(msg), partial(std::move(t)) {}
};

/// sign((1/d)*<xi, gradH> * <adj, gradH> + epsilon), with sign(0) = +1.
double alignment_sign(const DecompositionBundle& b, double epsilon);

/// The direction u consumed as w <- w - eta * u:
///   gd: xi; sga: xi + lambda'*adj; consensus: xi + lambda*gradH;
///   aligned_consensus: xi + |lambda|*sign(<xi, gradH>)*gradH (sign(0) = +1).
/// For sga with align on, lambda' = |lambda| * alignment_sign(b, epsilon).
/// kind = omd raises UsageError: it is a two-step rule, see step_omd.
Vec update_direction(const DecompositionBundle& b, const AlgorithmSpec& spec);

/// One optimistic mirror descent update
///   w_{t+1} = w_t - eta*(2*xi_t - xi_{t-1}),   xi_{-1} := xi_0.
StepState step_omd(const StepState& state, const Game& game, double eta);

/// Runs spec from w0 until convergence (trailing loss_window mean of the
/// per-player mean |l_i| drops below loss_threshold), divergence (|w| above
/// divergence_norm or any non-finite coordinate/loss), or max_steps updates.
Trajectory simulate(const Game& game, const Vec& w0, const AlgorithmSpec& spec,
                    const StoppingRule& stopping);

}  // namespace gamedyn
