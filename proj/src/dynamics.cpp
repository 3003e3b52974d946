#include "gamedyn/dynamics.hpp"

#include <cmath>
#include <deque>

namespace gamedyn {

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::gd: return "gd";
    case AlgorithmKind::sga: return "sga";
    case AlgorithmKind::consensus: return "consensus";
    case AlgorithmKind::aligned_consensus: return "aligned_consensus";
    case AlgorithmKind::omd: return "omd";
  }
  return "?";
}

AlgorithmKind algorithm_kind_from_string(const std::string& s) {
  if (s == "gd") return AlgorithmKind::gd;
  if (s == "sga") return AlgorithmKind::sga;
  if (s == "consensus") return AlgorithmKind::consensus;
  if (s == "aligned_consensus") return AlgorithmKind::aligned_consensus;
  if (s == "omd") return AlgorithmKind::omd;
  throw ParamError("unknown algorithm '" + s +
                   "' (expected gd, sga, consensus, aligned_consensus, omd)");
}

void AlgorithmSpec::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ParamError("eta must be positive and finite");
  if (!std::isfinite(lambda)) throw ParamError("lambda must be finite");
  if (!(epsilon_align >= 0.0) || !std::isfinite(epsilon_align))
    throw ParamError("epsilon_align must be >= 0 and finite");
}

std::string AlgorithmSpec::label() const { return to_string(kind); }

void StoppingRule::validate() const {
  if (max_steps < 1) throw ParamError("max_steps must be >= 1");
  if (loss_window < 1) throw ParamError("loss_window must be >= 1");
  if (loss_window > max_steps) throw ParamError("loss_window must not exceed max_steps");
  if (!(loss_threshold > 0.0)) throw ParamError("loss_threshold must be positive");
  if (!(divergence_norm > 0.0)) throw ParamError("divergence_norm must be positive");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverged: return "diverged";
    case Verdict::exhausted: return "exhausted";
  }
  return "?";
}

double alignment_sign(const DecompositionBundle& b, double epsilon) {
  const double d = static_cast<double>(b.xi.size());
  const double v =
      la::dot(b.xi, b.gradH) * la::dot(b.adj, b.gradH) / d + epsilon;
  return v < 0.0 ? -1.0 : 1.0;
}

Vec update_direction(const DecompositionBundle& b, const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmKind::gd:
      return b.xi;
    case AlgorithmKind::sga: {
      const double lam = spec.align
                             ? std::abs(spec.lambda) * alignment_sign(b, spec.epsilon_align)
                             : spec.lambda;
      Vec dir = b.xi;
      la::axpy(lam, b.adj, dir);
      return dir;
    }
    case AlgorithmKind::consensus: {
      Vec dir = b.xi;
      la::axpy(spec.lambda, b.gradH, dir);
      return dir;
    }
    case AlgorithmKind::aligned_consensus: {
      const double sign = la::dot(b.xi, b.gradH) < 0.0 ? -1.0 : 1.0;
      Vec dir = b.xi;
      la::axpy(std::abs(spec.lambda) * sign, b.gradH, dir);
      return dir;
    }
    case AlgorithmKind::omd:
      throw UsageError("omd is a two-step rule with gradient memory; use step_omd or simulate");
  }
  throw UsageError("unknown algorithm kind");
}

StepState step_omd(const StepState& state, const Game& game, double eta) {
  if (!(eta > 0.0)) throw ParamError("eta must be positive");
  const Vec xi = simultaneous_gradient(game, state.w.values);
  const Vec& prev = state.prev_xi ? *state.prev_xi : xi;
  Vec w = state.w.values;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta * (2.0 * xi[i] - prev[i]);
  StepState next;
  next.w = JointPoint(state.w.partition, std::move(w));
  next.prev_xi = xi;
  next.step_index = state.step_index + 1;
  return next;
}

Trajectory simulate(const Game& game, const Vec& w0, const AlgorithmSpec& spec,
                    const StoppingRule& stopping) {
  spec.validate();
  stopping.validate();
  game.check_point(w0);

  Trajectory t;
  t.spec = spec;
  t.stopping = stopping;

  const int n = game.players();
  Vec w = w0;
  std::optional<Vec> prev_xi;  // omd memory
  std::deque<double> window;   // trailing per-step mean |l_i|

  for (int k = 0;; ++k) {
    Vec losses(static_cast<std::size_t>(n));
    Vec xi(static_cast<std::size_t>(game.dim()));
    try {
      for (int i = 0; i < n; ++i)
        losses[static_cast<std::size_t>(i)] = game.losses[static_cast<std::size_t>(i)](w);
      for (int i = 0; i < n; ++i) {
        const Vec gi = game.grads[static_cast<std::size_t>(i)](w);
        const int off = game.partition.offset(i);
        for (std::size_t j = 0; j < gi.size(); ++j) xi[static_cast<std::size_t>(off) + j] = gi[j];
      }
    } catch (const std::exception& e) {
      throw SimulationError("evaluator failed at step " + std::to_string(k) + ": " + e.what(),
                            std::move(t));
    }
    const double xi_norm = la::nrm2(xi);
    t.states.push_back({k, w, losses, 0.5 * xi_norm * xi_norm, xi_norm});

    if (k == stopping.max_steps) {
      t.verdict = Verdict::exhausted;
      t.verdict_step = stopping.max_steps;
      break;
    }

    if (!all_finite(w) || !all_finite(losses) || la::nrm2(w) > stopping.divergence_norm) {
      t.verdict = Verdict::diverged;
      t.verdict_step = k;
      break;
    }

    double mean_abs = 0.0;
    for (double li : losses) mean_abs += std::abs(li);
    mean_abs /= n;
    window.push_back(mean_abs);
    if (static_cast<int>(window.size()) > stopping.loss_window) window.pop_front();
    if (static_cast<int>(window.size()) == stopping.loss_window) {
      double acc = 0.0;
      for (double v : window) acc += v;
      if (acc / stopping.loss_window < stopping.loss_threshold) {
        t.verdict = Verdict::converged;
        t.verdict_step = k;
        break;
      }
    }

    if (spec.kind == AlgorithmKind::omd) {
      const Vec& prev = prev_xi ? *prev_xi : xi;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= spec.eta * (2.0 * xi[i] - prev[i]);
      prev_xi = xi;
    } else {
      try {
        const Vec dir = update_direction(bundle(game, w), spec);
        la::axpy(-spec.eta, dir, w);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        throw SimulationError("evaluator failed at step " + std::to_string(k) + ": " + e.what(),
                              std::move(t));
      }
    }
  }
  return t;
}

}  // namespace gamedyn
