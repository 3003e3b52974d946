#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamedyn/errors.hpp"
#include "gamedyn/la.hpp"

namespace gamedyn {

/// Per-player parameter dimensions (d_1, ..., d_n) and the derived offsets
/// tiling [0, d).
struct PlayerPartition {
  std::vector<int> dims;

  PlayerPartition() = default;
  PlayerPartition(std::initializer_list<int> d) : dims(d) {}
  explicit PlayerPartition(std::vector<int> d) : dims(std::move(d)) {}

  int players() const { return static_cast<int>(dims.size()); }
  int total() const;
  int offset(int player) const;
  int dim_of(int player) const { return dims[static_cast<std::size_t>(player)]; }
  /// Player owning flat coordinate j.
  int player_of(int coord) const;
  void validate() const;  // n >= 1, every d_i >= 1
  bool operator==(const PlayerPartition& o) const { return dims == o.dims; }
};

/// A point w in R^d together with its player partition.
struct JointPoint {
  PlayerPartition partition;
  Vec values;

  JointPoint() = default;
  // Validates length against the partition and that every entry is finite.
  JointPoint(PlayerPartition p, Vec v);
};

using LossFn = std::function<double(const Vec&)>;
using PlayerGradFn = std::function<Vec(const Vec&)>;  // length d_i result
using JacobianFn = std::function<Mat(const Vec&)>;

/// An n-player differentiable game: per-player losses, exact per-player
/// gradients, and (optionally) an analytic game Jacobian. Immutable after
/// construction; evaluators are pure, so concurrent use is safe.
struct Game {
  std::string name;
  PlayerPartition partition;
  std::vector<LossFn> losses;
  std::vector<PlayerGradFn> grads;
  JacobianFn jacobian_fn;  // empty -> calculus uses forward differences

  int players() const { return partition.players(); }
  int dim() const { return partition.total(); }
  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_fn); }
  /// Throws DimensionError unless w has length d.
  void check_point(const Vec& w) const;
};

/// Quadratic game data: l_i(w) = 1/2 w^T Q_i w + b_i^T w + c_i with each Q_i
/// stored exactly symmetric. The induced Jacobian is constant in w, with the
/// rows of player i's block taken from Q_i.
struct QuadraticGame {
  PlayerPartition partition;
  std::vector<Mat> Q;
  std::vector<Vec> b;
  Vec c;

  void validate() const;  // shapes and exact symmetry
  Game to_game(std::string name = "quadratic") const;
};

/// Validating constructors for quadratic games.
Game quadratic_game(const QuadraticGame& q, std::string name = "quadratic");
Game quadratic_game(std::vector<Mat> Q, std::vector<Vec> b, Vec c,
                    PlayerPartition partition, std::string name = "quadratic");

/// (l_1(w), ..., l_n(w)); throws EvalError with the player index on a
/// non-finite loss.
Vec eval_losses(const Game& game, const Vec& w);

bool all_finite(const Vec& v);

}  // namespace gamedyn
