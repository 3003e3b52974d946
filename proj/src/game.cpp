#include "gamedyn/game.hpp"

#include <cmath>

namespace gamedyn {

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

int PlayerPartition::total() const {
  int d = 0;
  for (int di : dims) d += di;
  return d;
}

int PlayerPartition::offset(int player) const {
  int off = 0;
  for (int i = 0; i < player; ++i) off += dims[static_cast<std::size_t>(i)];
  return off;
}

int PlayerPartition::player_of(int coord) const {
  int off = 0;
  for (int i = 0; i < players(); ++i) {
    off += dims[static_cast<std::size_t>(i)];
    if (coord < off) return i;
  }
  throw DimensionError("coordinate " + std::to_string(coord) + " outside partition of total " +
                       std::to_string(total()));
}

void PlayerPartition::validate() const {
  if (dims.empty()) throw DimensionError("partition needs at least one player");
  for (int di : dims)
    if (di < 1) throw DimensionError("player dimensions must be >= 1");
}

JointPoint::JointPoint(PlayerPartition p, Vec v) : partition(std::move(p)), values(std::move(v)) {
  partition.validate();
  if (static_cast<int>(values.size()) != partition.total())
    throw DimensionError("point length " + std::to_string(values.size()) +
                         " does not match partition total " + std::to_string(partition.total()));
  if (!all_finite(values)) throw EvalError("joint point has a non-finite coordinate");
}

void Game::check_point(const Vec& w) const {
  if (static_cast<int>(w.size()) != dim())
    throw DimensionError("game '" + name + "' expects dimension " + std::to_string(dim()) +
                         ", got " + std::to_string(w.size()));
}

void QuadraticGame::validate() const {
  partition.validate();
  const int n = partition.players();
  const int d = partition.total();
  if (static_cast<int>(Q.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n)
    throw DimensionError("quadratic game needs one Q, b, c per player");
  for (int i = 0; i < n; ++i) {
    const Mat& Qi = Q[static_cast<std::size_t>(i)];
    if (Qi.rows != d || Qi.cols != d)
      throw DimensionError("Q_" + std::to_string(i) + " must be " + std::to_string(d) + "x" +
                           std::to_string(d));
    if (static_cast<int>(b[static_cast<std::size_t>(i)].size()) != d)
      throw DimensionError("b_" + std::to_string(i) + " must have length " + std::to_string(d));
    for (int r = 0; r < d; ++r)
      for (int col = r + 1; col < d; ++col)
        if (Qi(r, col) != Qi(col, r))
          throw ParamError("Q_" + std::to_string(i) + " is not exactly symmetric at (" +
                           std::to_string(r) + "," + std::to_string(col) + ")");
  }
}

Game QuadraticGame::to_game(std::string name) const {
  validate();
  const int n = partition.players();
  const int d = partition.total();

  Mat J(d, d);
  for (int i = 0; i < n; ++i) {
    const Mat& Qi = Q[static_cast<std::size_t>(i)];
    const int off = partition.offset(i);
    for (int r = 0; r < partition.dim_of(i); ++r)
      for (int col = 0; col < d; ++col) J(off + r, col) = Qi(off + r, col);
  }

  Game g;
  g.name = std::move(name);
  g.partition = partition;
  for (int i = 0; i < n; ++i) {
    const Mat Qi = Q[static_cast<std::size_t>(i)];
    const Vec bi = b[static_cast<std::size_t>(i)];
    const double ci = c[static_cast<std::size_t>(i)];
    g.losses.push_back([Qi, bi, ci](const Vec& w) {
      Vec Qw = la::matvec(Qi, w);
      return 0.5 * la::dot(w, Qw) + la::dot(bi, w) + ci;
    });
    const int off = partition.offset(i);
    const int di = partition.dim_of(i);
    g.grads.push_back([Qi, bi, off, di](const Vec& w) {
      Vec Qw = la::matvec(Qi, w);
      Vec gi(static_cast<std::size_t>(di));
      for (int k = 0; k < di; ++k)
        gi[static_cast<std::size_t>(k)] =
            Qw[static_cast<std::size_t>(off + k)] + bi[static_cast<std::size_t>(off + k)];
      return gi;
    });
  }
  g.jacobian_fn = [J](const Vec&) { return J; };
  return g;
}

Game quadratic_game(const QuadraticGame& q, std::string name) {
  return q.to_game(std::move(name));
}

Game quadratic_game(std::vector<Mat> Q, std::vector<Vec> b, Vec c, PlayerPartition partition,
                    std::string name) {
  QuadraticGame q{std::move(partition), std::move(Q), std::move(b), std::move(c)};
  return q.to_game(std::move(name));
}

Vec eval_losses(const Game& game, const Vec& w) {
  game.check_point(w);
  Vec out(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) {
    const double li = game.losses[static_cast<std::size_t>(i)](w);
    if (!std::isfinite(li))
      throw EvalError("loss of player " + std::to_string(i) + " is non-finite in game '" +
                          game.name + "'",
                      i);
    out[static_cast<std::size_t>(i)] = li;
  }
  return out;
}

}  // namespace gamedyn
