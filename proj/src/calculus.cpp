#include "gamedyn/calculus.hpp"

#include <cmath>

namespace gamedyn {

Vec simultaneous_gradient(const Game& game, const Vec& w) {
  game.check_point(w);
  Vec xi(static_cast<std::size_t>(game.dim()));
  for (int i = 0; i < game.players(); ++i) {
    const Vec gi = game.grads[static_cast<std::size_t>(i)](w);
    const int off = game.partition.offset(i);
    const int di = game.partition.dim_of(i);
    if (static_cast<int>(gi.size()) != di)
      throw DimensionError("gradient of player " + std::to_string(i) + " has length " +
                           std::to_string(gi.size()) + ", expected " + std::to_string(di));
    for (int k = 0; k < di; ++k) {
      if (!std::isfinite(gi[static_cast<std::size_t>(k)]))
        throw EvalError("gradient of player " + std::to_string(i) + " is non-finite in game '" +
                            game.name + "'",
                        i);
      xi[static_cast<std::size_t>(off + k)] = gi[static_cast<std::size_t>(k)];
    }
  }
  return xi;
}

Mat jacobian(const Game& game, const Vec& w) {
  game.check_point(w);
  if (game.has_analytic_jacobian()) {
    Mat J = game.jacobian_fn(w);
    if (J.rows != game.dim() || J.cols != game.dim())
      throw DimensionError("analytic Jacobian of game '" + game.name + "' has wrong shape");
    return J;
  }
  const int d = game.dim();
  const Vec xi0 = simultaneous_gradient(game, w);
  Mat J(d, d);
  Vec wh = w;
  for (int beta = 0; beta < d; ++beta) {
    const double h = 1e-6 * std::max(1.0, std::abs(w[static_cast<std::size_t>(beta)]));
    wh[static_cast<std::size_t>(beta)] = w[static_cast<std::size_t>(beta)] + h;
    const Vec xih = simultaneous_gradient(game, wh);
    wh[static_cast<std::size_t>(beta)] = w[static_cast<std::size_t>(beta)];
    for (int alpha = 0; alpha < d; ++alpha)
      J(alpha, beta) =
          (xih[static_cast<std::size_t>(alpha)] - xi0[static_cast<std::size_t>(alpha)]) / h;
  }
  return J;
}

std::pair<Mat, Mat> helmholtz(const Mat& J) {
  if (J.rows != J.cols) throw DimensionError("helmholtz needs a square matrix");
  const int d = J.rows;
  Mat S(d, d), A(d, d);
  for (int i = 0; i < d; ++i) {
    S(i, i) = J(i, i);
    for (int j = i + 1; j < d; ++j) {
      const double s = 0.5 * (J(i, j) + J(j, i));
      const double a = 0.5 * (J(i, j) - J(j, i));
      S(i, j) = s;
      S(j, i) = s;
      A(i, j) = a;
      A(j, i) = -a;
    }
  }
  return {std::move(S), std::move(A)};
}

DecompositionBundle bundle(const Game& game, const Vec& w) {
  DecompositionBundle b;
  b.w = JointPoint(game.partition, w);
  b.xi = simultaneous_gradient(game, w);
  b.J = jacobian(game, w);
  auto [S, A] = helmholtz(b.J);
  b.S = std::move(S);
  b.A = std::move(A);
  b.H = 0.5 * la::dot(b.xi, b.xi);
  b.gradH = la::matvec_t(b.J, b.xi);
  b.adj = la::matvec_t(b.A, b.xi);
  return b;
}

DecompositionBundle bundle(const Game& game, const JointPoint& w) {
  if (!(w.partition == game.partition))
    throw DimensionError("point partition does not match game '" + game.name + "'");
  return bundle(game, w.values);
}

Vec fd_gradH(const Game& game, const Vec& w, double h) {
  if (h <= 0.0) throw ParamError("fd_gradH step h must be positive");
  game.check_point(w);
  const auto H_at = [&](const Vec& p) {
    const Vec xi = simultaneous_gradient(game, p);
    return 0.5 * la::dot(xi, xi);
  };
  const int d = game.dim();
  Vec g(static_cast<std::size_t>(d));
  Vec wh = w;
  for (int i = 0; i < d; ++i) {
    const double hi = h * std::max(1.0, std::abs(w[static_cast<std::size_t>(i)]));
    wh[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + hi;
    const double Hp = H_at(wh);
    wh[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - hi;
    const double Hm = H_at(wh);
    wh[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
    g[static_cast<std::size_t>(i)] = (Hp - Hm) / (2.0 * hi);
  }
  return g;
}

}  // namespace gamedyn
