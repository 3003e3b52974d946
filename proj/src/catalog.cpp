#include "gamedyn/catalog.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace gamedyn {
namespace {

/// Declared-parameter lookup: every key must be known, every value finite.
class Params {
 public:
  Params(std::string game, const ParamMap& map) : game_(std::move(game)), map_(map) {}

  double get(const std::string& key, double fallback) {
    seen_.insert(key);
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    if (!std::isfinite(it->second))
      throw ParamError("parameter '" + key + "' of game '" + game_ + "' must be finite");
    return it->second;
  }

  double positive(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (v <= 0.0)
      throw ParamError("parameter '" + key + "' of game '" + game_ + "' must be positive");
    return v;
  }

  double nonnegative(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (v < 0.0)
      throw ParamError("parameter '" + key + "' of game '" + game_ + "' must be >= 0");
    return v;
  }

  int positive_int(const std::string& key, int fallback) {
    const double v = get(key, fallback);
    if (v < 1.0 || v != std::floor(v))
      throw ParamError("parameter '" + key + "' of game '" + game_ +
                       "' must be a positive integer");
    return static_cast<int>(v);
  }

  /// Call after all get()s: rejects parameters the game does not declare.
  void finish() const {
    for (const auto& [key, value] : map_) {
      (void)value;
      if (!seen_.count(key))
        throw ParamError("unknown parameter '" + key + "' for game '" + game_ + "'");
    }
  }

 private:
  std::string game_;
  const ParamMap& map_;
  std::set<std::string> seen_;
};

Mat mat2(double a00, double a01, double a10, double a11) {
  Mat m(2, 2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return m;
}

/// Two-player 1+1-dimensional quadratic game from 2x2 curvatures.
QuadraticGame two_by_two(Mat Q1, Mat Q2, Vec b1 = {0, 0}, Vec b2 = {0, 0}) {
  QuadraticGame q;
  q.partition = PlayerPartition{1, 1};
  q.Q = {std::move(Q1), std::move(Q2)};
  q.b = {std::move(b1), std::move(b2)};
  q.c = {0.0, 0.0};
  return q;
}

QuadraticGame make_cycle_xy() {
  // l1 = xy, l2 = -xy
  return two_by_two(mat2(0, 1, 1, 0), mat2(0, -1, -1, 0));
}

QuadraticGame make_nash_not_stable() {
  // l1 = l2 = xy
  return two_by_two(mat2(0, 1, 1, 0), mat2(0, 1, 1, 0));
}

QuadraticGame make_ham_not_zerosum(double a, double b) {
  // l1 = x(y-b), l2 = -(x-a)y
  return two_by_two(mat2(0, 1, 1, 0), mat2(0, -1, -1, 0), {-b, 0}, {0, a});
}

QuadraticGame make_zerosum_not_ham() {
  // l1 = x^2 + y^2 = -l2
  return two_by_two(mat2(2, 0, 0, 2), mat2(-2, 0, 0, -2));
}

QuadraticGame make_consensus_trap(double kappa) {
  // l1 = l2 = -kappa/2 (x^2 + y^2)
  return two_by_two(mat2(-kappa, 0, 0, -kappa), mat2(-kappa, 0, 0, -kappa));
}

QuadraticGame make_weak_repellor(double eps) {
  // l1 = -eps/2 x^2 - xy, l2 = -eps/2 y^2 + xy
  return two_by_two(mat2(-eps, -1, -1, 0), mat2(0, 1, 1, -eps));
}

QuadraticGame make_weak_attractor_strong_rotation() {
  // l1 = 1/2 x^2 + 10xy, l2 = 1/2 y^2 - 10xy
  return two_by_two(mat2(1, 10, 10, 0), mat2(0, -10, -10, 1));
}

QuadraticGame make_bimatrix_zerosum(int d1) {
  // l1 = w1^T w2 = -l2
  const int d = 2 * d1;
  QuadraticGame q;
  q.partition = PlayerPartition{d1, d1};
  Mat Q1(d, d), Q2(d, d);
  for (int k = 0; k < d1; ++k) {
    Q1(k, d1 + k) = 1.0;
    Q1(d1 + k, k) = 1.0;
    Q2(k, d1 + k) = -1.0;
    Q2(d1 + k, k) = -1.0;
  }
  q.Q = {std::move(Q1), std::move(Q2)};
  q.b = {Vec(d, 0.0), Vec(d, 0.0)};
  q.c = {0.0, 0.0};
  return q;
}

QuadraticGame make_four_player(double eps) {
  // l_i = eps/2 w_i^2 + sum_j A_ij w_i w_j with the cyclic tournament A
  static const int A4[4][4] = {
      {0, 1, 1, 1}, {-1, 0, 1, 1}, {-1, -1, 0, 1}, {-1, -1, -1, 0}};
  QuadraticGame q;
  q.partition = PlayerPartition{1, 1, 1, 1};
  for (int i = 0; i < 4; ++i) {
    Mat Qi(4, 4);
    Qi(i, i) = eps;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      Qi(i, j) = A4[i][j];
      Qi(j, i) = A4[i][j];
    }
    q.Q.push_back(std::move(Qi));
    q.b.emplace_back(4, 0.0);
    q.c.push_back(0.0);
  }
  return q;
}

QuadraticGame make_typed_example() {
  // l1 = xy, l2 = 2xy
  return two_by_two(mat2(0, 1, 1, 0), mat2(0, 2, 2, 0));
}

Game make_stable_not_nash() {
  // l1 = x^3 + xy, l2 = -xy: the one non-quadratic catalog entry
  Game g;
  g.name = "stable_not_nash";
  g.partition = PlayerPartition{1, 1};
  g.losses = {[](const Vec& w) { return w[0] * w[0] * w[0] + w[0] * w[1]; },
              [](const Vec& w) { return -w[0] * w[1]; }};
  g.grads = {[](const Vec& w) { return Vec{3.0 * w[0] * w[0] + w[1]}; },
             [](const Vec& w) { return Vec{-w[0]}; }};
  g.jacobian_fn = [](const Vec& w) { return mat2(6.0 * w[0], 1, -1, 0); };
  return g;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "cycle_xy",       "stable_not_nash",
      "nash_not_stable", "ham_not_zerosum",
      "zerosum_not_ham", "consensus_trap",
      "weak_repellor",   "weak_attractor_strong_rotation",
      "bimatrix_zerosum", "four_player",
      "typed_example"};
  return names;
}

std::optional<QuadraticGame> builtin_quadratic(const std::string& name, const ParamMap& params) {
  Params p(name, params);
  std::optional<QuadraticGame> q;
  if (name == "cycle_xy") {
    q = make_cycle_xy();
  } else if (name == "stable_not_nash") {
    q = std::nullopt;
  } else if (name == "nash_not_stable") {
    q = make_nash_not_stable();
  } else if (name == "ham_not_zerosum") {
    const double a = p.get("a", 1.0);
    const double b = p.get("b", 1.0);
    q = make_ham_not_zerosum(a, b);
  } else if (name == "zerosum_not_ham") {
    q = make_zerosum_not_ham();
  } else if (name == "consensus_trap") {
    q = make_consensus_trap(p.positive("kappa", 10.0));
  } else if (name == "weak_repellor") {
    q = make_weak_repellor(p.positive("eps", 0.1));
  } else if (name == "weak_attractor_strong_rotation") {
    q = make_weak_attractor_strong_rotation();
  } else if (name == "bimatrix_zerosum") {
    q = make_bimatrix_zerosum(p.positive_int("d1", 1));
  } else if (name == "four_player") {
    q = make_four_player(p.nonnegative("eps", 0.01));
  } else if (name == "typed_example") {
    q = make_typed_example();
  } else {
    std::ostringstream msg;
    msg << "unknown game '" << name << "'; valid names:";
    for (const auto& n : builtin_names()) msg << " " << n;
    throw CatalogError(msg.str());
  }
  p.finish();
  return q;
}

Game builtin_game(const std::string& name, const ParamMap& params) {
  auto q = builtin_quadratic(name, params);
  if (!q) return make_stable_not_nash();
  return q->to_game(name);
}

Vec default_start(const Game& game) {
  return Vec(static_cast<std::size_t>(game.dim()), 1.0);
}

}  // namespace gamedyn
