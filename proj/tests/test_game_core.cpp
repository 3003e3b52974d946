#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gamedyn/catalog.hpp"
#include "gamedyn/errors.hpp"
#include "gamedyn/game.hpp"
#include "gamedyn/rng.hpp"

using namespace gamedyn;

namespace {

/// Central-difference gradient of player i's loss with respect to its own
/// block, the independent oracle for Game::grads.
Vec fd_player_grad(const Game& g, const Vec& w, int player, double h0 = 1e-5) {
  const int off = g.partition.offset(player);
  const int di = g.partition.dim_of(player);
  Vec grad(static_cast<std::size_t>(di));
  for (int k = 0; k < di; ++k) {
    const int j = off + k;
    const double h = h0 * std::max(1.0, std::abs(w[static_cast<std::size_t>(j)]));
    Vec wp = w, wm = w;
    wp[static_cast<std::size_t>(j)] += h;
    wm[static_cast<std::size_t>(j)] -= h;
    grad[static_cast<std::size_t>(k)] =
        (g.losses[static_cast<std::size_t>(player)](wp) - g.losses[static_cast<std::size_t>(player)](wm)) /
        (2.0 * h);
  }
  return grad;
}

std::vector<std::pair<std::string, ParamMap>> catalog_cases() {
  std::vector<std::pair<std::string, ParamMap>> cases;
  for (const auto& name : builtin_names()) cases.emplace_back(name, ParamMap{});
  cases.emplace_back("four_player", ParamMap{{"eps", 0.0}});
  cases.emplace_back("bimatrix_zerosum", ParamMap{{"d1", 3.0}});
  return cases;
}

}  // namespace

TEST_CASE("partition arithmetic") {
  const PlayerPartition p{1, 2, 3};
  CHECK(p.players() == 3);
  CHECK(p.total() == 6);
  CHECK(p.offset(0) == 0);
  CHECK(p.offset(1) == 1);
  CHECK(p.offset(2) == 3);
  CHECK(p.dim_of(1) == 2);
  CHECK(p.player_of(0) == 0);
  CHECK(p.player_of(1) == 1);
  CHECK(p.player_of(2) == 1);
  CHECK(p.player_of(3) == 2);
  CHECK(p.player_of(5) == 2);
  CHECK_THROWS_AS(p.player_of(6), DimensionError);

  CHECK_THROWS_AS(PlayerPartition{}.validate(), DimensionError);
  CHECK_THROWS_AS((PlayerPartition{1, 0}).validate(), DimensionError);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("joint points validate length and finiteness") {
  const PlayerPartition p{1, 1};
  const JointPoint ok(p, {1.0, -2.0});
  CHECK(ok.values[0] == 1.0);
  CHECK_THROWS_AS(JointPoint(p, {1.0}), DimensionError);
  CHECK_THROWS_AS(JointPoint(p, {1.0, std::numeric_limits<double>::quiet_NaN()}), EvalError);
  CHECK_THROWS_AS(JointPoint(p, {1.0, std::numeric_limits<double>::infinity()}), EvalError);
}

TEST_CASE("catalog lists eleven games and builds them all") {
  CHECK(builtin_names().size() == 11);
  for (const auto& name : builtin_names()) {
    const Game g = builtin_game(name);
    CHECK(g.name == name);
    CHECK(g.players() >= 2);
    CHECK(g.dim() == (name == "four_player" ? 4 : 2));
    CHECK(static_cast<int>(g.losses.size()) == g.players());
    CHECK(static_cast<int>(g.grads.size()) == g.players());
    CHECK(g.has_analytic_jacobian());
    CHECK(default_start(g) == Vec(static_cast<std::size_t>(g.dim()), 1.0));
  }
  const Game big = builtin_game("bimatrix_zerosum", {{"d1", 3.0}});
  CHECK(big.dim() == 6);
  CHECK(big.partition == (PlayerPartition{3, 3}));
}

TEST_CASE("unknown names and parameters are rejected with context") {
  CHECK_THROWS_WITH_AS(builtin_game("atari"), doctest::Contains("valid names"), CatalogError);
  CHECK_THROWS_WITH_AS(builtin_game("atari"), doctest::Contains("cycle_xy"), CatalogError);
  CHECK_THROWS_WITH_AS(builtin_game("cycle_xy", {{"zeta", 1.0}}), doctest::Contains("zeta"),
                       ParamError);
  CHECK_THROWS_AS(builtin_game("consensus_trap", {{"kappa", 0.0}}), ParamError);
  CHECK_THROWS_AS(builtin_game("weak_repellor", {{"eps", -0.1}}), ParamError);
  CHECK_THROWS_AS(builtin_game("four_player", {{"eps", -1.0}}), ParamError);
  CHECK_THROWS_WITH_AS(builtin_game("bimatrix_zerosum", {{"d1", 2.5}}),
                       doctest::Contains("positive integer"), ParamError);
  CHECK_THROWS_AS(builtin_game("bimatrix_zerosum", {{"d1", 0.0}}), ParamError);
  CHECK_THROWS_WITH_AS(
      builtin_game("ham_not_zerosum", {{"a", std::numeric_limits<double>::infinity()}}),
      doctest::Contains("finite"), ParamError);
}

TEST_CASE("frozen losses and gradients at hand-checked points") {
  auto losses_at = [](const std::string& name, const Vec& w, const ParamMap& params = {}) {
    return eval_losses(builtin_game(name, params), w);
  };

  const Vec l_cycle = losses_at("cycle_xy", {1.0, 2.0});
  CHECK(l_cycle[0] == 2.0);
  CHECK(l_cycle[1] == -2.0);

  const Vec l_zs = losses_at("zerosum_not_ham", {1.0, 2.0});
  CHECK(l_zs[0] == 5.0);
  CHECK(l_zs[1] == -5.0);

  const Vec l_fp = losses_at("four_player", {1.0, 1.0, 1.0, 1.0});
  CHECK(l_fp[0] == doctest::Approx(3.005));
  CHECK(l_fp[1] == doctest::Approx(1.005));
  CHECK(l_fp[2] == doctest::Approx(-0.995));
  CHECK(l_fp[3] == doctest::Approx(-2.995));

  const Vec l_fp0 = losses_at("four_player", {1.0, 1.0, 1.0, 1.0}, {{"eps", 0.0}});
  CHECK(l_fp0[0] == 3.0);
  CHECK(l_fp0[3] == -3.0);

  const Game wa = builtin_game("weak_attractor_strong_rotation");
  const Vec l_wa = eval_losses(wa, {1.0, 1.0});
  CHECK(l_wa[0] == doctest::Approx(10.5));
  CHECK(l_wa[1] == doctest::Approx(-9.5));
  CHECK(wa.grads[0]({1.0, 1.0})[0] == doctest::Approx(11.0));
  CHECK(wa.grads[1]({1.0, 1.0})[0] == doctest::Approx(-9.0));

  const Vec l_ham = losses_at("ham_not_zerosum", {1.0, 2.0});
  CHECK(l_ham[0] == doctest::Approx(1.0));
  CHECK(l_ham[1] == doctest::Approx(0.0));

  const Game snn = builtin_game("stable_not_nash");
  const Vec l_snn = eval_losses(snn, {2.0, 3.0});
  CHECK(l_snn[0] == 14.0);
  CHECK(l_snn[1] == -6.0);
  CHECK(snn.grads[0]({2.0, 3.0})[0] == 15.0);
  CHECK(snn.grads[1]({2.0, 3.0})[0] == -2.0);
  const Mat J_snn = snn.jacobian_fn({2.0, 3.0});
  CHECK(J_snn(0, 0) == 12.0);
  CHECK(J_snn(0, 1) == 1.0);
  CHECK(J_snn(1, 0) == -1.0);
  CHECK(J_snn(1, 1) == 0.0);

  CHECK(losses_at("consensus_trap", {1.0, 2.0})[0] == doctest::Approx(-25.0));
  CHECK(losses_at("weak_repellor", {1.0, 2.0})[0] == doctest::Approx(-2.05));
  CHECK(losses_at("weak_repellor", {1.0, 2.0})[1] == doctest::Approx(1.8));
  CHECK(losses_at("nash_not_stable", {1.0, 2.0}) == Vec{2.0, 2.0});
  CHECK(losses_at("typed_example", {1.0, 2.0}) == Vec{2.0, 4.0});

  const Vec l_bm = losses_at("bimatrix_zerosum", {1.0, 2.0, 3.0, 4.0}, {{"d1", 2.0}});
  CHECK(l_bm[0] == 11.0);
  CHECK(l_bm[1] == -11.0);
}

TEST_CASE("quadratic builtins expose the constant Jacobian built from Q rows") {
  const Game wa = builtin_game("weak_attractor_strong_rotation");
  const Mat J = wa.jacobian_fn({0.3, -0.7});
  CHECK(J(0, 0) == 1.0);
  CHECK(J(0, 1) == 10.0);
  CHECK(J(1, 0) == -10.0);
  CHECK(J(1, 1) == 1.0);

  const Game fp = builtin_game("four_player");
  const Mat Jf = fp.jacobian_fn({1.0, 2.0, 3.0, 4.0});
  for (int i = 0; i < 4; ++i) CHECK(Jf(i, i) == 0.01);
  CHECK(Jf(0, 1) == 1.0);
  CHECK(Jf(1, 0) == -1.0);
  CHECK(Jf(2, 3) == 1.0);
  CHECK(Jf(3, 2) == -1.0);
}

TEST_CASE("zero-sum builtins sum to zero at seeded points") {
  rng::Engine eng(21);
  for (const auto& [name, params] :
       std::vector<std::pair<std::string, ParamMap>>{{"cycle_xy", {}},
                                                     {"zerosum_not_ham", {}},
                                                     {"bimatrix_zerosum", {}},
                                                     {"bimatrix_zerosum", {{"d1", 3.0}}}}) {
    const Game g = builtin_game(name, params);
    for (int t = 0; t < 50; ++t) {
      const Vec w = rng::gaussian_vec(eng, g.dim());
      const Vec l = eval_losses(g, w);
      double sum = 0.0, scale = 1.0;
      for (double li : l) {
        sum += li;
        scale = std::max(scale, std::abs(li));
      }
      CHECK(std::abs(sum) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("analytic gradients match central differences on the whole catalog") {
  rng::Engine eng(22);
  for (const auto& [name, params] : catalog_cases()) {
    const Game g = builtin_game(name, params);
    for (int t = 0; t < 100; ++t) {
      const Vec w = rng::gaussian_vec(eng, g.dim());
      for (int i = 0; i < g.players(); ++i) {
        const Vec got = g.grads[static_cast<std::size_t>(i)](w);
        const Vec want = fd_player_grad(g, w, i);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k)
          CHECK(std::abs(got[k] - want[k]) <= 1e-5 * std::max(1.0, std::abs(want[k])));
      }
    }
  }
}

TEST_CASE("builtin_quadratic agrees exactly with builtin_game") {
  rng::Engine eng(23);
  for (const auto& name : builtin_names()) {
    const auto q = builtin_quadratic(name);
    if (name == "stable_not_nash") {
      CHECK(!q.has_value());
      continue;
    }
    REQUIRE(q.has_value());
    const Game from_q = q->to_game(name);
    const Game direct = builtin_game(name);
    for (int t = 0; t < 10; ++t) {
      const Vec w = rng::gaussian_vec(eng, direct.dim());
      CHECK(eval_losses(from_q, w) == eval_losses(direct, w));
      for (int i = 0; i < direct.players(); ++i)
        CHECK(from_q.grads[static_cast<std::size_t>(i)](w) ==
              direct.grads[static_cast<std::size_t>(i)](w));
    }
  }
}

TEST_CASE("quadratic game validation") {
  const PlayerPartition p{1, 1};
  Mat sym(2, 2);
  sym(0, 1) = sym(1, 0) = 1.0;
  Mat asym(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 2.0;

  QuadraticGame bad{p, {sym, asym}, {{0, 0}, {0, 0}}, {0, 0}};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("not exactly symmetric"), ParamError);

  QuadraticGame wrong_shape{p, {sym, Mat(3, 3)}, {{0, 0}, {0, 0}}, {0, 0}};
  CHECK_THROWS_AS(wrong_shape.validate(), DimensionError);

  QuadraticGame missing{p, {sym}, {{0, 0}}, {0}};
  CHECK_THROWS_AS(missing.validate(), DimensionError);

  QuadraticGame bad_b{p, {sym, sym}, {{0, 0}, {0, 0, 0}}, {0, 0}};
  CHECK_THROWS_AS(bad_b.validate(), DimensionError);

  QuadraticGame good{p, {sym, sym}, {{0, 0}, {0, 0}}, {0.5, -0.5}};
  CHECK_NOTHROW(good.validate());
  const Game g = quadratic_game(good, "pair");
  CHECK(g.name == "pair");
  CHECK(eval_losses(g, {1.0, 1.0}) == Vec{1.5, 0.5});
}

TEST_CASE("eval_losses reports the offending player") {
  Game g;
  g.name = "half_broken";
  g.partition = PlayerPartition{1, 1};
  g.losses = {[](const Vec& w) { return w[0]; },
              [](const Vec& w) { return std::log(w[1]); }};  // NaN for w[1] < 0
  g.grads = {[](const Vec&) { return Vec{1.0}; },
             [](const Vec& w) { return Vec{1.0 / w[1]}; }};
  try {
    eval_losses(g, {1.0, -1.0});
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.player == 1);
    CHECK(std::string(e.what()).find("player 1") != std::string::npos);
  }
  CHECK_THROWS_AS(eval_losses(g, {1.0}), DimensionError);
}
