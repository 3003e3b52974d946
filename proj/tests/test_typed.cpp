#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gamedyn/calculus.hpp"
#include "gamedyn/catalog.hpp"
#include "gamedyn/errors.hpp"
#include "gamedyn/rng.hpp"
#include "gamedyn/typed.hpp"

using namespace gamedyn;

namespace {

Mat matmul(const Mat& a, const Mat& b) {
  Mat out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

/// Two-player quadratic game with prescribed cross blocks M (player 1) and
/// N (player 2), zero own-curvature.
QuadraticGame cross_game(const Mat& M, const Mat& N) {
  const int d1 = M.rows, d2 = M.cols;
  const int d = d1 + d2;
  Mat Q1(d, d), Q2(d, d);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      Q1(i, d1 + j) = M(i, j);
      Q1(d1 + j, i) = M(i, j);
      Q2(d1 + j, i) = N(j, i);
      Q2(i, d1 + j) = N(j, i);
    }
  QuadraticGame q;
  q.partition = PlayerPartition{d1, d2};
  q.Q = {std::move(Q1), std::move(Q2)};
  q.b = {Vec(static_cast<std::size_t>(d), 0.0), Vec(static_cast<std::size_t>(d), 0.0)};
  q.c = {0.0, 0.0};
  return q;
}

Mat scalar_cross(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("rescaled potential games have a vanishing two-form") {
  const auto q = builtin_quadratic("typed_example");
  REQUIRE(q.has_value());
  const TypedDecomposition t = typed_two_form(*q);
  CHECK(t.A12(0, 0) == 1.0);
  CHECK(t.C21(0, 0) == 2.0);
  CHECK(t.omega_tau(0, 0) == 0.0);

  rng::Engine eng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec w = rng::gaussian_vec(eng, 2);
    const Vec adj = typed_adjustment(*q, w);
    CHECK(std::abs(adj[0]) <= 1e-12);
    CHECK(std::abs(adj[1]) <= 1e-12);
    // the untyped adjustment does not vanish: (x, -y/2)
    const Vec untyped = bundle(q->to_game(), w).adj;
    CHECK(untyped[0] == doctest::Approx(w[0]));
    CHECK(untyped[1] == doctest::Approx(-0.5 * w[1]));
  }
}

TEST_CASE("pure rotation keeps its adjustment under the typed correction") {
  const auto q = builtin_quadratic("cycle_xy");
  REQUIRE(q.has_value());
  const TypedDecomposition t = typed_two_form(*q);
  CHECK(t.omega_tau(0, 0) == 2.0);

  const Mat omega = omega_matrix(t);
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(1, 0) == -1.0);
  CHECK(omega(0, 0) == 0.0);

  rng::Engine eng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec w = rng::gaussian_vec(eng, 2);
    const Vec typed = typed_adjustment(*q, w);
    const Vec untyped = bundle(q->to_game(), w).adj;
    // omega coincides with A here, and Omega^T xi = w exactly
    CHECK(typed[0] == doctest::Approx(w[0]));
    CHECK(typed[1] == doctest::Approx(w[1]));
    CHECK(typed[0] == doctest::Approx(untyped[0]));
    CHECK(typed[1] == doctest::Approx(untyped[1]));
  }
}

TEST_CASE("equal cross blocks cancel") {
  const auto q = builtin_quadratic("nash_not_stable");
  REQUIRE(q.has_value());
  CHECK(typed_two_form(*q).omega_tau(0, 0) == 0.0);
  CHECK(typed_adjustment(*q, {1.3, -0.4}) == Vec{0.0, 0.0});
}

TEST_CASE("scalar cross blocks reduce the two-form to a sign difference") {
  rng::Engine eng(63);
  for (int trial = 0; trial < 100; ++trial) {
    double a = rng::gaussian(eng), c = rng::gaussian(eng);
    if (a == 0.0 || c == 0.0) continue;
    const QuadraticGame q = cross_game(scalar_cross(a), scalar_cross(c));
    const TypedDecomposition t = typed_two_form(q);
    const double want = (a > 0.0 ? 1.0 : -1.0) - (c > 0.0 ? 1.0 : -1.0);
    CHECK(t.omega_tau(0, 0) == doctest::Approx(want));
  }
}

TEST_CASE("zero cross blocks take the identity convention") {
  const QuadraticGame q = cross_game(scalar_cross(0.0), scalar_cross(1.0));
  const TypedDecomposition t = typed_two_form(q);
  CHECK(t.U_A(0, 0) == 1.0);
  CHECK(t.V_A(0, 0) == 1.0);
  CHECK(t.D_A(0, 0) == 0.0);
  // the zero block contributes the identity polar factor: 1 - sign(1) = 0
  CHECK(t.omega_tau(0, 0) == 0.0);

  const QuadraticGame q2 = cross_game(scalar_cross(-2.0), scalar_cross(0.0));
  CHECK(typed_two_form(q2).omega_tau(0, 0) == doctest::Approx(-2.0));
}

TEST_CASE("cross-block factorizations reconstruct and are orthogonal") {
  rng::Engine eng(64);
  for (int d1 = 1; d1 <= 5; ++d1) {
    for (int d2 = 1; d2 <= 5; ++d2) {
      Mat M(d1, d2), N(d2, d1);
      for (auto& x : M.a) x = rng::gaussian(eng);
      for (auto& x : N.a) x = rng::gaussian(eng);
      const QuadraticGame q = cross_game(M, N);
      const TypedDecomposition t = typed_two_form(q);

      CHECK(max_abs_diff(t.A12, M) == 0.0);
      CHECK(max_abs_diff(t.C21, N) == 0.0);

      const double scale = std::max(1.0, std::max(max_abs(M), max_abs(N)));
      CHECK(max_abs_diff(matmul(matmul(transpose(t.U_A), t.D_A), t.V_A), M) <= 1e-10 * scale);
      CHECK(max_abs_diff(matmul(matmul(transpose(t.U_C), t.D_C), t.V_C), transpose(N)) <=
            1e-10 * scale);

      CHECK(max_abs_diff(matmul(t.U_A, transpose(t.U_A)), identity(d1)) <= 1e-10);
      CHECK(max_abs_diff(matmul(t.V_A, transpose(t.V_A)), identity(d2)) <= 1e-10);
      CHECK(max_abs_diff(matmul(t.U_C, transpose(t.U_C)), identity(d1)) <= 1e-10);
      CHECK(max_abs_diff(matmul(t.V_C, transpose(t.V_C)), identity(d2)) <= 1e-10);

      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) {
          if (i == j) CHECK(t.D_A(i, j) >= 0.0);
          else CHECK(t.D_A(i, j) == 0.0);
        }

      const Mat omega = omega_matrix(t);
      CHECK(omega.rows == d1 + d2);
      for (int i = 0; i < omega.rows; ++i)
        for (int j = 0; j < omega.cols; ++j) CHECK(omega(i, j) == -omega(j, i));
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) CHECK(omega(i, d1 + j) == 0.5 * t.omega_tau(i, j));
    }
  }
}

TEST_CASE("the typed adjustment is the two-form applied to xi") {
  rng::Engine eng(65);
  Mat M(2, 3), N(3, 2);
  for (auto& x : M.a) x = rng::gaussian(eng);
  for (auto& x : N.a) x = rng::gaussian(eng);
  const QuadraticGame q = cross_game(M, N);
  const TypedDecomposition t = typed_two_form(q);
  const Game g = q.to_game();

  for (int trial = 0; trial < 10; ++trial) {
    const Vec w = rng::gaussian_vec(eng, 5);
    const Vec got = typed_adjustment(q, w);
    const Vec want = la::matvec_t(omega_matrix(t), simultaneous_gradient(g, w));
    CHECK(got == want);

    // with zero offsets the whole map is linear in w
    Vec w2 = w;
    la::scal(-2.5, w2);
    const Vec scaled = typed_adjustment(q, w2);
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(scaled[i] + 2.5 * got[i]) <= 1e-12 * std::max(1.0, std::abs(got[i])));
  }
}

TEST_CASE("only two-player games carry the typed correction") {
  const auto four = builtin_quadratic("four_player");
  REQUIRE(four.has_value());
  CHECK_THROWS_AS(typed_two_form(*four), UsageError);
  CHECK_THROWS_AS(typed_adjustment(*four, {1.0, 1.0, 1.0, 1.0}), UsageError);
}
