#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gamedyn/calculus.hpp"
#include "gamedyn/game.hpp"

namespace gamedyn {

/// Classification of a candidate fixed point. The three flags are computed
/// independently from the stated conditions and may overlap.
struct FixedPointReport {
  JointPoint w_star;
  double residual = 0.0;  // |xi(w*)|
  bool is_stable = false;        // min s_eig >= -tol and J invertible
  bool is_unstable = false;      // max s_eig < -tol
  bool is_strict_saddle = false; // some j_eig has real part < -tol
  std::vector<double> s_eigs;                // ascending
  std::vector<std::complex<double>> j_eigs;  // ascending by (re, im)
  double kappa = 0.0;  // max(s_eigs) - min(s_eigs)
  bool j_invertible = false;
  bool converged = true;  // false when find_fixed_point exhausted max_iters
  int iterations = 0;
};

enum class GameClass { potential, hamiltonian, general };

std::string to_string(GameClass c);

struct GameClassReport {
  GameClass game_class = GameClass::general;
  double s_norm = 0.0;  // max Frobenius norm of S over the samples
  double a_norm = 0.0;  // max Frobenius norm of A over the samples
  int sample_points = 0;
};

/// D1-D5 diagnostics for the adjusted direction xi_lambda = xi + lambda*adj.
struct DesiderataReport {
  double lambda = 0.0;
  double d1_residual = 0.0;           // |<xi_l, xi> - |xi|^2|
  bool d2_applicable = false;         // game classified potential
  double d2_residual = 0.0;           // |xi_l - xi|
  bool d3_applicable = false;         // game classified hamiltonian
  double d3_residual = 0.0;           // |<xi_l, gradH> - lambda*|gradH|^2|
  double xi_dot_gradH = 0.0;
  double adj_dot_gradH = 0.0;
  bool d45_satisfied = false;  // lambda * <xi,gradH> * <adj,gradH> >= 0
};

/// Gradient descent on H = 1/2 |xi|^2 along gradH with backtracking line
/// search (halving from eta = 1 until H decreases). Stops when |xi| < tol or
/// after max_iters accepted steps, then classifies the endpoint; exhaustion
/// is reported via converged = false. Throws StagnationError when no step
/// down to eta = 1e-12 decreases H.
FixedPointReport find_fixed_point(const Game& game, const Vec& w0, int max_iters,
                                  double tol);

/// Spectral classification at w_star. tol_eig < 0 selects the default
/// 1e-8 * max(1, spectral scale).
FixedPointReport classify(const Game& game, const Vec& w_star, double tol_eig = -1.0);

/// kappa = max eig - min eig of a symmetric matrix.
double additive_condition_number(const Mat& S);

/// Pointwise Jacobian symmetry test over the samples: potential when every
/// |A|_F <= tol * max(1, |J|_F), hamiltonian when every |S|_F passes the same
/// bound, else general.
GameClassReport classify_game(const Game& game, const std::vector<Vec>& points,
                              double tol = 1e-9);

/// classify_game on `count` points drawn from a seeded unit Gaussian.
GameClassReport classify_game_sampled(const Game& game, int count = 20,
                                      std::uint64_t seed = 7, double tol = 1e-9);

DesiderataReport desiderata_report(const Game& game, const Vec& w, double lambda);

}  // namespace gamedyn
