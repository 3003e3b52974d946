#pragma once

#include <utility>

#include "gamedyn/game.hpp"

namespace gamedyn {

/// Everything the generalized Helmholtz decomposition yields at one point:
/// xi = simultaneous gradient, J its Jacobian, S/A the symmetric and
/// antisymmetric parts, H = 1/2 |xi|^2, gradH = J^T xi, adj = A^T xi.
struct DecompositionBundle {
  JointPoint w;
  Vec xi;
  Mat J;
  Mat S;
  Mat A;
  double H = 0.0;
  Vec gradH;
  Vec adj;
};

/// xi(w): player i's block is grad_{w_i} l_i(w).
Vec simultaneous_gradient(const Game& game, const Vec& w);

/// Game Jacobian at w. Uses the analytic Jacobian when the game carries one;
/// otherwise forward differences on xi, column beta stepped by
/// h = 1e-6 * max(1, |w_beta|).
Mat jacobian(const Game& game, const Vec& w);

/// Splits J into (S, A). Each entry is assembled from the mirrored pair of J
/// so that S is exactly symmetric and A exactly antisymmetric.
std::pair<Mat, Mat> helmholtz(const Mat& J);

DecompositionBundle bundle(const Game& game, const Vec& w);
DecompositionBundle bundle(const Game& game, const JointPoint& w);

/// Central-difference gradient of H(w) = 1/2 |xi(w)|^2, coordinate i stepped
/// by h * max(1, |w_i|). Oracle for gradH = J^T xi.
Vec fd_gradH(const Game& game, const Vec& w, double h = 1e-5);

}  // namespace gamedyn
