#pragma once

#include "gamedyn/game.hpp"

namespace gamedyn {

/// SVD bookkeeping for the type-consistent two-form of a two-player
/// quadratic game. Cross blocks factor as A12 = U_A^T D_A V_A and
/// C12 = C21^T = U_C^T D_C V_C with square orthogonal U, V and rectangular
/// non-negative diagonal D. A zero block takes U = V = I, D = 0.
struct TypedDecomposition {
  Mat A12;  // d1 x d2, player 1 cross block
  Mat C21;  // d2 x d1, player 2 cross block
  Mat U_A, V_A, D_A;
  Mat U_C, V_C, D_C;
  Mat omega_tau;  // d1 x d2, U_A^T I~ V_A - U_C^T I~ V_C
};

/// Factors the cross blocks of a two-player quadratic game and forms
/// omega_tau. Sign convention: omega_tau = U_A^T V_A - U_C^T V_C (the
/// orientation of the two-form is fixed here once and for all). Rectangular
/// blocks insert the d1 x d2 identity-like matrix between the factors.
/// Throws UsageError unless the game has exactly two players.
TypedDecomposition typed_two_form(const QuadraticGame& game);

/// The d x d antisymmetric matrix Omega with upper-right block
/// omega_tau / 2 and lower-left block -omega_tau^T / 2.
Mat omega_matrix(const TypedDecomposition& t);

/// Omega^T xi(w): the type-consistent counterpart of A^T xi. Linear in xi;
/// identically zero when omega_tau = 0.
Vec typed_adjustment(const QuadraticGame& game, const Vec& w);

}  // namespace gamedyn
