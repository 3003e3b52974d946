#include "gamedyn/typed.hpp"

#include <Eigen/Dense>

#include "gamedyn/calculus.hpp"

namespace gamedyn {
namespace {

Mat block(const Mat& m, int row0, int col0, int rows, int cols) {
  Mat b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = m(row0 + i, col0 + j);
  return b;
}

struct SvdFactors {
  Mat U, V, D;  // M = U^T D V
};

/// Factors M = U^T D V with square orthogonal U, V and rectangular
/// non-negative diagonal D. The zero matrix takes U = V = I, D = 0.
SvdFactors factor(const Mat& M) {
  SvdFactors f;
  f.D = Mat(M.rows, M.cols);
  if (max_abs(M) == 0.0) {
    f.U = identity(M.rows);
    f.V = identity(M.cols);
    return f;
  }
  Eigen::MatrixXd em(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) em(i, j) = M(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em, Eigen::ComputeFullU | Eigen::ComputeFullV);
  f.U = Mat(M.rows, M.rows);
  f.V = Mat(M.cols, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.rows; ++j) f.U(i, j) = svd.matrixU()(j, i);
  for (int i = 0; i < M.cols; ++i)
    for (int j = 0; j < M.cols; ++j) f.V(i, j) = svd.matrixV()(j, i);
  for (int k = 0; k < svd.singularValues().size(); ++k) f.D(k, k) = svd.singularValues()(k);
  return f;
}

/// U^T I~ V for d1 x d2 blocks: the orthogonal polar factor, with the
/// rectangular identity bridging mismatched sides.
Mat polar_factor(const SvdFactors& f, int d1, int d2) {
  Mat p(d1, d2);
  const int k = std::min(d1, d2);
  // (U^T I~ V)(i,j) = sum_{m<k} U(m,i) V(m,j)
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      double s = 0.0;
      for (int m = 0; m < k; ++m) s += f.U(m, i) * f.V(m, j);
      p(i, j) = s;
    }
  return p;
}

}  // namespace

TypedDecomposition typed_two_form(const QuadraticGame& game) {
  game.validate();
  if (game.partition.players() != 2)
    throw UsageError("typed decomposition is defined for two-player quadratic games only");
  const int d1 = game.partition.dim_of(0);
  const int d2 = game.partition.dim_of(1);

  TypedDecomposition t;
  t.A12 = block(game.Q[0], 0, d1, d1, d2);
  t.C21 = block(game.Q[1], d1, 0, d2, d1);
  const Mat C12 = transpose(t.C21);

  const SvdFactors fa = factor(t.A12);
  t.U_A = fa.U;
  t.V_A = fa.V;
  t.D_A = fa.D;
  const SvdFactors fc = factor(C12);
  t.U_C = fc.U;
  t.V_C = fc.V;
  t.D_C = fc.D;

  t.omega_tau = polar_factor(fa, d1, d2);
  const Mat pc = polar_factor(fc, d1, d2);
  for (std::size_t i = 0; i < t.omega_tau.a.size(); ++i) t.omega_tau.a[i] -= pc.a[i];
  return t;
}

Mat omega_matrix(const TypedDecomposition& t) {
  const int d1 = t.A12.rows;
  const int d2 = t.A12.cols;
  Mat omega(d1 + d2, d1 + d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      omega(i, d1 + j) = 0.5 * t.omega_tau(i, j);
      omega(d1 + j, i) = -0.5 * t.omega_tau(i, j);
    }
  return omega;
}

Vec typed_adjustment(const QuadraticGame& game, const Vec& w) {
  const TypedDecomposition t = typed_two_form(game);
  const Mat omega = omega_matrix(t);
  const Vec xi = simultaneous_gradient(game.to_game(), w);
  return la::matvec_t(omega, xi);
}

}  // namespace gamedyn
