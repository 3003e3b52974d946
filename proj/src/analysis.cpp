#include "gamedyn/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gamedyn/rng.hpp"

namespace gamedyn {
namespace {

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

std::vector<double> symmetric_spectrum(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(S));
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::string to_string(GameClass c) {
  switch (c) {
    case GameClass::potential: return "potential";
    case GameClass::hamiltonian: return "hamiltonian";
    case GameClass::general: return "general";
  }
  return "?";
}

double additive_condition_number(const Mat& S) {
  const auto eigs = symmetric_spectrum(S);
  return eigs.back() - eigs.front();
}

FixedPointReport classify(const Game& game, const Vec& w_star, double tol_eig) {
  const DecompositionBundle b = bundle(game, w_star);

  FixedPointReport r;
  r.w_star = b.w;
  r.residual = la::nrm2(b.xi);
  r.s_eigs = symmetric_spectrum(b.S);

  Eigen::EigenSolver<Eigen::MatrixXd> jsolver(to_eigen(b.J));
  if (jsolver.info() != Eigen::Success) throw NumericError("eigensolver failed on J");
  for (int i = 0; i < game.dim(); ++i)
    r.j_eigs.emplace_back(jsolver.eigenvalues()[i].real(), jsolver.eigenvalues()[i].imag());
  std::sort(r.j_eigs.begin(), r.j_eigs.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(b.J));
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  r.j_invertible = smin > 1e-8 * smax;

  r.kappa = r.s_eigs.back() - r.s_eigs.front();

  if (tol_eig < 0.0) {
    double scale = 0.0;
    for (double e : r.s_eigs) scale = std::max(scale, std::abs(e));
    for (const auto& e : r.j_eigs) scale = std::max(scale, std::abs(e));
    tol_eig = 1e-8 * std::max(1.0, scale);
  }

  r.is_stable = r.s_eigs.front() >= -tol_eig && r.j_invertible;
  r.is_unstable = r.s_eigs.back() < -tol_eig;
  for (const auto& e : r.j_eigs)
    if (e.real() < -tol_eig) r.is_strict_saddle = true;
  return r;
}

FixedPointReport find_fixed_point(const Game& game, const Vec& w0, int max_iters, double tol) {
  if (!(tol > 0.0)) throw ParamError("fixed-point tolerance must be positive");
  if (max_iters < 0) throw ParamError("max_iters must be >= 0");

  const auto H_at = [&](const Vec& p) {
    const Vec xi = simultaneous_gradient(game, p);
    return 0.5 * la::dot(xi, xi);
  };

  Vec w = w0;
  int iters = 0;
  bool converged = false;
  while (true) {
    const DecompositionBundle b = bundle(game, w);
    if (la::nrm2(b.xi) < tol) {
      converged = true;
      break;
    }
    if (iters == max_iters) break;

    double eta = 1.0;
    const double H0 = b.H;
    Vec trial;
    while (true) {
      trial = w;
      la::axpy(-eta, b.gradH, trial);
      if (H_at(trial) < H0) break;
      eta *= 0.5;
      if (eta < 1e-12)
        throw StagnationError("descent on H stagnated at step size below 1e-12 in game '" +
                              game.name + "'");
    }
    w = std::move(trial);
    ++iters;
  }

  FixedPointReport r = classify(game, w);
  r.converged = converged;
  r.iterations = iters;
  return r;
}

GameClassReport classify_game(const Game& game, const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw ParamError("classify_game needs at least one sample point");
  bool potential = true;
  bool hamiltonian = true;
  double s_norm = 0.0, a_norm = 0.0;
  for (const auto& p : points) {
    const Mat J = jacobian(game, p);
    const auto [S, A] = helmholtz(J);
    const double jn = frobenius_norm(J);
    const double sn = frobenius_norm(S);
    const double an = frobenius_norm(A);
    potential = potential && an <= tol * std::max(1.0, jn);
    hamiltonian = hamiltonian && sn <= tol * std::max(1.0, jn);
    s_norm = std::max(s_norm, sn);
    a_norm = std::max(a_norm, an);
  }
  GameClassReport r;
  r.game_class = potential ? GameClass::potential
                           : (hamiltonian ? GameClass::hamiltonian : GameClass::general);
  r.s_norm = s_norm;
  r.a_norm = a_norm;
  r.sample_points = static_cast<int>(points.size());
  return r;
}

GameClassReport classify_game_sampled(const Game& game, int count, std::uint64_t seed,
                                      double tol) {
  if (count < 1) throw ParamError("classify_game needs at least one sample point");
  rng::Engine eng(seed);
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) points.push_back(rng::gaussian_vec(eng, game.dim()));
  return classify_game(game, points, tol);
}

DesiderataReport desiderata_report(const Game& game, const Vec& w, double lambda) {
  if (!std::isfinite(lambda)) throw ParamError("lambda must be finite");
  const DecompositionBundle b = bundle(game, w);
  Vec xi_l = b.xi;
  la::axpy(lambda, b.adj, xi_l);

  DesiderataReport r;
  r.lambda = lambda;
  r.d1_residual = std::abs(la::dot(xi_l, b.xi) - la::dot(b.xi, b.xi));

  const GameClass cls = classify_game_sampled(game).game_class;
  r.d2_applicable = cls == GameClass::potential;
  if (r.d2_applicable) {
    Vec diff = xi_l;
    la::axpy(-1.0, b.xi, diff);
    r.d2_residual = la::nrm2(diff);
  }
  r.d3_applicable = cls == GameClass::hamiltonian;
  if (r.d3_applicable)
    r.d3_residual = std::abs(la::dot(xi_l, b.gradH) - lambda * la::dot(b.gradH, b.gradH));

  r.xi_dot_gradH = la::dot(b.xi, b.gradH);
  r.adj_dot_gradH = la::dot(b.adj, b.gradH);
  r.d45_satisfied = lambda * r.xi_dot_gradH * r.adj_dot_gradH >= 0.0;
  return r;
}

}  // namespace gamedyn
