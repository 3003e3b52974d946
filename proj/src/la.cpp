#include "gamedyn/la.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "gamedyn/errors.hpp"

namespace gamedyn {

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

Mat identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double frobenius_norm(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s = std::max(s, std::abs(v));
  return s;
}

namespace la {
namespace {

double dot_scalar(const double* x, const double* y, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, int n) {
  for (int i = 0; i < n; ++i) x[i] *= a;
}

void matvec_scalar(const Mat& m, const double* x, double* y) {
  for (int i = 0; i < m.rows; ++i) y[i] = dot_scalar(m.row(i), x, m.cols);
}

void matvec_t_scalar(const Mat& m, const double* x, double* y) {
  for (int j = 0; j < m.cols; ++j) y[j] = 0.0;
  for (int i = 0; i < m.rows; ++i) axpy_scalar(x[i], m.row(i), y, m.cols);
}

const KernelTable kScalar{dot_scalar, axpy_scalar, scal_scalar, matvec_scalar,
                          matvec_t_scalar};

Lane detect_default_lane() {
  if (const char* env = std::getenv("GAMEDYN_LANE")) {
    if (std::strcmp(env, "scalar") == 0) return Lane::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!lane_available(Lane::avx2))
        throw UsageError("GAMEDYN_LANE=avx2 requested but AVX2 is unavailable");
      return Lane::avx2;
    }
    throw UsageError(std::string("unknown GAMEDYN_LANE value '") + env +
                     "' (expected scalar or avx2)");
  }
  return lane_available(Lane::avx2) ? Lane::avx2 : Lane::scalar;
}

std::atomic<Lane>& lane_state() {
  static std::atomic<Lane> state{detect_default_lane()};
  return state;
}

}  // namespace

#ifdef GAMEDYN_X86_64
namespace detail {
bool avx2_supported();
const KernelTable& avx2_kernels();
}  // namespace detail
#endif

bool lane_available(Lane lane) {
  switch (lane) {
    case Lane::scalar:
      return true;
    case Lane::avx2:
#ifdef GAMEDYN_X86_64
      return detail::avx2_supported();
#else
      return false;
#endif
  }
  return false;
}

Lane active_lane() { return lane_state().load(std::memory_order_relaxed); }

void set_lane(Lane lane) {
  if (!lane_available(lane))
    throw UsageError("kernel lane '" + lane_name(lane) + "' is unavailable on this CPU");
  lane_state().store(lane, std::memory_order_relaxed);
}

std::string lane_name(Lane lane) {
  return lane == Lane::scalar ? "scalar" : "avx2";
}

const KernelTable& kernels(Lane lane) {
  if (!lane_available(lane))
    throw UsageError("kernel lane '" + lane_name(lane) + "' is unavailable on this CPU");
#ifdef GAMEDYN_X86_64
  if (lane == Lane::avx2) return detail::avx2_kernels();
#endif
  return kScalar;
}

const KernelTable& kernels() { return kernels(active_lane()); }

double dot(const Vec& x, const Vec& y) {
  return kernels().dot(x.data(), y.data(), static_cast<int>(x.size()));
}

double nrm2(const Vec& x) { return std::sqrt(dot(x, x)); }

void axpy(double a, const Vec& x, Vec& y) {
  kernels().axpy(a, x.data(), y.data(), static_cast<int>(x.size()));
}

void scal(double a, Vec& x) {
  kernels().scal(a, x.data(), static_cast<int>(x.size()));
}

Vec matvec(const Mat& m, const Vec& x) {
  Vec y(static_cast<std::size_t>(m.rows));
  kernels().matvec(m, x.data(), y.data());
  return y;
}

Vec matvec_t(const Mat& m, const Vec& x) {
  Vec y(static_cast<std::size_t>(m.cols));
  kernels().matvec_t(m, x.data(), y.data());
  return y;
}

}  // namespace la
}  // namespace gamedyn
