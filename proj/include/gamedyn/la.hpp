#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gamedyn {

using Vec = std::vector<double>;

/// Dense row-major matrix.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

Mat transpose(const Mat& m);
Mat identity(int n);
double frobenius_norm(const Mat& m);
double max_abs(const Mat& m);

namespace la {

/// Kernel instruction-set lanes. `scalar` is the reference implementation;
/// `avx2` is selected at runtime when the CPU supports it (x86-64 builds only).
enum class Lane { scalar, avx2 };

/// One lane's kernel set. All hot loops in the library go through this table.
struct KernelTable {
  double (*dot)(const double* x, const double* y, int n);
  void (*axpy)(double a, const double* x, double* y, int n);  // y += a*x
  void (*scal)(double a, double* x, int n);                   // x *= a
  void (*matvec)(const Mat& m, const double* x, double* y);   // y = M x
  void (*matvec_t)(const Mat& m, const double* x, double* y); // y = M^T x
};

bool lane_available(Lane lane);
Lane active_lane();
/// Force a lane (throws UsageError if unavailable). Mainly for tests and the
/// GAMEDYN_LANE=scalar|avx2 environment override honored on first use.
void set_lane(Lane lane);
std::string lane_name(Lane lane);

const KernelTable& kernels();          // active lane
const KernelTable& kernels(Lane lane); // explicit lane (throws if unavailable)

double dot(const Vec& x, const Vec& y);
double nrm2(const Vec& x);
void axpy(double a, const Vec& x, Vec& y);
void scal(double a, Vec& x);
Vec matvec(const Mat& m, const Vec& x);
Vec matvec_t(const Mat& m, const Vec& x);

}  // namespace la
}  // namespace gamedyn
