#include "trigpert/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <queue>
#include <string>

namespace trigpert {

namespace {

using RowMajorMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> as_eigen(const ComplexMatrix& a) {
  return {a.data().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

constexpr std::size_t kMaxSolveSize = 4097;
constexpr std::size_t kMaxSvdSize = 1025;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw InputError("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw InputError("ComplexMatrix: dimensions must be positive");
  if (data_.size() != rows * cols) throw InputError("ComplexMatrix: entry count mismatch");
  if (!all_finite()) throw InputError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<cdouble> ComplexMatrix::apply(std::span<const cdouble> x) const {
  if (x.size() != cols_) throw InputError("ComplexMatrix::apply: length mismatch");
  std::vector<cdouble> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cdouble acc = 0.0;
    const cdouble* row = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

ComplexMatrix ComplexMatrix::transposed() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cdouble& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

SignedLogValue signed_log_product(std::span<const double> terms) {
  LogProductAccumulator acc;
  for (double t : terms) acc.multiply(t);
  return acc.result();
}

std::vector<cdouble> solve_dense(const ComplexMatrix& a, std::span<const cdouble> b) {
  if (!a.square()) throw InputError("solve_dense: matrix must be square");
  const std::size_t n = a.rows();
  if (n > kMaxSolveSize) throw CapacityError("solve_dense: size exceeds 4097");
  if (b.size() != n) throw InputError("solve_dense: right-hand side length mismatch");
  if (!a.all_finite()) throw InputError("solve_dense: non-finite matrix entry");

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(as_eigen(a));
  const double rcond = lu.rcond();
  if (!(rcond > static_cast<double>(n) * std::numeric_limits<double>::epsilon()))
    throw SingularSystemError("singular system (reciprocal condition " + std::to_string(rcond) +
                              ")");

  Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXcd x = lu.solve(rhs);
  if (!x.allFinite()) throw SingularSystemError("singular system (non-finite solution)");
  return {x.data(), x.data() + n};
}

double min_singular_value(const ComplexMatrix& a) {
  if (!a.square()) throw InputError("min_singular_value: matrix must be square");
  if (a.rows() > kMaxSvdSize) throw CapacityError("min_singular_value: size exceeds 1025");
  if (!a.all_finite()) throw InputError("min_singular_value: non-finite matrix entry");
  Eigen::MatrixXcd m = as_eigen(a);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol,
                          const IntegrationOptions& opts) {
  if (!(tol >= 1e-12)) throw InputError("adaptive_integrate: tol must be >= 1e-12");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("adaptive_integrate: infinite limits");
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> breaks{a};
  for (double s : opts.singular_points)
    if (s > a && s < b) breaks.push_back(s);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::priority_queue<Panel> queue;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Panel p = gauss_kronrod(f, breaks[i], breaks[i + 1]);
    total += p.value;
    total_error += p.error;
    queue.push(p);
  }

  std::size_t panels = queue.size();
  while (!(total_error <= tol)) {
    if (!std::isfinite(total_error)) {
      throw NoConvergenceError("adaptive_integrate: non-finite integrand value", sign * total,
                               total_error);
    }
    if (panels >= opts.max_panels) {
      throw NoConvergenceError("adaptive_integrate: no convergence within panel budget",
                               sign * total, total_error);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      throw NoConvergenceError("adaptive_integrate: panel width below resolution", sign * total,
                               total_error);
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Re-sum to shed the drift of incremental updates.
  double resum = 0.0;
  while (!queue.empty()) {
    resum += queue.top().value;
    queue.pop();
  }
  return sign * resum;
}

}  // namespace trigpert

namespace trigpert {

ScalarMax golden_section_max(const std::function<double(double)>& g, double lo, double hi,
                             double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  if (hi < lo) std::swap(lo, hi);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  ScalarMax best = gc >= gd ? ScalarMax{c, gc} : ScalarMax{d, gd};
  // 200 golden steps shrink any bracket below double resolution.
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    if (gc >= gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - kInvPhi * (hi - lo);
      gc = g(c);
      if (gc > best.value) best = {c, gc};
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + kInvPhi * (hi - lo);
      gd = g(d);
      if (gd > best.value) best = {d, gd};
    }
  }
  return best;
}

}  // namespace trigpert
