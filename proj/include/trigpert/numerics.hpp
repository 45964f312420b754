#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "trigpert/errors.hpp"

namespace trigpert {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  /// Zero matrix. Both dimensions must be at least 1.
  ComplexMatrix(std::size_t rows, std::size_t cols);

  /// Throws InputError unless entries.size() == rows * cols and every entry is finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

  static ComplexMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  [[nodiscard]] cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const cdouble& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  [[nodiscard]] std::span<const cdouble> data() const noexcept { return data_; }

  [[nodiscard]] std::vector<cdouble> apply(std::span<const cdouble> x) const;
  [[nodiscard]] ComplexMatrix transposed() const;
  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cdouble> data_;
};

/// sign * exp(log_magnitude). sign == 0 exactly when log_magnitude == -inf.
struct SignedLogValue {
  double log_magnitude = 0.0;
  int sign = 1;

  [[nodiscard]] double value() const {
    return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_magnitude);
  }
  [[nodiscard]] static SignedLogValue zero() {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
};

/// Running product kept as mantissa * 2^exponent so that thousands of small
/// factors never underflow.
class LogProductAccumulator {
 public:
  void multiply(double factor) noexcept {
    if (factor == 0.0) {
      zero_ = true;
      return;
    }
    if (factor < 0.0) {
      negative_ = !negative_;
      factor = -factor;
    }
    int e = 0;
    mantissa_ *= std::frexp(factor, &e);
    exponent_ += e;
    if (mantissa_ < 0x1p-900) renormalize();
  }

  [[nodiscard]] SignedLogValue result() const noexcept {
    if (zero_) return SignedLogValue::zero();
    return {std::log(mantissa_) + static_cast<double>(exponent_) * std::log(2.0),
            negative_ ? -1 : 1};
  }

 private:
  void renormalize() noexcept {
    int e = 0;
    mantissa_ = std::frexp(mantissa_, &e);
    exponent_ += e;
  }

  double mantissa_ = 1.0;
  long exponent_ = 0;
  bool negative_ = false;
  bool zero_ = false;
};

/// Product of `terms` in the log domain. Exact zeros give sign 0.
[[nodiscard]] SignedLogValue signed_log_product(std::span<const double> terms);

/// Solves A x = b with partial pivoting. Throws SingularSystemError when A is
/// singular to working precision, InputError on shape mismatch, CapacityError
/// for n > 4097.
[[nodiscard]] std::vector<cdouble> solve_dense(const ComplexMatrix& a, std::span<const cdouble> b);

/// Smallest singular value of a square matrix (n <= 1025). Near-zero values
/// are returned, not reported as errors.
[[nodiscard]] double min_singular_value(const ComplexMatrix& a);

struct IntegrationOptions {
  /// Abscissae where the integrand is singular; panels are split there.
  std::vector<double> singular_points;
  std::size_t max_panels = 20000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to
/// absolute tolerance `tol` (>= 1e-12). Throws NoConvergenceError, carrying the
/// best estimate, when the panel budget runs out.
[[nodiscard]] double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                        double tol, const IntegrationOptions& opts = {});

struct ScalarMax {
  double x;
  double value;
};

/// Golden-section search for the maximum of g on [lo, hi], stopping when the
/// bracket is narrower than `tol`. Returns the best point evaluated.
[[nodiscard]] ScalarMax golden_section_max(const std::function<double(double)>& g, double lo,
                                           double hi, double tol);

}  // namespace trigpert
