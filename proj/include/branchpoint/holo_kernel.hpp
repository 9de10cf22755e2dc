#pragma once

#include <complex>
#include <limits>

namespace branchpoint {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Reduce an angle to (-pi, pi].
double reduce_angle(double theta) noexcept;

/// ln|z| + i Arg z with Arg in (-pi, pi). Throws DomainError on the closed
/// negative real axis (including 0).
Complex principal_log(Complex z);

/// exp(alpha * principal_log(z)).
Complex complex_pow(Complex z, double alpha);

/// A complex number stored as exp(log_mag + i arg).
///
/// log_mag = -inf encodes an exact zero; every operation treats it as
/// absorbing. The argument is kept unreduced so that long products
/// accumulate phase without wrap-around; reduce only when converting.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  static LogComplex zero() noexcept { return {}; }
  static LogComplex one() noexcept { return {0.0, 0.0}; }
  static LogComplex from_complex(Complex z) noexcept;

  bool is_zero() const noexcept { return log_mag == -std::numeric_limits<double>::infinity(); }
  double reduced_arg() const noexcept { return is_zero() ? 0.0 : reduce_angle(arg); }
};

LogComplex lc_mul(LogComplex x, LogComplex y) noexcept;
double lc_abs(LogComplex x) noexcept;
/// Saturates to exact 0 once log_mag falls below the log of the smallest
/// normal double.
Complex lc_to_complex(LogComplex x) noexcept;

/// cos(u) in log form. A value whose magnitude is below the rounding floor of
/// the cosine evaluation (8 eps max(1, |u|)) is returned as an exact zero.
LogComplex log_cos(Complex u) noexcept;

/// Raw |cos(u)| without the zero snap; used for residual reports.
double cos_residual(Complex u) noexcept;

/// a(z) = exp(-z^{-alpha}), 0 < alpha < 1.
LogComplex block_a(Complex z, double alpha);
/// b(z) = cos(ln z) exp(-z^{-alpha}).
LogComplex block_b(Complex z, double alpha);
/// a'(z) = alpha z^{-alpha-1} a(z).
LogComplex block_a_derivative(Complex z, double alpha);
/// b'(z) = a(z) (alpha z^{-alpha-1} cos(ln z) - sin(ln z) / z).
LogComplex block_b_derivative(Complex z, double alpha);

}  // namespace branchpoint
