#include "branchpoint/holo_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "branchpoint/errors.hpp"

namespace branchpoint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("building block exponent alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace

double reduce_angle(double theta) noexcept {
  if (theta > -kPi && theta <= kPi) return theta;
  double r = std::remainder(theta, 2.0 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Complex principal_log(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    throw DomainError("principal log is undefined on the closed negative real axis");
  }
  return {std::log(std::abs(z)), std::atan2(z.imag(), z.real())};
}

Complex complex_pow(Complex z, double alpha) {
  if (alpha == 1.0) {
    principal_log(z);  // domain check only
    return z;
  }
  return std::exp(alpha * principal_log(z));
}

LogComplex LogComplex::from_complex(Complex z) noexcept {
  if (z == Complex(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex lc_mul(LogComplex x, LogComplex y) noexcept {
  if (x.is_zero() || y.is_zero()) return LogComplex::zero();
  return {x.log_mag + y.log_mag, x.arg + y.arg};
}

double lc_abs(LogComplex x) noexcept { return x.is_zero() ? 0.0 : std::exp(x.log_mag); }

Complex lc_to_complex(LogComplex x) noexcept {
  static const double log_min_normal = std::log(std::numeric_limits<double>::min());
  if (x.is_zero() || x.log_mag < log_min_normal) return {0.0, 0.0};
  return std::polar(std::exp(x.log_mag), reduce_angle(x.arg));
}

double cos_residual(Complex u) noexcept { return std::abs(std::cos(u)); }

LogComplex log_cos(Complex u) noexcept {
  const Complex c = std::cos(u);
  const double mag = std::abs(c);
  if (mag <= 8.0 * kEps * std::max(1.0, std::abs(u))) return LogComplex::zero();
  return {std::log(mag), std::atan2(c.imag(), c.real())};
}

LogComplex block_a(Complex z, double alpha) {
  check_alpha(alpha);
  const Complex p = complex_pow(z, -alpha);
  return {-p.real(), -p.imag()};
}

LogComplex block_b(Complex z, double alpha) {
  check_alpha(alpha);
  const Complex lz = principal_log(z);
  return lc_mul(log_cos(lz), block_a(z, alpha));
}

LogComplex block_a_derivative(Complex z, double alpha) {
  const LogComplex a = block_a(z, alpha);
  const Complex lz = principal_log(z);
  // alpha z^{-alpha-1} = exp(ln alpha - (alpha+1) ln z)
  const Complex lfac = std::log(alpha) - (alpha + 1.0) * lz;
  return lc_mul(a, {lfac.real(), lfac.imag()});
}

LogComplex block_b_derivative(Complex z, double alpha) {
  const LogComplex a = block_a(z, alpha);
  const Complex lz = principal_log(z);
  // (alpha z^{-alpha} cos(ln z) - sin(ln z)) / z, with 1/z kept in log form
  const Complex inner = alpha * std::exp(-alpha * lz) * std::cos(lz) - std::sin(lz);
  return lc_mul(lc_mul(a, LogComplex::from_complex(inner)), {-lz.real(), -lz.imag()});
}

}  // namespace branchpoint
