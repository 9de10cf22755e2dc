#pragma once

#include <cmath>

#include "branchpoint/holo_kernel.hpp"

namespace branchpoint {

/// A point z of the plane, optionally anchored to a shift y_a so that
/// z = exp(log_re) - i y_a is represented exactly even when exp(log_re)
/// underflows. For the anchored shift, ln(z + i y_a) = log_re with no rounding.
struct EvalPoint {
  Complex z{0.0, 0.0};
  bool anchored = false;
  double anchor_y = 0.0;
  double log_re = 0.0;

  static EvalPoint at(Complex z) noexcept { return EvalPoint{z, false, 0.0, 0.0}; }
  static EvalPoint anchored_at(double y, double log_re) noexcept {
    return EvalPoint{Complex(std::exp(log_re), -y), true, y, log_re};
  }

  /// z + i y
  Complex shift(double y) const noexcept {
    if (anchored) return {std::exp(log_re), y - anchor_y};
    return {z.real(), z.imag() + y};
  }

  /// Principal log of z + i y.
  Complex log_shift(double y) const {
    if (anchored && y == anchor_y) return {log_re, 0.0};
    return principal_log(shift(y));
  }
};

}  // namespace branchpoint
