#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace branchpoint {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
double log_add(double a, double b) noexcept;
double log_sum_exp(std::span<const double> xs) noexcept;
/// log|exp(a) - exp(b)|.
double log_abs_diff(double a, double b) noexcept;

/// Linear accumulator for values given by their logarithms. The running sum
/// is stored relative to a reference exponent that is rebased upward when a
/// much larger term arrives, so sums of quantities like e^{-10^4} keep full
/// relative precision.
class ScaledSum {
 public:
  void add(double log_value, double sign = 1.0) noexcept;
  double log_value() const noexcept;
  void clear() noexcept { ref_ = kNegInf; sum_ = 0.0; }

 private:
  double ref_ = kNegInf;
  double sum_ = 0.0;
};

/// Integrand sample in log space: log f(x), plus the log of an error already
/// carried by f(x) itself (for nested integrals); -inf when exact.
struct LogSample {
  double log_value = kNegInf;
  double log_carried_error = kNegInf;
};

struct LogIntegral {
  double log_value = kNegInf;
  double log_error = kNegInf;  // panel error plus carried error
  bool converged = false;
  std::size_t evaluations = 0;
};

struct AdaptiveConfig {
  double rel_tol = 1e-10;
  double log_abs_tol = kNegInf;
  std::size_t max_evaluations = 400000;
  double min_width_fraction = 1e-15;
  /// Evaluate the 15 Kronrod nodes of a panel concurrently (OpenMP). Results
  /// are stored by node index, so the sum order is thread-count independent.
  bool parallel_nodes = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of a non-negative
/// integrand supplied in log space. `breakpoints` (sorted, at least two)
/// define the initial panels; the first and last are the integration limits.
LogIntegral integrate_log(const std::function<LogSample(double)>& log_integrand, std::span<const double> breakpoints,
                          const AdaptiveConfig& config);

}  // namespace branchpoint
