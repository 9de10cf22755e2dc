#include "branchpoint/log_quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include "branchpoint/detail/omp_guard.hpp"
#include "branchpoint/errors.hpp"

namespace branchpoint {

namespace {

// QUADPACK qk15 abscissae and weights; xgk[1], xgk[3], xgk[5], xgk[7] are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double log_value = kNegInf;
  double log_error = kNegInf;
  double log_carried = kNegInf;
};

Panel evaluate_panel(const std::function<LogSample(double)>& f, double a, double b, bool parallel) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 15> x{};
  for (int i = 0; i < 7; ++i) {
    x[2 * i] = c - h * kXgk[i];
    x[2 * i + 1] = c + h * kXgk[i];
  }
  x[14] = c;
  std::array<LogSample, 15> s{};
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < 15; ++i) {
    try {
      s[i] = f(x[i]);
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();

  const double lh = std::log(h);
  std::array<double, 15> kron{};
  std::array<double, 15> carried{};
  std::array<double, 7> gauss{};
  int ng = 0;
  for (int i = 0; i < 15; ++i) {
    const int node = (i == 14) ? 7 : i / 2;
    const double lw = std::log(kWgk[node]);
    if (std::isnan(s[i].log_value) || s[i].log_value == std::numeric_limits<double>::infinity()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", x[i]);
      throw NumericalError(std::string("integrand is not finite at quadrature node x = ") + buf);
    }
    kron[i] = lw + s[i].log_value;
    carried[i] = lw + s[i].log_carried_error;
    if (node % 2 == 1) gauss[ng++] = std::log(kWg[node / 2]) + s[i].log_value;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.log_value = lh + log_sum_exp(kron);
  const double lg = lh + log_sum_exp(std::span<const double>(gauss.data(), ng));
  p.log_error = log_abs_diff(p.log_value, lg);
  p.log_carried = lh + log_sum_exp(carried);
  return p;
}

}  // namespace

double log_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sum_exp(std::span<const double> xs) noexcept {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

double log_abs_diff(double a, double b) noexcept {
  if (a == b) return kNegInf;
  const double m = std::max(a, b);
  if (std::min(a, b) == kNegInf) return m;
  return m + std::log(-std::expm1(-std::abs(a - b)));
}

void ScaledSum::add(double log_value, double sign) noexcept {
  if (log_value == kNegInf) return;
  if (ref_ == kNegInf) {
    ref_ = log_value;
    sum_ = sign;
    return;
  }
  if (log_value > ref_ + 30.0) {
    sum_ *= std::exp(ref_ - log_value);
    ref_ = log_value;
    sum_ += sign;
  } else {
    sum_ += sign * std::exp(log_value - ref_);
  }
}

double ScaledSum::log_value() const noexcept { return sum_ > 0.0 ? ref_ + std::log(sum_) : kNegInf; }

LogIntegral integrate_log(const std::function<LogSample(double)>& f, std::span<const double> breakpoints,
                          const AdaptiveConfig& config) {
  if (breakpoints.size() < 2) throw ValidationError("integration needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] >= breakpoints[i - 1])) throw ValidationError("breakpoints must be sorted");
  }
  const double width = breakpoints.back() - breakpoints.front();
  LogIntegral out;
  if (width <= 0.0) {
    out.converged = true;
    return out;
  }
  const double min_width = width * config.min_width_fraction;

  std::vector<Panel> panels;
  auto by_error = [&panels](std::size_t i, std::size_t j) { return panels[i].log_error < panels[j].log_error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> heap(by_error);
  std::vector<std::size_t> frozen;  // too narrow to split further

  ScaledSum value_sum;
  ScaledSum error_sum;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] == breakpoints[i - 1]) continue;
    panels.push_back(evaluate_panel(f, breakpoints[i - 1], breakpoints[i], config.parallel_nodes));
    out.evaluations += 15;
    value_sum.add(panels.back().log_value);
    error_sum.add(panels.back().log_error);
    heap.push(panels.size() - 1);
  }

  auto recompute = [&]() {
    value_sum.clear();
    error_sum.clear();
    for (const Panel& p : panels) {
      if (p.b > p.a) {
        value_sum.add(p.log_value);
        error_sum.add(p.log_error);
      }
    }
  };

  std::size_t iterations = 0;
  while (true) {
    if (++iterations % 64 == 0) recompute();
    const double lv = value_sum.log_value();
    const double le = error_sum.log_value();
    const double target = std::max(lv + std::log(config.rel_tol), config.log_abs_tol);
    if (le <= target) {
      out.converged = true;
      break;
    }
    if (heap.empty() || out.evaluations >= config.max_evaluations) break;
    const std::size_t idx = heap.top();
    heap.pop();
    Panel& p = panels[idx];
    if (p.b - p.a <= min_width) {
      frozen.push_back(idx);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    Panel left = evaluate_panel(f, p.a, mid, config.parallel_nodes);
    Panel right = evaluate_panel(f, mid, p.b, config.parallel_nodes);
    out.evaluations += 30;
    value_sum.add(p.log_value, -1.0);
    error_sum.add(p.log_error, -1.0);
    value_sum.add(left.log_value);
    value_sum.add(right.log_value);
    error_sum.add(left.log_error);
    error_sum.add(right.log_error);
    p = left;  // reuse slot
    panels.push_back(right);
    heap.push(idx);
    heap.push(panels.size() - 1);
  }

  recompute();
  ScaledSum carried;
  for (const Panel& p : panels) carried.add(p.log_carried);
  out.log_value = value_sum.log_value();
  out.log_error = log_add(error_sum.log_value(), carried.log_value());
  if (!out.converged) {
    const double target = std::max(out.log_value + std::log(config.rel_tol), config.log_abs_tol);
    out.converged = error_sum.log_value() <= target;
  }
  return out;
}

}  // namespace branchpoint
