#include "branchpoint/vanishing_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "branchpoint/errors.hpp"
#include "branchpoint/polar_quadrature.hpp"

namespace branchpoint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool half_plane(const MassTarget& t) {
  return std::visit(Overloaded{
                        [](const ReFTarget&) { return true; },
                        [](const QMinimizerTarget& q) { return q.spec.domain == Domain::right_half_plane; },
                        [](const ConstantTarget& c) { return c.domain == Domain::right_half_plane; },
                    },
                    t);
}

}  // namespace

double log_mass_density(const MassTarget& target, Complex z) {
  return std::visit(Overloaded{
                        [z](const ReFTarget& t) {
                          if (z.real() < 0.0) throw DomainError("point outside the right half-plane");
                          const Complex F = F_tree(*t.model, EvalPoint::at(z), false).F;
                          const double c = std::cos(F.imag());
                          if (c == 0.0) return kNegInf;
                          return -2.0 * F.real() + std::log(c * c);
                        },
                        [z](const QMinimizerTarget& t) {
                          const LogComplex h = evaluate_h(t.spec, z).h;
                          if (h.is_zero()) return kNegInf;
                          const double q = static_cast<double>(t.spec.Q);
                          return std::log(q) + (2.0 / q) * h.log_mag;
                        },
                        [](const ConstantTarget& t) { return t.c == 0.0 ? kNegInf : std::log(t.c * t.c); },
                    },
                    target);
}

MassCurve mass_curve(const MassTarget& target, Complex center, const std::vector<double>& radii,
                     const MassConfig& config) {
  if (radii.empty()) throw ValidationError("radius list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ValidationError("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw ValidationError("radii must be strictly descending");
  }
  if (const auto* q = std::get_if<QMinimizerTarget>(&target)) q->spec.validate();
  if (const auto* f = std::get_if<ReFTarget>(&target); f && !f->model) throw ValidationError("series model missing");
  const bool hp = half_plane(target);
  if (hp && center.real() < 0.0) throw ValidationError("center must lie in the closed right half-plane");

  MassCurve curve;
  curve.center = center;
  curve.radii = radii;
  for (double R : radii) {
    PolarConfig pc;
    pc.rel_tol = config.rel_tol;
    pc.parallel = config.parallel;
    pc.max_outer_evaluations = config.max_evaluations;
    pc.max_inner_evaluations = config.max_evaluations;
    if (const auto* q = std::get_if<QMinimizerTarget>(&target)) {
      pc.singular_points = known_zeros(q->spec, center, R);
      for (const Complex& z : pc.singular_points) {
        if (z == center) pc.singular_center = true;
      }
    }
    if (hp && center.real() == 0.0) pc.singular_center = true;
    const LogIntegral li = integrate_disk_log([&](Complex z) { return log_mass_density(target, z); },
                                              DiskRegion{center, R, hp}, pc);
    curve.log_mass.push_back(li.log_value);
    curve.log_error.push_back(li.log_error);
    curve.converged.push_back(li.converged);
  }
  return curve;
}

std::vector<double> geometric_ladder(double largest, double ratio, int rungs) {
  if (!(largest > 0.0) || !(ratio > 0.0 && ratio < 1.0) || rungs < 1) {
    throw ValidationError("ladder needs largest > 0, 0 < ratio < 1 and at least one rung");
  }
  std::vector<double> out(rungs);
  for (int i = 0; i < rungs; ++i) out[i] = largest * std::pow(ratio, i);
  return out;
}

std::vector<double> default_ladder() { return geometric_ladder(0.2, 1.0 / std::sqrt(2.0), 12); }

double vanishing_order_slope(const MassCurve& curve, SlopeWindow w) {
  if (curve.radii.size() != curve.log_mass.size()) throw ValidationError("malformed mass curve");
  if (w.last <= w.first || w.last >= curve.radii.size()) throw ValidationError("degenerate slope window");
  const double n = static_cast<double>(w.last - w.first + 1);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = w.first; i <= w.last; ++i) {
    if (!std::isfinite(curve.log_mass[i])) throw NumericalError("log mass is not finite inside the window");
    sx += std::log(curve.radii[i]);
    sy += curve.log_mass[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = w.first; i <= w.last; ++i) {
    const double dx = std::log(curve.radii[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (curve.log_mass[i] - my);
  }
  return sxy / sxx;
}

std::vector<DoublingRatio> doubling_ratio(const MassCurve& curve) {
  std::vector<DoublingRatio> out;
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    const double r = curve.radii[i];
    for (std::size_t j = 0; j < curve.radii.size(); ++j) {
      if (std::abs(curve.radii[j] - 2.0 * r) <= 1e-12 * 2.0 * r) {
        out.push_back({r, (curve.log_mass[j] - curve.log_mass[i]) / (2.0 * std::log(2.0))});
        break;
      }
    }
  }
  if (out.empty()) throw ValidationError("curve contains no radius pair (2r, r)");
  return out;
}

NonConstancyReport check_re_f_non_constant(const FgModel& model, double x_lo, double x_hi, double y_lo,
                                           double y_hi, int n) {
  if (n < 2 || !(x_lo > 0.0) || !(x_hi > x_lo) || !(y_hi > y_lo)) throw ValidationError("invalid sampling grid");
  NonConstancyReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  rep.max_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex z(x_lo + (x_hi - x_lo) * i / (n - 1), y_lo + (y_hi - y_lo) * j / (n - 1));
      const Complex f = lc_to_complex(eval_f(model, z).value);
      rep.min_value = std::min(rep.min_value, f.real());
      rep.max_value = std::max(rep.max_value, f.real());
      ++rep.samples;
    }
  }
  const double scale = std::max(std::abs(rep.min_value), std::abs(rep.max_value));
  rep.non_constant = rep.max_value - rep.min_value > 1e-8 * std::max(scale, 1e-300);
  return rep;
}

}  // namespace branchpoint
