#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "branchpoint/qvalued_frequency.hpp"
#include "branchpoint/series_fg.hpp"

namespace branchpoint {

/// u = Re f on the right half-plane.
struct ReFTarget {
  std::shared_ptr<const FgModel> model;
};
/// |u|^2 = Q |h|^{2/Q} for the Q-valued minimizer of spec.
struct QMinimizerTarget {
  MinimizerSpec spec;
};
/// u = c on the given domain.
struct ConstantTarget {
  double c = 1.0;
  Domain domain = Domain::full_plane;
};

using MassTarget = std::variant<ReFTarget, QMinimizerTarget, ConstantTarget>;

struct MassConfig {
  double rel_tol = 1e-8;
  bool parallel = true;
  std::size_t max_evaluations = 60000;
};

/// log of int_{B_R(center) cap domain} |u|^2 for a descending radius list.
struct MassCurve {
  Complex center{0.0, 0.0};
  std::vector<double> radii;
  std::vector<double> log_mass;
  std::vector<double> log_error;
  std::vector<bool> converged;
};

/// log |u(z)|^2 for the target.
double log_mass_density(const MassTarget& target, Complex z);

MassCurve mass_curve(const MassTarget& target, Complex center, const std::vector<double>& radii,
                     const MassConfig& config = {});

/// Geometric ladder largest * ratio^i, i = 0..rungs-1 (descending).
std::vector<double> geometric_ladder(double largest, double ratio, int rungs);
/// Ratio 1/sqrt(2), 12 rungs, largest 0.2.
std::vector<double> default_ladder();

/// Inclusive index window [first, last] into a curve.
struct SlopeWindow {
  std::size_t first = 0;
  std::size_t last = 1;
};

/// Least-squares slope of log mass against log R over the window.
double vanishing_order_slope(const MassCurve& curve, SlopeWindow window);

struct DoublingRatio {
  double r = 0.0;
  double ratio = 0.0;  // (log mass(2r) - log mass(r)) / (2 ln 2)
};

/// One entry per pair (2r, r) present in the curve, ordered by decreasing r.
std::vector<DoublingRatio> doubling_ratio(const MassCurve& curve);

struct NonConstancyReport {
  double min_value = 0.0;
  double max_value = 0.0;
  std::size_t samples = 0;
  bool non_constant = false;
};

/// Samples Re f on an n x n grid of [x_lo, x_hi] x [y_lo, y_hi] in the right half-plane.
NonConstancyReport check_re_f_non_constant(const FgModel& model, double x_lo, double x_hi, double y_lo,
                                           double y_hi, int n);

}  // namespace branchpoint
