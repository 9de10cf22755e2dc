#pragma once

#include <functional>
#include <vector>

#include "branchpoint/holo_kernel.hpp"
#include "branchpoint/log_quadrature.hpp"

namespace branchpoint {

/// B_R(center), optionally intersected with the right half-plane Re z > 0.
struct DiskRegion {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  bool half_plane = false;
};

struct PolarConfig {
  double rel_tol = 1e-10;
  /// Inner radial integrals use rel_tol * inner_factor.
  double inner_factor = 0.1;
  std::size_t max_outer_evaluations = 60000;
  std::size_t max_inner_evaluations = 60000;
  /// Known singular points of the density (zeros of h); quadrature panels are
  /// graded geometrically towards them.
  std::vector<Complex> singular_points;
  /// Singular points whose influence region has a known minimal relative size
  /// (boundary singularities of the series); graded down to
  /// boundary_grading * (distance from the center) only.
  std::vector<Complex> boundary_points;
  double boundary_grading = 1e-5;
  /// Grade radial panels towards the center.
  bool singular_center = false;
  double grading_floor = 1e-8;
  bool parallel = true;
};

/// Angular interval of the arc dB_R(center) inside the region.
struct AngleRange {
  double lo = -kPi;
  double hi = kPi;
};
AngleRange arc_angles(const DiskRegion& region);
AngleRange disk_angles(const DiskRegion& region);
/// Largest radius along direction theta that stays inside the region.
double radial_limit(const DiskRegion& region, double theta);

/// log of int_{arc} exp(log_density(z)) d theta.
LogIntegral integrate_arc_log(const std::function<double(Complex)>& log_density, const DiskRegion& region,
                              const PolarConfig& config);

/// log of int_{disk} exp(log_density(z)) r dr d theta.
LogIntegral integrate_disk_log(const std::function<double(Complex)>& log_density, const DiskRegion& region,
                               const PolarConfig& config);

}  // namespace branchpoint
