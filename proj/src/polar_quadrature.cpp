#include "branchpoint/polar_quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "branchpoint/errors.hpp"

namespace branchpoint {

namespace {

void validate(const DiskRegion& region) {
  if (!(region.radius > 0.0) || !std::isfinite(region.radius)) throw ValidationError("radius must be positive");
  if (region.half_plane && region.center.real() < 0.0) {
    throw ValidationError("half-plane regions need a center with Re >= 0");
  }
}

void add_graded(std::vector<double>& pts, double at, double width, double floor) {
  pts.push_back(at);
  for (double w = width; w > floor; w *= 0.5) {
    pts.push_back(at - w);
    pts.push_back(at + w);
  }
}

std::vector<double> clean(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double p : pts) {
    if (p > lo && p < hi) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double wrap_near(double phi, double lo, double hi) {
  // shift phi by multiples of 2 pi into [lo - pi, lo + pi + (hi - lo)] when possible
  while (phi < lo - 1e-15) phi += 2.0 * kPi;
  while (phi > hi + 1e-15) phi -= 2.0 * kPi;
  return phi;
}

std::vector<double> angular_breakpoints(const DiskRegion& region, const PolarConfig& config, AngleRange range,
                                        bool radial_kinks) {
  std::vector<double> pts;
  const double span = range.hi - range.lo;
  for (int i = 1; i < 4; ++i) pts.push_back(range.lo + span * i / 4.0);
  if (radial_kinks && region.half_plane && region.center.real() > 0.0 && region.center.real() < region.radius) {
    const double tm = std::acos(-region.center.real() / region.radius);
    pts.push_back(tm);
    pts.push_back(-tm);
  }
  for (const Complex& s : config.singular_points) {
    const Complex v = s - region.center;
    const double rho = std::abs(v);
    if (rho == 0.0 || rho > region.radius * (1.0 + 1e-12)) continue;
    const double phi = wrap_near(std::arg(v), range.lo, range.hi);
    add_graded(pts, phi, 0.25, config.grading_floor);
  }
  for (const Complex& s : config.boundary_points) {
    const Complex v = s - region.center;
    const double rho = std::abs(v);
    if (rho == 0.0 || rho > region.radius * (1.0 + 1e-12)) continue;
    const double phi = wrap_near(std::arg(v), range.lo, range.hi);
    add_graded(pts, phi, 0.25, config.grading_floor);
  }
  return clean(pts, range.lo, range.hi);
}

std::vector<double> radial_breakpoints(const DiskRegion& region, const PolarConfig& config, double theta,
                                       double rmax) {
  std::vector<double> pts;
  const double floor = config.grading_floor * region.radius;
  if (config.singular_center) {
    for (double w = 0.5 * rmax; w > floor; w *= 0.5) pts.push_back(w);
  }
  for (int i = 1; i < 4; ++i) pts.push_back(rmax * i / 4.0);
  const Complex dir = std::polar(1.0, theta);
  auto grade = [&](const Complex& s, double rel_floor) {
    const Complex v = s - region.center;
    const double rho = std::abs(v);
    if (rho == 0.0) return;
    const double along = v.real() * dir.real() + v.imag() * dir.imag();
    const double across = std::abs(v.real() * dir.imag() - v.imag() * dir.real());
    if (along <= 0.0 || across > 0.5 * rho || along > rmax + across) return;
    pts.push_back(along);
    for (double w = 0.25 * rho; w > std::max({across, floor, rel_floor * rho}); w *= 0.5) {
      pts.push_back(along - w);
      pts.push_back(along + w);
    }
  };
  for (const Complex& s : config.singular_points) grade(s, 0.0);
  for (const Complex& s : config.boundary_points) grade(s, config.boundary_grading);
  return clean(pts, 0.0, rmax);
}

}  // namespace

AngleRange arc_angles(const DiskRegion& region) {
  validate(region);
  if (!region.half_plane || region.center.real() >= region.radius) return {-kPi, kPi};
  const double tm = std::acos(-region.center.real() / region.radius);
  return {-tm, tm};
}

AngleRange disk_angles(const DiskRegion& region) {
  validate(region);
  if (!region.half_plane || region.center.real() > 0.0) return {-kPi, kPi};
  return {-kPi / 2.0, kPi / 2.0};
}

double radial_limit(const DiskRegion& region, double theta) {
  if (!region.half_plane) return region.radius;
  const double c = std::cos(theta);
  if (c >= 0.0) return region.radius;
  return std::min(region.radius, region.center.real() / (-c));
}

LogIntegral integrate_arc_log(const std::function<double(Complex)>& log_density, const DiskRegion& region,
                              const PolarConfig& config) {
  const AngleRange range = arc_angles(region);
  const std::vector<double> bp = angular_breakpoints(region, config, range, false);
  AdaptiveConfig ac;
  ac.rel_tol = config.rel_tol;
  ac.max_evaluations = config.max_outer_evaluations;
  ac.parallel_nodes = config.parallel;
  const Complex c = region.center;
  const double R = region.radius;
  return integrate_log(
      [&](double theta) { return LogSample{log_density(c + std::polar(R, theta)), kNegInf}; }, bp, ac);
}

LogIntegral integrate_disk_log(const std::function<double(Complex)>& log_density, const DiskRegion& region,
                               const PolarConfig& config) {
  const AngleRange range = disk_angles(region);
  const std::vector<double> bp = angular_breakpoints(region, config, range, true);
  AdaptiveConfig outer;
  outer.rel_tol = config.rel_tol;
  outer.max_evaluations = config.max_outer_evaluations;
  outer.parallel_nodes = config.parallel;
  AdaptiveConfig inner;
  inner.rel_tol = config.rel_tol * config.inner_factor;
  inner.max_evaluations = config.max_inner_evaluations;
  const Complex c = region.center;

  auto ray = [&](double theta) {
    const double rmax = radial_limit(region, theta);
    if (!(rmax > 0.0)) return LogSample{};
    const std::vector<double> rb = radial_breakpoints(region, config, theta, rmax);
    const Complex dir = std::polar(1.0, theta);
    const LogIntegral li = integrate_log(
        [&](double r) {
          if (r == 0.0) return LogSample{};
          return LogSample{log_density(c + r * dir) + std::log(r), kNegInf};
        },
        rb, inner);
    return LogSample{li.log_value, li.log_error};
  };
  return integrate_log(ray, bp, outer);
}

}  // namespace branchpoint
