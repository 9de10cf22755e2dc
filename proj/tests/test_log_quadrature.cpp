#include <cmath>
#include <vector>

#include "branchpoint/log_quadrature.hpp"
#include "branchpoint/polar_quadrature.hpp"
#include "doctest.h"

using namespace branchpoint;

TEST_CASE("log-space addition") {
  CHECK(log_add(kNegInf, 2.0) == 2.0);
  CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  CHECK(log_add(-1e4, -1e4) == doctest::Approx(-1e4 + std::log(2.0)));
  std::vector<double> xs{-2000.0, -2000.0, -2001.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(-2000.0 + std::log(2.0 + std::exp(-1.0))));
  CHECK(log_abs_diff(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("scaled sum keeps tiny magnitudes") {
  ScaledSum s;
  for (int i = 0; i < 1000; ++i) s.add(-1e4);
  CHECK(s.log_value() == doctest::Approx(-1e4 + std::log(1000.0)).epsilon(1e-14));
  s.add(-10.0);
  CHECK(s.log_value() == doctest::Approx(-10.0));
}

TEST_CASE("adaptive integration") {
  AdaptiveConfig cfg;
  std::vector<double> bp{0.0, 1.0};
  auto r = integrate_log([](double x) { return LogSample{-x, kNegInf}; }, bp, cfg);
  CHECK(r.converged);
  CHECK(std::exp(r.log_value) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  // underflowing integrand: int_0^1 exp(-1e4 - x)
  auto u = integrate_log([](double x) { return LogSample{-1e4 - x, kNegInf}; }, bp, cfg);
  CHECK(u.log_value == doctest::Approx(-1e4 + std::log(1.0 - std::exp(-1.0))).epsilon(1e-13));
  // integrable endpoint singularity x^{-1/2}
  auto sing = integrate_log([](double x) { return LogSample{-0.5 * std::log(x), kNegInf}; }, bp, cfg);
  CHECK(std::exp(sing.log_value) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("polar regions") {
  PolarConfig cfg;
  auto flat = [](Complex) { return 0.0; };
  DiskRegion full{Complex(0.3, -0.2), 0.7, false};
  CHECK(std::exp(integrate_disk_log(flat, full, cfg).log_value) == doctest::Approx(kPi * 0.49).epsilon(1e-12));
  CHECK(std::exp(integrate_arc_log(flat, full, cfg).log_value) == doctest::Approx(2 * kPi).epsilon(1e-12));
  DiskRegion half{0.0, 0.5, true};
  CHECK(std::exp(integrate_disk_log(flat, half, cfg).log_value) == doctest::Approx(kPi * 0.125).epsilon(1e-12));
  CHECK(std::exp(integrate_arc_log(flat, half, cfg).log_value) == doctest::Approx(kPi).epsilon(1e-12));
  auto angles = arc_angles(half);
  CHECK(angles.lo == doctest::Approx(-kPi / 2));
  CHECK(angles.hi == doctest::Approx(kPi / 2));
  // disk straddling the imaginary axis: area of the circular segment
  DiskRegion off{Complex(0.2, 0.0), 0.4, true};
  const double seg = 0.16 * std::acos(-0.5) + 0.2 * std::sqrt(0.16 - 0.04);
  CHECK(std::exp(integrate_disk_log(flat, off, cfg).log_value) == doctest::Approx(seg).epsilon(1e-10));
  CHECK(radial_limit(off, kPi) == doctest::Approx(0.2));
}

TEST_CASE("polar quadrature with a graded singular point") {
  PolarConfig cfg;
  cfg.singular_points = {Complex(0.1, 0.05)};
  // |z - p|^{-1} over the disk of radius 1 about p is 2 pi
  DiskRegion d{Complex(0.1, 0.05), 1.0, false};
  cfg.singular_center = true;
  auto r = integrate_disk_log([](Complex z) { return -std::log(std::abs(z - Complex(0.1, 0.05))); }, d, cfg);
  CHECK(std::exp(r.log_value) == doctest::Approx(2 * kPi).epsilon(1e-8));
}
