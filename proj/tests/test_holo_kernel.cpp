#include <cmath>

#include "branchpoint/errors.hpp"
#include "branchpoint/holo_kernel.hpp"
#include "doctest.h"

using namespace branchpoint;

TEST_CASE("principal log and powers") {
  CHECK(std::abs(principal_log(1.0)) == 0.0);
  CHECK(std::abs(principal_log(Complex(0, 1)) - Complex(0, kPi / 2)) < 1e-15);
  CHECK_THROWS_AS(principal_log(Complex(-1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(principal_log(0.0), DomainError);
  CHECK(std::abs(complex_pow(4.0, -0.5) - 0.5) < 1e-15);
  CHECK(std::abs(complex_pow(Complex(0, 1), -0.5) - Complex(std::sqrt(0.5), -std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(complex_pow(Complex(0, 2), 2.0) + 4.0) < 1e-14);
  for (double x = -2; x <= 2; x += 0.37)
    for (double y = -3.1; y <= 3.1; y += 0.41) {
      CHECK(std::abs(principal_log(std::exp(Complex(x, y))) - Complex(x, y)) < 1e-14);
      CHECK(std::abs(complex_pow(Complex(x, y), 1.0) - Complex(x, y)) < 1e-14);
    }
}

TEST_CASE("block a") {
  auto a1 = block_a(1.0, 0.5);
  CHECK(a1.log_mag == doctest::Approx(-1.0));
  CHECK(a1.reduced_arg() == doctest::Approx(0.0));
  CHECK(block_a(0.01, 0.5).log_mag == doctest::Approx(-10.0));
  auto ai = block_a(Complex(0, 1), 0.5);
  CHECK(ai.log_mag == doctest::Approx(-std::cos(kPi / 4)));
  CHECK(ai.reduced_arg() == doctest::Approx(std::sin(kPi / 4)));
}

TEST_CASE("|a| <= 1 on the closed right half-plane") {
  for (double alpha : {0.3, 0.5, 0.9})
    for (double th = -kPi / 2; th <= kPi / 2 + 1e-12; th += kPi / 40)
      for (double r : {1e-3, 0.1, 1.0, 10.0}) CHECK(block_a(std::polar(r, th), alpha).log_mag <= 1e-15);
}

TEST_CASE("block b") {
  CHECK(block_b(std::exp(kPi / 2), 0.5).is_zero());
  CHECK(lc_abs(block_b(1.0, 0.5)) == doctest::Approx(std::exp(-1.0)));
  const double alpha = 0.4;
  auto v = block_b(std::exp(-kPi), alpha);
  CHECK(v.log_mag == doctest::Approx(-std::exp(alpha * kPi)));
  CHECK(std::abs(v.reduced_arg()) == doctest::Approx(kPi));
}

TEST_CASE("log-form arithmetic") {
  auto one = lc_mul(LogComplex::one(), LogComplex::one());
  CHECK(one.log_mag == 0.0);
  CHECK(one.arg == 0.0);
  auto tiny = lc_mul({-500.0, 0.0}, {-600.0, 0.0});
  CHECK(tiny.log_mag == -1100.0);
  CHECK(lc_abs({-1.0, kPi}) == doctest::Approx(std::exp(-1.0)));
  CHECK(lc_mul(LogComplex::zero(), {5.0, 1.0}).is_zero());
  CHECK(lc_to_complex({-800.0, 0.3}) == Complex(0.0, 0.0));
  LogComplex x{-1.3, 2.9}, y{0.7, -2.2}, z{4.1, 3.3};
  auto l = lc_mul(lc_mul(x, y), z), r = lc_mul(x, lc_mul(y, z));
  CHECK(l.log_mag == doctest::Approx(r.log_mag).epsilon(1e-15));
  CHECK(reduce_angle(l.arg) == doctest::Approx(reduce_angle(r.arg)).epsilon(1e-15));
  CHECK(lc_mul(x, y).log_mag == lc_mul(y, x).log_mag);
  auto w = Complex(-0.4, 1.7);
  CHECK(std::abs(lc_to_complex(LogComplex::from_complex(w)) - w) < 1e-15);
}

TEST_CASE("reduce_angle lands in (-pi, pi]") {
  CHECK(reduce_angle(kPi) == doctest::Approx(kPi));
  CHECK(reduce_angle(-kPi) == doctest::Approx(kPi));
  CHECK(reduce_angle(7.0) == doctest::Approx(7.0 - 2 * kPi));
}

TEST_CASE("derivatives of the blocks") {
  for (Complex z : {Complex(0.4, 0.1), Complex(1.3, -0.7)}) {
    const double alpha = 0.6, h = 1e-6;
    auto fd_a = (lc_to_complex(block_a(z + h, alpha)) - lc_to_complex(block_a(z - h, alpha))) / (2 * h);
    CHECK(std::abs(lc_to_complex(block_a_derivative(z, alpha)) - fd_a) < 1e-8);
    auto fd_b = (lc_to_complex(block_b(z + h, alpha)) - lc_to_complex(block_b(z - h, alpha))) / (2 * h);
    CHECK(std::abs(lc_to_complex(block_b_derivative(z, alpha)) - fd_b) < 1e-8);
  }
}

TEST_CASE("cosine zeros snap to exact zero") {
  CHECK(log_cos(kPi / 2).is_zero());
  CHECK(log_cos(-41.5 * kPi).is_zero());
  CHECK_FALSE(log_cos(kPi / 2 + 1e-9).is_zero());
  CHECK(cos_residual(kPi / 2) < 1e-15);
}
