#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

// Independent reference implementations used only by the tests.
namespace oracle {

using Cld = std::complex<long double>;
using Cd = std::complex<double>;

inline long double length(double s, int k) {
  const long double kk = k;
  if (s < 1.0) return std::exp2(-kk / s);
  return std::exp2(-kk - std::cbrt(kk * kk));
}

// Left endpoint of E_{k,l} from the binary digits of l - 1: digit j selects
// the right child at generation j, which shifts by the generation-j gap.
inline long double left_endpoint(double s, int k, std::int64_t l) {
  long double y = 0.0L;
  const std::int64_t bits = l - 1;
  for (int j = 1; j <= k; ++j)
    if ((bits >> (k - j)) & 1) y += length(s, j - 1) - length(s, j);
  return y;
}

inline long double coefficient(int k) { return std::exp2(-static_cast<long double>(k)) / (static_cast<long double>(k) * k); }

inline long double exponent(double s, double alpha_base, int k) {
  if (s < 1.0) return alpha_base;
  return 1.0L - 0.5L / std::cbrt(static_cast<long double>(k));
}

inline Cld principal_pow(Cld w, long double e) { return std::exp(e * std::log(w)); }

// F_K(z) by plain summation in long double.
inline Cd series_F(double s, double alpha_base, int K, Cd z) {
  Cld sum = 0;
  for (int k = 1; k <= K; ++k) {
    Cld gen = 0;
    for (std::int64_t l = 1; l <= (std::int64_t{1} << k); ++l) {
      const Cld w(z.real(), static_cast<long double>(z.imag()) + left_endpoint(s, k, l));
      gen += principal_pow(w, -exponent(s, alpha_base, k));
    }
    sum += coefficient(k) * gen;
  }
  return Cd(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

// log G_K(z) (principal parts summed) in long double; magnitude only is compared.
inline long double series_log_abs_G(double s, int K, Cd z) {
  long double acc = 0;
  for (int k = 1; k <= K; ++k) {
    for (std::int64_t l = 1; l <= (std::int64_t{1} << k); ++l) {
      const Cld w(z.real(), static_cast<long double>(z.imag()) + left_endpoint(s, k, l));
      acc += std::log(std::abs(std::cos(coefficient(k) * std::log(w))));
    }
  }
  return acc;
}

inline double binom(int n, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
  return c;
}

// m-th derivative by central differences along the real direction with
// Richardson extrapolation (Ridders' tableau).
struct FdResult {
  Cd value;
  double error = std::numeric_limits<double>::infinity();
};

inline FdResult ridders(const std::function<Cd(Cd)>& fn, Cd z, int m, double h0) {
  if (m == 0) return {fn(z), 0.0};
  auto stencil = [&](double h) {
    Cd acc = 0;
    for (int j = 0; j <= m; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom(m, j) * fn(z + Cd((0.5 * m - j) * h, 0.0));
    }
    return acc / std::pow(h, m);
  };
  constexpr int kMax = 12;
  constexpr double con = 1.4, con2 = con * con;
  Cd a[kMax][kMax];
  FdResult best;
  double h = h0;
  a[0][0] = stencil(h);
  for (int i = 1; i < kMax; ++i) {
    h /= con;
    a[i][0] = stencil(h);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[i][j] = (a[i][j - 1] * fac - a[i - 1][j - 1]) / (fac - 1.0);
      fac *= con2;
      const double err = std::max(std::abs(a[i][j] - a[i][j - 1]), std::abs(a[i][j] - a[i - 1][j - 1]));
      if (err <= best.error) {
        best.error = err;
        best.value = a[i][j];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

}  // namespace oracle
