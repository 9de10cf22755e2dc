#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "branchpoint/cantor_set.hpp"
#include "branchpoint/eval_point.hpp"
#include "branchpoint/holo_kernel.hpp"
#include "branchpoint/kernels.hpp"

namespace branchpoint {

inline constexpr int kDefaultMaxGen = 18;
inline constexpr int kMaxSeriesGen = 40;
/// |G| <= exp(pi * sum 2^k b_k) = exp(pi^3 / 6).
inline constexpr double kLogUniformGBound = kPi * kPi * kPi / 6.0;

/// Coefficients a_k = b_k = 2^{-k}/k^2, exponents alpha_k = alphaBase (s < 1)
/// or 1 - k^{-1/3}/2 (s = 1), truncated at generation K.
class SeriesParams {
 public:
  /// alpha_base defaults to (1 + s)/2 and is ignored for s = 1.
  SeriesParams(HausdorffParam s, std::optional<double> alpha_base = std::nullopt, int max_gen = kDefaultMaxGen);

  HausdorffParam s() const noexcept { return s_; }
  double alpha_base() const noexcept { return alpha_base_; }
  int max_gen() const noexcept { return max_gen_; }
  bool uniform_alpha() const noexcept { return !s_.critical(); }

  double a(int k) const;
  double b(int k) const { return a(k); }
  double alpha(int k) const;

  SeriesParams with_max_gen(int max_gen) const { return SeriesParams(s_, alpha_base_, max_gen); }

 private:
  HausdorffParam s_;
  double alpha_base_;
  int max_gen_;
};

/// Sum_{k > K} 2^k a_k = pi^2/6 - sum_{k <= K} 1/k^2.
double coefficient_tail(int max_gen);

/// Immutable evaluation context: parameters, a Cantor set used for distance
/// brackets, and precomputed far-field tables for F and F'.
class FgModel {
 public:
  /// dist_depth <= 0 picks min(K, 20).
  explicit FgModel(SeriesParams params, int dist_depth = 0);
  FgModel(SeriesParams params, std::shared_ptr<const CantorSet> cs);

  const SeriesParams& params() const noexcept { return params_; }
  const CantorSet& cantor() const noexcept { return *cs_; }
  const GenerationTable& table() const noexcept { return table_; }
  int max_gen() const noexcept { return params_.max_gen(); }

  double a(int k) const { return coef_[k]; }
  double alpha(int k) const { return alpha_[k]; }

  kernels::PowerSeriesData power_data() const;
  kernels::PowerSeriesData derivative_power_data() const;
  kernels::CosProductData cos_data() const;

  struct Group {
    double alpha = 0.0;
    std::vector<double> binom_f;       // binom(-alpha, n)
    std::vector<double> binom_d;       // binom(-alpha-1, n)
    std::vector<std::vector<double>> moment;  // [j][n]
    std::vector<double> weight;        // [j]: sum_k |c_k| 2^{k-j}
  };
  const std::vector<Group>& groups() const noexcept { return groups_; }

 private:
  void build();

  SeriesParams params_;
  std::shared_ptr<const CantorSet> cs_;
  GenerationTable table_;
  std::vector<double> coef_;
  std::vector<double> alpha_;
  std::vector<double> dcoef_;   // -alpha_k a_k
  std::vector<double> dalpha_;  // alpha_k + 1
  std::vector<double> half_;
  std::vector<Group> groups_;
};

/// Lower bounds for the distances relevant at a point.
struct PointDistance {
  double log_point = 0.0;  // log of a lower bound for dist(z, -i E_s)
  double cut = 0.0;        // lower bound for dist(z, R_- - i E_s)
};

PointDistance point_distance(const FgModel& model, const EvalPoint& p);

struct TruncatedComplex {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
  double d_lower = 0.0;
};

struct TruncatedValue {
  LogComplex value;
  double tail_bound = 0.0;
  double log_tail_bound = kLogUniformGBound;  // log of tail_bound, usable when it underflows
  bool valid = true;
  double d_lower = 0.0;
};

struct FAndDerivative {
  Complex F{0.0, 0.0};
  Complex dF{0.0, 0.0};
  double expansion_error_F = 0.0;
  double expansion_error_dF = 0.0;
};

/// F and F' by hierarchical summation: clusters of the Cantor tree far from
/// the point are summed through binomial expansions with precomputed
/// self-similar moments; near clusters are opened down to generation K.
FAndDerivative F_tree(const FgModel& model, const EvalPoint& p, bool with_derivative = true);
/// Direct summation reference (serial or OpenMP).
Complex F_direct(const FgModel& model, const EvalPoint& p, bool parallel = false);
Complex dF_direct(const FgModel& model, const EvalPoint& p, bool parallel = false);

TruncatedComplex eval_F(const FgModel& model, const EvalPoint& p);
TruncatedComplex eval_F(const FgModel& model, Complex z);

struct GOptions {
  std::vector<int> generations;  // empty: all 1..K
  bool descending = false;
  bool parallel = false;
};

TruncatedValue eval_G(const FgModel& model, const EvalPoint& p, const GOptions& options = {});
TruncatedValue eval_G(const FgModel& model, Complex z, const GOptions& options = {});
/// Tail of the cosine product in log form: T with |G_true/G_K - 1| <= expm1(T).
double log_product_tail(const FgModel& model, double d_point, double abs_z);

TruncatedValue eval_f(const FgModel& model, const EvalPoint& p);
TruncatedValue eval_f(const FgModel& model, Complex z);
TruncatedValue eval_g(const FgModel& model, const EvalPoint& p);
TruncatedValue eval_g(const FgModel& model, Complex z);

/// g = G f together with g'/g = G'/G - F'.
struct GWithLogDerivative {
  LogComplex g;
  Complex log_derivative{0.0, 0.0};
};
GWithLogDerivative g_with_log_derivative(const FgModel& model, const EvalPoint& p);

struct GZero {
  TauIndex tau;
  int m = 1;
  double y = 0.0;       // y_tau
  double log_re = 0.0;  // -(m pi - pi/2)/b_k

  Complex point() const noexcept { return {std::exp(log_re), -y}; }
  EvalPoint eval_point() const noexcept { return EvalPoint::anchored_at(y, log_re); }
};

/// -i y_tau + exp(-(m pi - pi/2)/b_k).
GZero zero_of_g(const FgModel& model, TauIndex tau, int m);
/// |cos(b_k ln(z + i y_tau))| at the zero, without the exact-zero snap.
double zero_cos_residual(const FgModel& model, const GZero& zero);

struct CauchyConfig {
  int initial_nodes = 16;
  int max_nodes = 1 << 14;
  double rel_tol = 1e-9;
  bool parallel = false;
};

struct DerivativeResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  LogComplex log_value;
  double log_error = kLogUniformGBound;
  int nodes = 0;
  bool converged = false;
};

/// m-th derivative by the trapezoid rule on |w - z| = radius for a function
/// given in log form. Node counts double until successive estimates agree.
DerivativeResult cauchy_derivative(const std::function<LogComplex(Complex)>& fn, Complex z, int m, double radius,
                                   const CauchyConfig& config = {});

enum class Evaluator { F, f, g, a, b };

/// Derivative of one of the model functions; radius defaults to half the cut
/// distance, capped by Re(z)/2 for points of the right half-plane. The a and
/// b building blocks use alpha_base.
DerivativeResult derivative(const FgModel& model, Evaluator which, Complex z, int m,
                            std::optional<double> radius = std::nullopt, const CauchyConfig& config = {});

struct DecayRow {
  Complex z{0.0, 0.0};
  double d = 0.0;
  double re_F = 0.0;
  double re_F_plus_m_log_d = 0.0;
  double log_abs_f_m = 0.0;  // log |f^{(m)}(z)|
  double log_abs_g_m = 0.0;
  bool converged = false;
};

std::vector<DecayRow> boundary_decay_check(const FgModel& model, int m, const std::vector<Complex>& probes);

}  // namespace branchpoint
