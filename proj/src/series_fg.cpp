#include "branchpoint/series_fg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "branchpoint/errors.hpp"

namespace branchpoint {

namespace {

constexpr int kMaxOrder = 40;
constexpr double kExpandRatio = 0.25;
constexpr double kExpandArgLimit = kPi - 0.3;
constexpr double kSeriesTol = 1e-17;

// C = -ln cos(pi/4) / (pi/4), the slope bound of -ln cos on [0, pi/4].
const double kLogCosSlope = std::log(std::sqrt(2.0)) / (kPi / 4.0);

std::vector<std::vector<double>> pascal(int n) {
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0.0);
  }
  return c;
}

std::vector<double> negative_binomial(double beta, int n) {
  // binom(-beta, i), i = 0..n
  std::vector<double> out(n + 1);
  out[0] = 1.0;
  for (int i = 1; i <= n; ++i) out[i] = out[i - 1] * (-beta - (i - 1)) / i;
  return out;
}

int expansion_order(double t, double& bound) {
  const double denom = (1.0 - t) * (1.0 - t);
  double tp = t;  // t^{p+1} for p = 0
  for (int p = 0; p <= kMaxOrder; ++p) {
    bound = (p + 2) * tp / denom;
    if (bound <= kSeriesTol) return p;
    tp *= t;
  }
  return kMaxOrder;
}

struct TreeAcc {
  Complex F{0.0, 0.0};
  Complex dF{0.0, 0.0};
  double errF = 0.0;
  double errD = 0.0;
};

class TreeWalker {
 public:
  TreeWalker(const FgModel& model, const EvalPoint& p, bool wd) : m_(model), p_(p), wd_(wd) {}

  void visit(int j, double y, TreeAcc& acc) const {
    const GenerationTable& t = m_.table();
    const double h = 0.5 * t.length[j];
    const Complex wc = p_.shift(y + h);
    const double aw = std::abs(wc);
    const double ratio = aw > 0.0 ? h / aw : std::numeric_limits<double>::infinity();
    if (ratio <= kExpandRatio && std::abs(std::arg(wc)) <= kExpandArgLimit) {
      expand(j, wc, aw, ratio, acc);
      return;
    }
    if (j >= 1) {
      const Complex lw = p_.log_shift(y);
      const double al = m_.alpha(j);
      acc.F += m_.a(j) * std::exp(-al * lw);
      if (wd_) acc.dF += -al * m_.a(j) * std::exp(-(al + 1.0) * lw);
    }
    if (j < m_.max_gen()) {
      visit(j + 1, y, acc);
      visit(j + 1, y + t.gap[j + 1], acc);
    }
  }

 private:
  void expand(int j, Complex wc, double aw, double ratio, TreeAcc& acc) const {
    double bound = 0.0;
    const int order = expansion_order(ratio, bound);
    const Complex x = Complex(0.0, 0.5 * m_.table().length[j]) / wc;
    const Complex lwc{std::log(aw), std::arg(wc)};
    for (const FgModel::Group& g : m_.groups()) {
      const double wgt = g.weight[j];
      if (wgt == 0.0) continue;
      const std::vector<double>& mom = g.moment[j];
      Complex s{0.0, 0.0};
      for (int n = order; n >= 0; --n) s = s * x + g.binom_f[n] * mom[n];
      acc.F += std::exp(-g.alpha * lwc) * s;
      acc.errF += wgt * std::exp(-g.alpha * lwc.real()) * bound;
      if (wd_) {
        Complex sd{0.0, 0.0};
        for (int n = order; n >= 0; --n) sd = sd * x + g.binom_d[n] * mom[n];
        acc.dF += -g.alpha * std::exp(-(g.alpha + 1.0) * lwc) * sd;
        acc.errD += g.alpha * wgt * std::exp(-(g.alpha + 1.0) * lwc.real()) * bound;
      }
    }
  }

  const FgModel& m_;
  const EvalPoint& p_;
  bool wd_;
};

void require_model_point(const PointDistance& pd) {
  if (pd.log_point == -std::numeric_limits<double>::infinity()) {
    throw DomainError("point lies on -iE_s at the resolved depth (distance lower bound is 0)");
  }
}

}  // namespace

SeriesParams::SeriesParams(HausdorffParam s, std::optional<double> alpha_base, int max_gen)
    : s_(s), alpha_base_(0.0), max_gen_(max_gen) {
  if (max_gen < 1 || max_gen > kMaxSeriesGen) {
    throw ValidationError("truncation generation K must lie in [1, " + std::to_string(kMaxSeriesGen) + "]");
  }
  if (s.critical()) {
    alpha_base_ = alpha_base.value_or(0.75);
    if (!(alpha_base_ > 0.0 && alpha_base_ < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  } else {
    alpha_base_ = alpha_base.value_or(0.5 * (1.0 + s.value()));
    if (!(alpha_base_ > s.value() && alpha_base_ < 1.0)) {
      throw ValidationError("alpha must satisfy s < alpha < 1, got alpha = " + std::to_string(alpha_base_) +
                            " for s = " + std::to_string(s.value()));
    }
  }
}

double SeriesParams::a(int k) const {
  if (k < 1) throw ValidationError("coefficient index k must be >= 1");
  const double kd = static_cast<double>(k);
  return std::exp2(-kd) / (kd * kd);
}

double SeriesParams::alpha(int k) const {
  if (k < 1) throw ValidationError("exponent index k must be >= 1");
  if (s_.critical()) return 1.0 - 0.5 / std::cbrt(static_cast<double>(k));
  return alpha_base_;
}

double coefficient_tail(int max_gen) {
  double partial = 0.0;
  for (int k = max_gen; k >= 1; --k) partial += 1.0 / (static_cast<double>(k) * k);
  return std::max(0.0, kPi * kPi / 6.0 - partial);
}

FgModel::FgModel(SeriesParams params, int dist_depth) : params_(params) {
  const int depth = dist_depth > 0 ? dist_depth : std::min(params.max_gen(), 20);
  cs_ = std::make_shared<const CantorSet>(build_cantor(params.s(), depth));
  build();
}

FgModel::FgModel(SeriesParams params, std::shared_ptr<const CantorSet> cs) : params_(params), cs_(std::move(cs)) {
  if (!cs_) throw ValidationError("Cantor set pointer is null");
  if (!(cs_->s() == params.s())) throw ValidationError("Cantor set and series use different s");
  build();
}

void FgModel::build() {
  const int K = params_.max_gen();
  table_ = make_generation_table(params_.s(), K);
  coef_.assign(K + 1, 0.0);
  alpha_.assign(K + 1, 0.0);
  dcoef_.assign(K + 1, 0.0);
  dalpha_.assign(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    coef_[k] = params_.a(k);
    alpha_[k] = params_.alpha(k);
    dcoef_[k] = -alpha_[k] * coef_[k];
    dalpha_[k] = alpha_[k] + 1.0;
  }

  const auto c = pascal(kMaxOrder);
  auto make_group = [&](double alpha, const std::vector<double>& ck) {
    Group g;
    g.alpha = alpha;
    g.binom_f = negative_binomial(alpha, kMaxOrder);
    g.binom_d = negative_binomial(alpha + 1.0, kMaxOrder);
    g.moment.assign(K + 2, std::vector<double>(kMaxOrder + 1, 0.0));
    g.weight.assign(K + 2, 0.0);
    for (int j = K; j >= 0; --j) {
      std::vector<double>& mj = g.moment[j];
      const std::vector<double>& next = g.moment[j + 1];
      if (j < K) {
        const double rho = table_.length[j + 1] / table_.length[j];
        const double eta = 1.0 - rho;
        for (int n = 0; n <= kMaxOrder; ++n) {
          double acc = 0.0;
          double rm = 1.0;
          for (int m = 0; m <= n; ++m) {
            if ((n - m) % 2 == 0) acc += c[n][m] * rm * 2.0 * std::pow(eta, n - m) * next[m];
            rm *= rho;
          }
          mj[n] = acc;
        }
      }
      if (j >= 1 && ck[j] != 0.0) {
        for (int n = 0; n <= kMaxOrder; ++n) mj[n] += (n % 2 == 0 ? ck[j] : -ck[j]);
      }
      g.weight[j] = (j >= 1 ? std::abs(ck[j]) : 0.0) + 2.0 * g.weight[j + 1];
    }
    return g;
  };

  groups_.clear();
  if (params_.uniform_alpha()) {
    groups_.push_back(make_group(params_.alpha_base(), coef_));
  } else {
    for (int k = 1; k <= K; ++k) {
      std::vector<double> ck(K + 1, 0.0);
      ck[k] = coef_[k];
      groups_.push_back(make_group(alpha_[k], ck));
    }
  }
}

kernels::PowerSeriesData FgModel::power_data() const { return {&table_, max_gen(), coef_, alpha_}; }

kernels::PowerSeriesData FgModel::derivative_power_data() const { return {&table_, max_gen(), dcoef_, dalpha_}; }

kernels::CosProductData FgModel::cos_data() const { return {&table_, max_gen(), coef_, {}, false}; }

PointDistance point_distance(const FgModel& model, const EvalPoint& p) {
  const double y0 = p.anchored ? p.anchor_y : -p.z.imag();
  const double re = p.anchored ? std::exp(p.log_re) : p.z.real();
  const double dy = dist_to_set(model.cantor(), y0).lower;
  PointDistance out;
  if (dy > 0.0) {
    out.log_point = std::log(std::hypot(re, dy));
  } else if (p.anchored) {
    out.log_point = p.log_re;
  } else {
    out.log_point = re == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(re));
  }
  out.cut = re > 0.0 ? std::hypot(re, dy) : dy;
  return out;
}

FAndDerivative F_tree(const FgModel& model, const EvalPoint& p, bool with_derivative) {
  TreeAcc acc;
  TreeWalker(model, p, with_derivative).visit(0, 0.0, acc);
  return {acc.F, acc.dF, acc.errF, acc.errD};
}

Complex F_direct(const FgModel& model, const EvalPoint& p, bool parallel) {
  const auto d = model.power_data();
  return parallel ? kernels::power_sum_parallel(d, p) : kernels::power_sum_serial(d, p);
}

Complex dF_direct(const FgModel& model, const EvalPoint& p, bool parallel) {
  const auto d = model.derivative_power_data();
  return parallel ? kernels::power_sum_parallel(d, p) : kernels::power_sum_serial(d, p);
}

TruncatedComplex eval_F(const FgModel& model, const EvalPoint& p) {
  const PointDistance pd = point_distance(model, p);
  require_model_point(pd);
  const FAndDerivative t = F_tree(model, p, false);
  if (!std::isfinite(t.F.real()) || !std::isfinite(t.F.imag())) {
    throw NumericalError("F is not representable at this point");
  }
  TruncatedComplex out;
  out.value = t.F;
  out.d_lower = std::exp(pd.log_point);
  out.tail_bound = std::exp(std::max(0.0, -pd.log_point)) * coefficient_tail(model.max_gen()) + t.expansion_error_F;
  return out;
}

TruncatedComplex eval_F(const FgModel& model, Complex z) { return eval_F(model, EvalPoint::at(z)); }

double log_product_tail(const FgModel& model, double d_point, double abs_z) {
  const int K = model.max_gen();
  const double tail = coefficient_tail(K);
  if (tail == 0.0) return 0.0;
  const double dd = std::min(d_point, 1.0 / (abs_z + 1.0));
  if (!(dd > 0.0)) return std::numeric_limits<double>::infinity();
  const double lnd = -std::log(dd);
  if (model.params().b(K + 1) * lnd > kPi / 4.0) return std::numeric_limits<double>::infinity();
  return (kPi + lnd * (kLogCosSlope + 1.0)) * tail;
}

TruncatedValue eval_G(const FgModel& model, const EvalPoint& p, const GOptions& options) {
  kernels::CosProductData d = model.cos_data();
  d.generations = options.generations;
  d.descending = options.descending;
  const kernels::CosProduct prod =
      options.parallel ? kernels::cos_product_parallel(d, p) : kernels::cos_product_serial(d, p);
  const PointDistance pd = point_distance(model, p);
  TruncatedValue out;
  out.value = prod.value;
  out.d_lower = std::exp(pd.log_point);
  if (prod.value.is_zero()) {
    out.tail_bound = 0.0;
    out.log_tail_bound = -std::numeric_limits<double>::infinity();
    return out;
  }
  require_model_point(pd);
  if (!options.generations.empty()) {
    out.tail_bound = 0.0;
    out.log_tail_bound = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double T = log_product_tail(model, out.d_lower, std::abs(p.z));
  out.valid = std::isfinite(T);
  out.log_tail_bound = prod.value.log_mag + std::log(std::expm1(T));
  out.tail_bound = std::exp(out.log_tail_bound);
  return out;
}

TruncatedValue eval_G(const FgModel& model, Complex z, const GOptions& options) {
  return eval_G(model, EvalPoint::at(z), options);
}

TruncatedValue eval_f(const FgModel& model, const EvalPoint& p) {
  const TruncatedComplex F = eval_F(model, p);
  TruncatedValue out;
  out.value = {-F.value.real(), -F.value.imag()};
  out.d_lower = F.d_lower;
  out.log_tail_bound = out.value.log_mag + std::log(std::expm1(F.tail_bound));
  out.tail_bound = std::exp(out.log_tail_bound);
  out.valid = F.tail_bound <= 0.1;
  return out;
}

TruncatedValue eval_f(const FgModel& model, Complex z) { return eval_f(model, EvalPoint::at(z)); }

TruncatedValue eval_g(const FgModel& model, const EvalPoint& p) {
  const TruncatedValue G = eval_G(model, p);
  if (G.value.is_zero()) return G;
  const TruncatedComplex F = eval_F(model, p);
  const double T = log_product_tail(model, F.d_lower, std::abs(p.z));
  TruncatedValue out;
  out.value = lc_mul(G.value, {-F.value.real(), -F.value.imag()});
  out.d_lower = F.d_lower;
  out.log_tail_bound = out.value.log_mag + std::log(std::expm1(T + F.tail_bound));
  out.tail_bound = std::exp(out.log_tail_bound);
  out.valid = G.valid && F.tail_bound <= 0.1;
  return out;
}

TruncatedValue eval_g(const FgModel& model, Complex z) { return eval_g(model, EvalPoint::at(z)); }

GWithLogDerivative g_with_log_derivative(const FgModel& model, const EvalPoint& p) {
  const kernels::CosProduct prod = kernels::cos_product_serial(model.cos_data(), p);
  GWithLogDerivative out;
  if (prod.value.is_zero()) return out;
  const FAndDerivative t = F_tree(model, p, true);
  out.g = lc_mul(prod.value, {-t.F.real(), -t.F.imag()});
  out.log_derivative = prod.log_derivative - t.dF;
  return out;
}

GZero zero_of_g(const FgModel& model, TauIndex tau, int m) {
  if (tau.k < 1 || tau.k > model.max_gen()) throw ValidationError("zero generation must satisfy 1 <= k <= K");
  if (tau.l < 1 || tau.l > (std::int64_t{1} << tau.k)) throw ValidationError("zero position l out of range");
  if (m < 1) throw ValidationError("zero index m must be >= 1");
  GZero z;
  z.tau = tau;
  z.m = m;
  z.y = model.table().left_endpoint(tau.k, tau.l);
  z.log_re = -(m * kPi - kPi / 2.0) / model.params().b(tau.k);
  return z;
}

double zero_cos_residual(const FgModel& model, const GZero& zero) {
  const Complex lw = zero.eval_point().log_shift(zero.y);
  return cos_residual(model.params().b(zero.tau.k) * lw);
}

DerivativeResult cauchy_derivative(const std::function<LogComplex(Complex)>& fn, Complex z, int m, double radius,
                                   const CauchyConfig& config) {
  if (m < 0) throw ValidationError("derivative order must be non-negative");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("contour radius must be positive");
  if (config.initial_nodes < 4 || config.max_nodes < config.initial_nodes) {
    throw ValidationError("invalid contour node counts");
  }
  const double log_scale_base = std::lgamma(m + 1.0) - m * std::log(radius);

  auto estimate = [&](const std::vector<LogComplex>& v, double& log_scale) {
    const int n = static_cast<int>(v.size());
    double mx = -std::numeric_limits<double>::infinity();
    for (const LogComplex& x : v) mx = std::max(mx, x.log_mag);
    if (mx == -std::numeric_limits<double>::infinity()) {
      log_scale = 0.0;
      return Complex(0.0, 0.0);
    }
    Complex s{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (v[j].is_zero()) continue;
      const long long idx = (static_cast<long long>(m) * j) % n;
      const double phase = v[j].arg - 2.0 * kPi * static_cast<double>(idx) / n;
      s += std::polar(std::exp(v[j].log_mag - mx), reduce_angle(phase));
    }
    log_scale = mx + log_scale_base;
    return s / static_cast<double>(n);
  };

  int n = config.initial_nodes;
  std::vector<LogComplex> vals(n);
  kernels::evaluate_on_circle(fn, z, radius, n, 0, 1, vals, config.parallel);
  double ls_prev = 0.0;
  Complex prev = estimate(vals, ls_prev);

  DerivativeResult out;
  while (true) {
    const int n2 = 2 * n;
    if (n2 > config.max_nodes) break;
    std::vector<LogComplex> next(n2);
    for (int j = 0; j < n; ++j) next[2 * j] = vals[j];
    kernels::evaluate_on_circle(fn, z, radius, n2, 1, 2, next, config.parallel);
    vals.swap(next);
    n = n2;
    double ls = 0.0;
    const Complex cur = estimate(vals, ls);
    const Complex prev_rescaled = (prev == Complex(0.0, 0.0)) ? prev : prev * std::exp(ls_prev - ls);
    const double diff = std::abs(cur - prev_rescaled);
    out.value = cur;
    out.log_value = cur == Complex(0.0, 0.0) ? LogComplex::zero()
                                              : LogComplex{ls + std::log(std::abs(cur)), std::arg(cur)};
    out.log_error = diff > 0.0 ? ls + std::log(diff) : -std::numeric_limits<double>::infinity();
    out.nodes = n;
    prev = cur;
    ls_prev = ls;
    if (diff <= config.rel_tol * std::abs(cur) + 1e-14) {
      out.converged = true;
      break;
    }
  }
  if (out.nodes == 0) {
    out.log_value = prev == Complex(0.0, 0.0) ? LogComplex::zero()
                                               : LogComplex{ls_prev + std::log(std::abs(prev)), std::arg(prev)};
    out.log_error = std::numeric_limits<double>::infinity();
    out.nodes = n;
  }
  out.value = lc_to_complex(out.log_value);
  out.error = std::exp(out.log_error);
  return out;
}

DerivativeResult derivative(const FgModel& model, Evaluator which, Complex z, int m, std::optional<double> radius,
                            const CauchyConfig& config) {
  double dist = 0.0;
  if (which == Evaluator::a || which == Evaluator::b) {
    dist = z.real() > 0.0 ? std::abs(z) : std::abs(z.imag());
  } else {
    dist = point_distance(model, EvalPoint::at(z)).cut;
  }
  if (!(dist > 0.0)) throw DomainError("point lies on the singular set");
  double rho = 0.5 * dist;
  if (z.real() > 0.0) rho = std::min(rho, 0.5 * z.real());
  if (radius) rho = *radius;
  if (!(rho < dist)) throw ValidationError("contour radius must be smaller than the distance to the singular set");

  const double alpha = model.params().alpha_base();
  std::function<LogComplex(Complex)> fn;
  switch (which) {
    case Evaluator::F:
      fn = [&model](Complex w) { return LogComplex::from_complex(F_tree(model, EvalPoint::at(w), false).F); };
      break;
    case Evaluator::f:
      fn = [&model](Complex w) {
        const Complex F = F_tree(model, EvalPoint::at(w), false).F;
        return LogComplex{-F.real(), -F.imag()};
      };
      break;
    case Evaluator::g:
      fn = [&model](Complex w) {
        const EvalPoint p = EvalPoint::at(w);
        const LogComplex G = kernels::cos_product_serial(model.cos_data(), p).value;
        if (G.is_zero()) return G;
        const Complex F = F_tree(model, p, false).F;
        return lc_mul(G, {-F.real(), -F.imag()});
      };
      break;
    case Evaluator::a:
      fn = [alpha](Complex w) { return block_a(w, alpha); };
      break;
    case Evaluator::b:
      fn = [alpha](Complex w) { return block_b(w, alpha); };
      break;
  }
  return cauchy_derivative(fn, z, m, rho, config);
}

std::vector<DecayRow> boundary_decay_check(const FgModel& model, int m, const std::vector<Complex>& probes) {
  if (m < 0) throw ValidationError("derivative order must be non-negative");
  std::vector<DecayRow> rows;
  rows.reserve(probes.size());
  for (const Complex& z : probes) {
    if (!(z.real() > 0.0)) throw ValidationError("decay probes must lie in the open right half-plane");
    DecayRow r;
    r.z = z;
    const TruncatedComplex F = eval_F(model, z);
    r.d = F.d_lower;
    r.re_F = F.value.real();
    r.re_F_plus_m_log_d = r.re_F + m * std::log(r.d);
    const DerivativeResult df = derivative(model, Evaluator::f, z, m);
    const DerivativeResult dg = derivative(model, Evaluator::g, z, m);
    r.log_abs_f_m = df.log_value.log_mag;
    r.log_abs_g_m = dg.log_value.log_mag;
    r.converged = df.converged && dg.converged;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace branchpoint
