#include "branchpoint/qvalued_frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "branchpoint/errors.hpp"

namespace branchpoint {

namespace {

constexpr std::size_t kMaxBoundaryPoints = 4096;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

QuadratureValue to_value(const LogIntegral& li) {
  QuadratureValue q;
  q.log_value = li.log_value;
  q.log_error = li.log_error;
  q.value = std::exp(li.log_value);
  q.error = std::exp(li.log_error);
  q.converged = li.converged;
  return q;
}

PolarConfig polar_config(const MinimizerSpec& spec, Complex center, double r, double rel_tol,
                         const FrequencyConfig& config) {
  PolarConfig pc;
  pc.rel_tol = rel_tol;
  pc.parallel = config.parallel;
  pc.max_outer_evaluations = config.max_evaluations;
  pc.max_inner_evaluations = config.max_evaluations;
  pc.singular_points = known_zeros(spec, center, r);
  pc.boundary_points = boundary_singularities(spec, center, r);
  for (const Complex& z : pc.singular_points) {
    if (z == center) pc.singular_center = true;
  }
  if (spec.domain == Domain::right_half_plane && center.real() == 0.0) pc.singular_center = true;
  return pc;
}

DiskRegion region_of(const MinimizerSpec& spec, Complex center, double r) {
  return DiskRegion{center, r, spec.domain == Domain::right_half_plane};
}

}  // namespace

QValue::QValue(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("a Q-value needs at least one entry");
}

bool QValue::same_as(const QValue& other, double tol) const {
  if (other.size() != size()) return false;
  std::vector<bool> used(values_.size(), false);
  for (const Complex& v : other.values_) {
    int best = -1;
    double best_d = tol;
    for (int i = 0; i < size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(values_[i] - v);
      if (d <= best_d) {
        best = i;
        best_d = d;
      }
    }
    if (best < 0) return false;
    used[best] = true;
  }
  return true;
}

QValue q_roots(Complex w, int Q) {
  if (Q < 2) throw ValidationError("Q must be at least 2");
  std::vector<Complex> out(Q);
  if (w == Complex(0.0, 0.0)) return QValue(out);
  const double mag = std::pow(std::abs(w), 1.0 / Q);
  const double base = std::arg(w) / Q;
  for (int l = 0; l < Q; ++l) out[l] = std::polar(mag, base + 2.0 * kPi * l / Q);
  return QValue(out);
}

Polynomial Polynomial::monomial(int P) {
  if (P < 0) throw ValidationError("monomial degree must be non-negative");
  return Polynomial{{1.0, 0.0}, std::vector<Complex>(P, Complex(0.0, 0.0))};
}

void MinimizerSpec::validate() const {
  if (Q < 2) throw ValidationError("Q must be at least 2");
  std::visit(Overloaded{
                 [](const Polynomial& p) {
                   if (p.lead == Complex(0.0, 0.0)) throw ValidationError("polynomial lead coefficient is zero");
                 },
                 [](const BlockA& a) {
                   if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
                 },
                 [this](const BlockBPower& b) {
                   if (!(b.alpha > 0.0 && b.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
                   if (b.P < 1) throw ValidationError("P must be at least 1");
                   if (std::gcd(b.P, Q) != 1) throw ValidationError("P and Q must be coprime");
                 },
                 [](const SeriesF& f) {
                   if (!f.model) throw ValidationError("series model missing");
                 },
                 [](const SeriesG& g) {
                   if (!g.model) throw ValidationError("series model missing");
                 },
             },
             h);
}

HJet evaluate_h(const MinimizerSpec& spec, Complex z) {
  if (spec.domain == Domain::right_half_plane && z.real() < 0.0) {
    throw DomainError("point outside the right half-plane");
  }
  return std::visit(
      Overloaded{
          [z](const Polynomial& p) {
            Complex h = p.lead;
            Complex dh{0.0, 0.0};
            for (std::size_t i = 0; i < p.roots.size(); ++i) {
              Complex term = p.lead;
              for (std::size_t j = 0; j < p.roots.size(); ++j) {
                if (j != i) term *= z - p.roots[j];
              }
              dh += term;
              h *= z - p.roots[i];
            }
            return HJet{LogComplex::from_complex(h), LogComplex::from_complex(dh)};
          },
          [z](const BlockA& a) { return HJet{block_a(z, a.alpha), block_a_derivative(z, a.alpha)}; },
          [z](const BlockBPower& b) {
            const LogComplex bv = block_b(z, b.alpha);
            const LogComplex db = block_b_derivative(z, b.alpha);
            if (b.P == 1) return HJet{bv, db};
            if (bv.is_zero()) return HJet{LogComplex::zero(), LogComplex::zero()};
            const LogComplex h{b.P * bv.log_mag, b.P * bv.arg};
            const LogComplex pre{std::log(static_cast<double>(b.P)) + (b.P - 1) * bv.log_mag, (b.P - 1) * bv.arg};
            return HJet{h, lc_mul(pre, db)};
          },
          [z](const SeriesF& f) {
            const FAndDerivative t = F_tree(*f.model, EvalPoint::at(z), true);
            const LogComplex h{-t.F.real(), -t.F.imag()};
            return HJet{h, lc_mul(h, LogComplex::from_complex(-t.dF))};
          },
          [z](const SeriesG& g) {
            const GWithLogDerivative gd = g_with_log_derivative(*g.model, EvalPoint::at(z));
            if (gd.g.is_zero()) return HJet{LogComplex::zero(), LogComplex::zero()};
            return HJet{gd.g, lc_mul(gd.g, LogComplex::from_complex(gd.log_derivative))};
          },
      },
      spec.h);
}

double log_energy_integrand(const MinimizerSpec& spec, Complex z) {
  const HJet j = evaluate_h(spec, z);
  if (j.h.is_zero()) return std::numeric_limits<double>::infinity();
  if (j.dh.is_zero()) return kNegInf;
  const double q = static_cast<double>(spec.Q);
  return std::log(2.0 / q) + (2.0 / q - 2.0) * j.h.log_mag + 2.0 * j.dh.log_mag;
}

double energy_integrand(const MinimizerSpec& spec, Complex z) { return std::exp(log_energy_integrand(spec, z)); }

double phi(const MinimizerSpec& spec, Complex center, Complex z) {
  const HJet j = evaluate_h(spec, z);
  if (j.h.is_zero()) throw DomainError("phi is undefined at a zero of h");
  if (j.dh.is_zero()) return 0.0;
  const Complex ratio = std::polar(std::exp(j.dh.log_mag - j.h.log_mag), reduce_angle(j.dh.arg - j.h.arg));
  return (ratio * (z - center)).real();
}

std::vector<Complex> branch_points_of_b(int P, double lo, double hi) {
  if (P < 1) throw ValidationError("P must be at least 1");
  if (!(lo >= 0.0 && hi > lo)) throw ValidationError("window must be a nonempty subset of (0, inf)");
  std::vector<Complex> out;
  const double tiny = std::numeric_limits<double>::min();
  const double llo = std::log(std::max(lo, tiny));
  const double lhi = std::log(hi);
  const long kmin = static_cast<long>(std::floor((2.0 * llo / kPi - 1.0) / 2.0)) - 1;
  const long kmax = static_cast<long>(std::ceil((2.0 * lhi / kPi - 1.0) / 2.0)) + 1;
  for (long k = kmin; k <= kmax; ++k) {
    const double x = std::exp((2.0 * k + 1.0) * kPi / 2.0);
    if (x > lo && x >= tiny && x < hi) out.emplace_back(x, 0.0);
  }
  return out;
}

std::vector<Complex> known_zeros(const MinimizerSpec& spec, Complex center, double radius) {
  std::vector<Complex> out;
  auto inside = [&](Complex z) { return std::abs(z - center) <= radius * (1.0 + 1e-12); };
  std::visit(Overloaded{
                 [&](const Polynomial& p) {
                   for (const Complex& r : p.roots) {
                     if (inside(r) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
                   }
                 },
                 [](const BlockA&) {},
                 [&](const BlockBPower& b) {
                   const double hi = std::abs(center) + radius;
                   for (const Complex& z : branch_points_of_b(b.P, 1e-9 * radius, hi)) {
                     if (inside(z)) out.push_back(z);
                   }
                 },
                 [](const SeriesF&) {},
                 [&](const SeriesG& g) {
                   const FgModel& m = *g.model;
                   const double floor = 1e-8 * radius;
                   for (int k = 1; k <= m.max_gen() && out.size() < 256; ++k) {
                     const std::int64_t count = std::int64_t{1} << k;
                     for (std::int64_t l = 1; l <= count && out.size() < 256; ++l) {
                       for (int mm = 1;; ++mm) {
                         const GZero zz = zero_of_g(m, {k, l}, mm);
                         const Complex pt = zz.point();
                         if (pt.real() < floor) break;
                         if (inside(pt)) out.push_back(pt);
                       }
                     }
                   }
                 },
             },
             spec.h);
  return out;
}

namespace {

void collect_endpoints(const GenerationTable& t, int K, int j, double y, double lo, double hi,
                       std::vector<double>& out) {
  if (out.size() >= kMaxBoundaryPoints) return;
  if (y > hi || y + t.length[j] < lo) return;
  if (j == K) {
    if (y >= lo) out.push_back(y);
    return;
  }
  collect_endpoints(t, K, j + 1, y, lo, hi, out);
  collect_endpoints(t, K, j + 1, y + t.gap[j + 1], lo, hi, out);
}

std::vector<Complex> series_boundary_points(const FgModel& m, Complex center, double radius) {
  // every left endpoint y_tau with k <= K is a generation-K left endpoint
  std::vector<double> ys;
  collect_endpoints(m.table(), m.max_gen(), 0, 0.0, -center.imag() - radius, -center.imag() + radius, ys);
  std::vector<Complex> out;
  for (double y : ys) {
    const Complex p(0.0, -y);
    if (std::abs(p - center) <= radius * (1.0 + 1e-12)) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Complex> boundary_singularities(const MinimizerSpec& spec, Complex center, double radius) {
  if (const auto* f = std::get_if<SeriesF>(&spec.h)) return series_boundary_points(*f->model, center, radius);
  if (const auto* g = std::get_if<SeriesG>(&spec.h)) return series_boundary_points(*g->model, center, radius);
  return {};
}

QuadratureValue boundary_mass(const MinimizerSpec& spec, Complex center, double r, const FrequencyConfig& config) {
  spec.validate();
  if (!(r > 0.0)) throw ValidationError("radius must be positive");
  const double q = static_cast<double>(spec.Q);
  const double lq = std::log(q);
  auto dens = [&](Complex z) {
    const LogComplex h = evaluate_h(spec, z).h;
    return h.is_zero() ? kNegInf : lq + (2.0 / q) * h.log_mag;
  };
  return to_value(integrate_arc_log(dens, region_of(spec, center, r),
                                    polar_config(spec, center, r, config.mass_rel_tol, config)));
}

QuadratureValue dirichlet_energy(const MinimizerSpec& spec, Complex center, double r,
                                 const FrequencyConfig& config) {
  spec.validate();
  if (!(r > 0.0)) throw ValidationError("radius must be positive");
  auto dens = [&](Complex z) { return log_energy_integrand(spec, z); };
  return to_value(integrate_disk_log(dens, region_of(spec, center, r),
                                     polar_config(spec, center, r, config.energy_rel_tol, config)));
}

FrequencySample frequency_rescaled(const MinimizerSpec& spec, Complex center, double r,
                                   const FrequencyConfig& config) {
  const QuadratureValue D = dirichlet_energy(spec, center, r, config);
  const QuadratureValue H = boundary_mass(spec, center, r, config);
  FrequencySample s;
  s.center = center;
  s.radius = r;
  s.D = D.value;
  s.H = H.value;
  s.log_D = D.log_value;
  s.log_H = H.log_value;
  if (H.log_value == kNegInf) throw NumericalError("boundary mass vanishes; frequency undefined");
  s.I = std::exp(D.log_value - H.log_value);
  const double relD = D.log_value == kNegInf ? 0.0 : std::exp(D.log_error - D.log_value);
  const double relH = std::exp(H.log_error - H.log_value);
  s.error = s.I * (relD + relH) + (D.log_value == kNegInf ? std::exp(D.log_error - H.log_value) : 0.0);
  s.converged = D.converged && H.converged;
  return s;
}

FrequencySample frequency(const MinimizerSpec& spec, Complex center, double r, const FrequencyConfig& config) {
  FrequencySample s = frequency_rescaled(spec, center, r, config);
  if (!(s.H >= 1e-300)) {
    throw NumericalError("boundary mass below 1e-300; use the rescaled (log-space) frequency");
  }
  return s;
}

std::vector<FrequencySample> frequency_curve(const MinimizerSpec& spec, Complex center,
                                             const std::vector<double>& radii, const FrequencyConfig& config) {
  if (radii.empty()) throw ValidationError("radius list is empty");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw ValidationError("radii must be strictly ascending");
  }
  std::vector<FrequencySample> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(frequency_rescaled(spec, center, r, config));
  return out;
}

}  // namespace branchpoint
