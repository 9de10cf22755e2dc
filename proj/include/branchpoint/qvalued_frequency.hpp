#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "branchpoint/holo_kernel.hpp"
#include "branchpoint/log_quadrature.hpp"
#include "branchpoint/polar_quadrature.hpp"
#include "branchpoint/series_fg.hpp"

namespace branchpoint {

/// Unordered Q-tuple of complex numbers.
class QValue {
 public:
  explicit QValue(std::vector<Complex> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  const std::vector<Complex>& values() const noexcept { return values_; }

  /// Multiset equality up to an absolute tolerance (greedy matching).
  bool same_as(const QValue& other, double tol) const;

 private:
  std::vector<Complex> values_;
};

/// The Q values xi^l v_0 with v_0 the principal Q-th root and xi = e^{2 pi i/Q}.
QValue q_roots(Complex w, int Q);

/// lead * prod (z - root_i). monomial(P) is z^P.
struct Polynomial {
  Complex lead{1.0, 0.0};
  std::vector<Complex> roots;

  static Polynomial monomial(int P);
};
struct BlockA {
  double alpha = 0.5;
};
struct BlockBPower {
  double alpha = 0.5;
  int P = 1;
};
struct SeriesF {
  std::shared_ptr<const FgModel> model;
};
struct SeriesG {
  std::shared_ptr<const FgModel> model;
};

using HolomorphicChoice = std::variant<Polynomial, BlockA, BlockBPower, SeriesF, SeriesG>;

enum class Domain { full_plane, right_half_plane };

struct MinimizerSpec {
  HolomorphicChoice h;
  int Q = 2;
  Domain domain = Domain::full_plane;

  void validate() const;
};

/// h and h' in log form.
struct HJet {
  LogComplex h;
  LogComplex dh;
};
HJet evaluate_h(const MinimizerSpec& spec, Complex z);

/// log of (2/Q) |h|^{2/Q-2} |h'|^2; +inf exactly at zeros of h.
double log_energy_integrand(const MinimizerSpec& spec, Complex z);
double energy_integrand(const MinimizerSpec& spec, Complex z);

/// phi = Re(h'/h (z - center)), so that d/dr |h|^{2/Q} = (2/Q)(phi/r)|h|^{2/Q}.
double phi(const MinimizerSpec& spec, Complex center, Complex z);

/// Known zeros of h inside B_radius(center) (used to grade quadrature panels).
std::vector<Complex> known_zeros(const MinimizerSpec& spec, Complex center, double radius);

/// Boundary points -i y_tau (k <= K) of the series singular set inside
/// B_radius(center); empty for the other choices of h.
std::vector<Complex> boundary_singularities(const MinimizerSpec& spec, Complex center, double radius);

/// e^{(2k+1) pi/2}, k in Z, inside the open window (lo, hi); zeros of b and of b^P.
std::vector<Complex> branch_points_of_b(int P, double lo, double hi);

struct FrequencyConfig {
  double energy_rel_tol = 1e-9;
  double mass_rel_tol = 1e-10;
  bool parallel = true;
  std::size_t max_evaluations = 60000;
};

struct QuadratureValue {
  double value = 0.0;
  double error = 0.0;
  double log_value = kNegInf;
  double log_error = kNegInf;
  bool converged = false;
};

/// H = int_{arc} Q |h|^{2/Q} d theta over dB_r(center) within the domain.
QuadratureValue boundary_mass(const MinimizerSpec& spec, Complex center, double r, const FrequencyConfig& config = {});
/// D = int over B_r(center) within the domain of the energy density.
QuadratureValue dirichlet_energy(const MinimizerSpec& spec, Complex center, double r,
                                 const FrequencyConfig& config = {});

struct FrequencySample {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  double D = 0.0;
  double H = 0.0;
  double I = 0.0;
  double error = 0.0;  // combined estimate for I
  double log_D = kNegInf;
  double log_H = kNegInf;
  bool converged = false;
};

/// I = D/H. Throws NumericalError when H < 1e-300.
FrequencySample frequency(const MinimizerSpec& spec, Complex center, double r, const FrequencyConfig& config = {});
/// Same quantities assembled in log space; I = exp(log D - log H) stays
/// finite when D and H themselves underflow.
FrequencySample frequency_rescaled(const MinimizerSpec& spec, Complex center, double r,
                                   const FrequencyConfig& config = {});
/// Radii ascending.
std::vector<FrequencySample> frequency_curve(const MinimizerSpec& spec, Complex center,
                                             const std::vector<double>& radii, const FrequencyConfig& config = {});

}  // namespace branchpoint
