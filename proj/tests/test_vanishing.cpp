#include <cmath>

#include "branchpoint/errors.hpp"
#include "branchpoint/vanishing_analysis.hpp"
#include "doctest.h"

using namespace branchpoint;

TEST_CASE("ladders") {
  auto d = default_ladder();
  REQUIRE(d.size() == 12);
  CHECK(d.front() == 0.2);
  CHECK(d[1] == doctest::Approx(0.2 / std::sqrt(2.0)));
  auto g = geometric_ladder(1.0, 0.5, 4);
  CHECK(g.back() == doctest::Approx(0.125));
}

TEST_CASE("slope of a synthetic power law") {
  MassCurve c;
  for (int i = 0; i < 6; ++i) {
    c.radii.push_back(std::pow(0.6, i));
    c.log_mass.push_back(4.25 * std::log(c.radii.back()) - 1.5);
    c.log_error.push_back(kNegInf);
    c.converged.push_back(true);
  }
  CHECK(vanishing_order_slope(c, {0, 5}) == doctest::Approx(4.25).epsilon(1e-12));
  CHECK(vanishing_order_slope(c, {2, 3}) == doctest::Approx(4.25).epsilon(1e-12));
  CHECK_THROWS_AS(vanishing_order_slope(c, {3, 3}), ValidationError);
  CHECK_THROWS_AS(vanishing_order_slope(c, {4, 9}), ValidationError);
}

TEST_CASE("constant and monomial targets") {
  auto ladder = geometric_ladder(0.4, 0.5, 5);
  auto cc = mass_curve(ConstantTarget{1.5, Domain::full_plane}, Complex(0.3, 0.3), ladder);
  for (std::size_t i = 0; i < ladder.size(); ++i)
    CHECK(std::exp(cc.log_mass[i]) == doctest::Approx(kPi * ladder[i] * ladder[i] * 2.25).epsilon(1e-10));
  CHECK(vanishing_order_slope(cc, {0, 4}) == doctest::Approx(2.0).epsilon(1e-9));
  for (auto r : doubling_ratio(cc)) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));

  MinimizerSpec spec{Polynomial::monomial(2), 3, Domain::full_plane};
  auto mc = mass_curve(QMinimizerTarget{spec}, 0.0, ladder);
  CHECK(vanishing_order_slope(mc, {0, 4}) == doctest::Approx(2.0 * 2 / 3 + 2).epsilon(1e-9));
  auto ratios = doubling_ratio(mc);
  REQUIRE(ratios.size() == 4);
  for (auto r : ratios) CHECK(r.ratio == doctest::Approx(2.0 / 3 + 1).epsilon(1e-9));
}

TEST_CASE("Re f at a boundary point of the set") {
  auto model = std::make_shared<const FgModel>(SeriesParams(HausdorffParam(0.5), 0.75, 14));
  std::vector<double> radii{0.1, 0.05, 0.025, 0.0125, 0.00625};
  auto c = mass_curve(ReFTarget{model}, 0.0, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(std::isfinite(c.log_mass[i]));
    if (i > 0) CHECK(c.log_mass[i] < c.log_mass[i - 1]);
  }
  auto ratios = doubling_ratio(c);
  REQUIRE(ratios.size() == 4);
  for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i].ratio > ratios[i - 1].ratio);
}

TEST_CASE("interior slope approaches area scaling") {
  auto model = std::make_shared<const FgModel>(SeriesParams(HausdorffParam(0.5), 0.75, 10));
  auto c = mass_curve(ReFTarget{model}, Complex(0.5, 0.3), geometric_ladder(0.01, 0.5, 4));
  CHECK(vanishing_order_slope(c, {0, 3}) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("Re f is not constant") {
  FgModel model(SeriesParams(HausdorffParam(0.5), 0.75, 10));
  auto rep = check_re_f_non_constant(model, 0.05, 1.0, -1.0, 0.5, 8);
  CHECK(rep.non_constant);
  CHECK(rep.samples == 64);
  CHECK(rep.max_value > rep.min_value);
}
