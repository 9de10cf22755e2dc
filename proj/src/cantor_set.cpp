#include "branchpoint/cantor_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "branchpoint/errors.hpp"

namespace branchpoint {

HausdorffParam::HausdorffParam(double s) : s_(s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw ValidationError("Hausdorff parameter s must lie in (0, 1], got " + std::to_string(s));
  }
}

double interval_length(int k, HausdorffParam s) {
  if (k < 0) throw ValidationError("generation k must be non-negative");
  const double kd = static_cast<double>(k);
  if (s.critical()) {
    return std::exp2(-(kd + std::cbrt(kd * kd)));
  }
  return std::exp2(-kd / s.value());
}

GenerationTable make_generation_table(HausdorffParam s, int max_gen) {
  if (max_gen < 0) throw ValidationError("max generation must be non-negative");
  GenerationTable t;
  t.length.resize(max_gen + 1);
  t.gap.assign(max_gen + 1, 0.0);
  for (int k = 0; k <= max_gen; ++k) t.length[k] = interval_length(k, s);
  for (int k = 1; k <= max_gen; ++k) t.gap[k] = t.length[k - 1] - t.length[k];
  return t;
}

CantorSet build_cantor(HausdorffParam s, int depth, int max_depth) {
  if (depth < 1) throw ValidationError("Cantor depth must be at least 1");
  if (depth > max_depth) {
    throw ValidationError("Cantor depth " + std::to_string(depth) + " exceeds the configured maximum " +
                          std::to_string(max_depth));
  }
  GenerationTable table = make_generation_table(s, depth);
  const std::size_t total = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<double> left(total);
  left[0] = 0.0;
  for (int k = 1; k <= depth; ++k) {
    const std::size_t parent = (std::size_t{1} << (k - 1)) - 1;
    const std::size_t child = (std::size_t{1} << k) - 1;
    const std::size_t count = std::size_t{1} << (k - 1);
    const double gap = table.gap[k];
    for (std::size_t l = 0; l < count; ++l) {
      const double y = left[parent + l];
      left[child + 2 * l] = y;
      left[child + 2 * l + 1] = y + gap;
    }
  }
  return CantorSet(s, std::move(table), std::move(left));
}

double CantorSet::length(int k) const {
  if (k < 0 || k > depth()) throw ValidationError("generation out of range");
  return table_.length[k];
}

double CantorSet::left_endpoint(TauIndex tau) const {
  if (tau.k < 0 || tau.k > depth()) throw ValidationError("generation out of range");
  if (tau.l < 1 || tau.l > (std::int64_t{1} << tau.k)) throw ValidationError("position l out of range");
  return left_[(std::size_t{1} << tau.k) - 1 + static_cast<std::size_t>(tau.l - 1)];
}

std::span<const double> CantorSet::generation(int k) const {
  if (k < 0 || k > depth()) throw ValidationError("generation out of range");
  return {left_.data() + (std::size_t{1} << k) - 1, std::size_t{1} << k};
}

double cover_sum(const CantorSet& cs, int k, double sigma) {
  if (k < 1 || k > cs.depth()) throw ValidationError("cover generation must satisfy 1 <= k <= depth");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw ValidationError("cover exponent sigma must lie in (0, 1]");
  return std::exp2(static_cast<double>(k)) * std::pow(cs.length(k), sigma);
}

DistanceBracket dist_to_set(const CantorSet& cs, double y) {
  const int K = cs.depth();
  const auto gen = cs.generation(K);
  const double len = cs.length(K);
  // First interval whose left endpoint exceeds y; the candidate intervals are
  // that one and its predecessor.
  const auto it = std::upper_bound(gen.begin(), gen.end(), y);
  double lower = std::numeric_limits<double>::infinity();
  if (it != gen.end()) lower = std::min(lower, *it - y);
  if (it != gen.begin()) {
    const double left = *(it - 1);
    lower = std::min(lower, std::max(0.0, y - (left + len)));
  }
  return {lower, lower + len};
}

nlohmann::json to_json(const CantorSet& cs) {
  nlohmann::json intervals = nlohmann::json::array();
  for (int k = 0; k <= cs.depth(); ++k) {
    const auto gen = cs.generation(k);
    const double len = cs.length(k);
    for (std::size_t i = 0; i < gen.size(); ++i) {
      intervals.push_back({{"k", k}, {"l", static_cast<std::int64_t>(i + 1)}, {"left", gen[i]}, {"length", len}});
    }
  }
  return {{"s", cs.s().value()}, {"depth", cs.depth()}, {"intervals", std::move(intervals)}};
}

}  // namespace branchpoint
