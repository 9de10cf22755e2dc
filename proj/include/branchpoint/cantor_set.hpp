#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace branchpoint {

/// Hausdorff parameter s of the Cantor construction, 0 < s <= 1.
///
/// s < 1 gives a set of finite positive s-dimensional measure; s = 1 selects
/// the critical construction whose generation ratios drift towards 1/2.
class HausdorffParam {
 public:
  explicit HausdorffParam(double s);

  double value() const noexcept { return s_; }
  bool critical() const noexcept { return s_ == 1.0; }

  friend bool operator==(HausdorffParam, HausdorffParam) = default;

 private:
  double s_;
};

/// Generation/position index (k, l) of the interval E_{k,l}, 1 <= l <= 2^k.
struct TauIndex {
  int k = 0;
  std::int64_t l = 1;

  friend bool operator==(const TauIndex&, const TauIndex&) = default;
};

inline constexpr int kDefaultMaxDepth = 40;

/// |E_{k,l}|: 2^{-k/s} for s < 1, 2^{-k-k^{2/3}} for s = 1.
double interval_length(int k, HausdorffParam s);

/// Per-generation lengths and right-child offsets up to generation K.
///
/// gap[k] = length[k-1] - length[k] is the offset of E_{k,2l} from the shared
/// parent endpoint. Every endpoint in the library is produced by adding these
/// offsets top-down, so independently generated endpoints agree bitwise.
struct GenerationTable {
  std::vector<double> length;  // indices 0..K
  std::vector<double> gap;     // indices 1..K (gap[0] unused, 0)

  int max_gen() const noexcept { return static_cast<int>(length.size()) - 1; }

  /// Left endpoint y_{k,l}, built from the binary digits of l - 1.
  double left_endpoint(int k, std::int64_t l) const noexcept {
    double y = 0.0;
    const std::uint64_t bits = static_cast<std::uint64_t>(l - 1);
    for (int j = 1; j <= k; ++j) {
      if ((bits >> (k - j)) & 1U) y += gap[j];
    }
    return y;
  }
};

GenerationTable make_generation_table(HausdorffParam s, int max_gen);

struct DistanceBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// E_s truncated at a finite depth. Immutable after construction.
class CantorSet {
 public:
  HausdorffParam s() const noexcept { return s_; }
  int depth() const noexcept { return table_.max_gen(); }
  const GenerationTable& table() const noexcept { return table_; }

  double length(int k) const;
  double left_endpoint(TauIndex tau) const;
  /// Left endpoints of generation k in ascending order (l = 1..2^k).
  std::span<const double> generation(int k) const;

 private:
  friend CantorSet build_cantor(HausdorffParam, int, int);
  CantorSet(HausdorffParam s, GenerationTable table, std::vector<double> left)
      : s_(s), table_(std::move(table)), left_(std::move(left)) {}

  HausdorffParam s_;
  GenerationTable table_;
  std::vector<double> left_;  // generation k occupies [2^k - 1, 2^{k+1} - 1)
};

CantorSet build_cantor(HausdorffParam s, int depth, int max_depth = kDefaultMaxDepth);

/// sum_l |E_{k,l}|^sigma over the canonical generation-k cover.
double cover_sum(const CantorSet& cs, int k, double sigma);

/// Bracket for dist(y, E_s). The lower end is the distance to the union of the
/// depth-K intervals; the upper end adds one depth-K interval length.
DistanceBracket dist_to_set(const CantorSet& cs, double y);

nlohmann::json to_json(const CantorSet& cs);

}  // namespace branchpoint
