#pragma once

#include <functional>
#include <span>

#include "branchpoint/cantor_set.hpp"
#include "branchpoint/eval_point.hpp"
#include "branchpoint/holo_kernel.hpp"

namespace branchpoint::kernels {

/// Per-generation data of a shifted power series
///   sum_{k=1}^{K} coef[k] sum_l (z + i y_{k,l})^{-exponent[k]}.
/// Index 0 of coef/exponent is unused.
struct PowerSeriesData {
  const GenerationTable* table = nullptr;
  int max_gen = 0;
  std::span<const double> coef;
  std::span<const double> exponent;
};

/// Direct summation over all 2^{K+1} - 2 terms, generation by generation.
Complex power_sum_serial(const PowerSeriesData& data, const EvalPoint& p);
/// Same sum split into fixed chunks evaluated by OpenMP threads and reduced in
/// chunk order, so the result does not depend on the thread count.
Complex power_sum_parallel(const PowerSeriesData& data, const EvalPoint& p);

/// Per-generation data of prod_k prod_l cos(b[k] ln(z + i y_{k,l})).
struct CosProductData {
  const GenerationTable* table = nullptr;
  int max_gen = 0;
  std::span<const double> b;
  /// Optional generation filter; empty means all generations 1..K.
  std::span<const int> generations;
  bool descending = false;
};

struct CosProduct {
  LogComplex value;
  /// G'/G = -sum b_k tan(b_k ln w) / w; undefined (0) when value is zero.
  Complex log_derivative{0.0, 0.0};
};

CosProduct cos_product_serial(const CosProductData& data, const EvalPoint& p);
CosProduct cos_product_parallel(const CosProductData& data, const EvalPoint& p);

/// Evaluate fn at center + radius e^{2 pi i j / n} for the node indices
/// j = first, first + stride, ... into out[j].
void evaluate_on_circle(const std::function<LogComplex(Complex)>& fn, Complex center, double radius, int n,
                        int first, int stride, std::span<LogComplex> out, bool parallel);

}  // namespace branchpoint::kernels
