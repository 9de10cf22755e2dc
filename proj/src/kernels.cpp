#include "branchpoint/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "branchpoint/detail/omp_guard.hpp"
#include "branchpoint/errors.hpp"

namespace branchpoint::kernels {

namespace {

constexpr std::int64_t kChunk = 4096;

struct Chunk {
  int k;
  std::int64_t begin;
  std::int64_t end;
};

std::vector<int> generation_list(int max_gen, std::span<const int> filter, bool descending) {
  std::vector<int> ks;
  if (filter.empty()) {
    for (int k = 1; k <= max_gen; ++k) ks.push_back(k);
  } else {
    for (int k : filter) {
      if (k < 1 || k > max_gen) throw ValidationError("generation filter entry out of range");
      ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  if (descending) std::reverse(ks.begin(), ks.end());
  return ks;
}

std::vector<Chunk> make_chunks(const std::vector<int>& ks) {
  std::vector<Chunk> chunks;
  for (int k : ks) {
    const std::int64_t count = std::int64_t{1} << k;
    for (std::int64_t b = 0; b < count; b += kChunk) chunks.push_back({k, b, std::min(count, b + kChunk)});
  }
  return chunks;
}

void check(const GenerationTable* table, int max_gen) {
  if (table == nullptr || table->max_gen() < max_gen) throw ValidationError("generation table shorter than K");
}

Complex power_chunk(const PowerSeriesData& d, const EvalPoint& p, const Chunk& c) {
  Complex acc{0.0, 0.0};
  const double e = d.exponent[c.k];
  for (std::int64_t l = c.begin; l < c.end; ++l) {
    acc += std::exp(-e * p.log_shift(d.table->left_endpoint(c.k, l + 1)));
  }
  return d.coef[c.k] * acc;
}

// Partial product over a chunk; returns false when an exact zero factor is hit.
bool cos_chunk(const CosProductData& d, const EvalPoint& p, const Chunk& c, CosProduct& out) {
  const double b = d.b[c.k];
  double lm = 0.0;
  double arg = 0.0;
  Complex dl{0.0, 0.0};
  for (std::int64_t l = c.begin; l < c.end; ++l) {
    const Complex lw = p.log_shift(d.table->left_endpoint(c.k, l + 1));
    const Complex u = b * lw;
    const LogComplex f = log_cos(u);
    if (f.is_zero()) return false;
    lm += f.log_mag;
    arg += f.arg;
    dl -= b * std::tan(u) * std::exp(-lw);
  }
  out.value = {lm, arg};
  out.log_derivative = dl;
  return true;
}

}  // namespace

Complex power_sum_serial(const PowerSeriesData& d, const EvalPoint& p) {
  check(d.table, d.max_gen);
  Complex total{0.0, 0.0};
  for (int k = 1; k <= d.max_gen; ++k) {
    Complex acc{0.0, 0.0};
    const std::int64_t count = std::int64_t{1} << k;
    for (std::int64_t l = 0; l < count; ++l) {
      acc += std::exp(-d.exponent[k] * p.log_shift(d.table->left_endpoint(k, l + 1)));
    }
    total += d.coef[k] * acc;
  }
  return total;
}

Complex power_sum_parallel(const PowerSeriesData& d, const EvalPoint& p) {
  check(d.table, d.max_gen);
  std::vector<int> ks;
  for (int k = 1; k <= d.max_gen; ++k) ks.push_back(k);
  const std::vector<Chunk> chunks = make_chunks(ks);
  std::vector<Complex> partial(chunks.size());
  const auto n = static_cast<std::int64_t>(chunks.size());
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      partial[i] = power_chunk(d, p, chunks[i]);
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();
  Complex total{0.0, 0.0};
  for (const Complex& c : partial) total += c;
  return total;
}

CosProduct cos_product_serial(const CosProductData& d, const EvalPoint& p) {
  check(d.table, d.max_gen);
  CosProduct out;
  out.value = LogComplex::one();
  for (int k : generation_list(d.max_gen, d.generations, d.descending)) {
    const std::int64_t count = std::int64_t{1} << k;
    CosProduct part;
    if (!cos_chunk(d, p, Chunk{k, 0, count}, part)) return CosProduct{};
    out.value = lc_mul(out.value, part.value);
    out.log_derivative += part.log_derivative;
  }
  return out;
}

CosProduct cos_product_parallel(const CosProductData& d, const EvalPoint& p) {
  check(d.table, d.max_gen);
  const std::vector<Chunk> chunks = make_chunks(generation_list(d.max_gen, d.generations, d.descending));
  std::vector<CosProduct> partial(chunks.size());
  bool zero_found = false;
  detail::ExceptionSlot slot;
  const auto n = static_cast<std::int64_t>(chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    bool skip;
#pragma omp atomic read
    skip = zero_found;
    if (skip) continue;
    bool zero = false;
    try {
      zero = !cos_chunk(d, p, chunks[i], partial[i]);
    } catch (...) {
      slot.capture();
    }
    if (zero) {
#pragma omp atomic write
      zero_found = true;
    }
  }
  slot.rethrow();
  if (zero_found) return CosProduct{};
  CosProduct out;
  out.value = LogComplex::one();
  for (const CosProduct& c : partial) {
    out.value = lc_mul(out.value, c.value);
    out.log_derivative += c.log_derivative;
  }
  return out;
}

void evaluate_on_circle(const std::function<LogComplex(Complex)>& fn, Complex center, double radius, int n,
                        int first, int stride, std::span<LogComplex> out, bool parallel) {
  if (static_cast<int>(out.size()) < n) throw ValidationError("output span shorter than node count");
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = first; j < n; j += stride) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    try {
      out[j] = fn(center + std::polar(radius, theta));
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();
}

}  // namespace branchpoint::kernels
