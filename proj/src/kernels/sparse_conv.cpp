#include "fivesq/kernels/sparse_conv.hpp"

#include <omp.h>

namespace fivesq::kernels {

std::vector<SparseTerm> to_sparse(std::span<const u128> dense) {
  std::vector<SparseTerm> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.push_back({i, dense[i]});
  }
  return out;
}

namespace serial {

std::vector<u128> sparse_convolve(std::span<const SparseTerm> x, std::span<const SparseTerm> y,
                                  std::size_t out_len) {
  std::vector<u128> out(out_len, 0);
  for (const auto& a : x) {
    if (a.index >= out_len) continue;
    for (const auto& b : y) {
      const std::uint64_t n = a.index + b.index;
      if (n >= out_len) continue;
      out[n] += a.value * b.value;
    }
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<u128> sparse_convolve(std::span<const SparseTerm> x, std::span<const SparseTerm> y,
                                  std::size_t out_len) {
  // Outputs are split into contiguous bands; each thread owns its band and
  // walks every x term, so no two threads write the same slot.
  std::vector<u128> out(out_len, 0);
  const std::int64_t terms = static_cast<std::int64_t>(x.size());
#pragma omp parallel
  {
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t me = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t lo = out_len * me / threads;
    const std::size_t hi = out_len * (me + 1) / threads;
    for (std::int64_t t = 0; t < terms; ++t) {
      const auto& a = x[static_cast<std::size_t>(t)];
      if (a.index >= hi) continue;
      for (const auto& b : y) {
        const std::uint64_t n = a.index + b.index;
        if (n < lo) continue;
        if (n >= hi) break;
        out[n] += a.value * b.value;
      }
    }
  }
  return out;
}

}  // namespace omp

}  // namespace fivesq::kernels
