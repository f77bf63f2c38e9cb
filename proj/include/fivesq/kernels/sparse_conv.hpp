#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fivesq::kernels {

using u128 = unsigned __int128;

struct SparseTerm {
  std::uint64_t index;
  u128 value;
};

std::vector<SparseTerm> to_sparse(std::span<const u128> dense);

// out[n] = sum_{i+j=n} x_i * y_j for n < out_len, exact in 128-bit arithmetic.
// The caller guarantees no partial sum exceeds 2^128 - 1; both inputs are
// sorted by index.
namespace serial {
std::vector<u128> sparse_convolve(std::span<const SparseTerm> x, std::span<const SparseTerm> y,
                                  std::size_t out_len);
}  // namespace serial

namespace omp {
std::vector<u128> sparse_convolve(std::span<const SparseTerm> x, std::span<const SparseTerm> y,
                                  std::size_t out_len);
}  // namespace omp

}  // namespace fivesq::kernels
