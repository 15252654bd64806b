#pragma once

// Median-of-means estimation of the covariance of log-scale data.

#include <cstddef>
#include <span>
#include <vector>

#include "rcec/compdata.hpp"
#include "rcec/types.hpp"

namespace rcec {

// Contiguous, ordered blocks covering [0, n). The first (n mod M) blocks hold
// ceil(n/M) samples, the remaining ones floor(n/M).
struct PartitionScheme {
  struct Block {
    std::size_t begin = 0;
    std::size_t size = 0;
  };
  std::size_t n = 0;
  std::vector<Block> blocks;

  std::size_t block_count() const { return blocks.size(); }
};

// Throws std::invalid_argument unless 1 <= M <= n.
PartitionScheme regular_partition(std::size_t n, std::size_t block_count);

// Median of a nonempty sample; for even sizes, the midpoint of the two
// central order statistics. Reorders `values`.
double median_inplace(std::span<double> values);

double median_of_means(std::span<const double> values, const PartitionScheme& partition);

// gamma_ij = MOM(W_i W_j) - MOM(W_i) MOM(W_j), every MOM over the same
// regular partition of the rows of `data`. With block_count == 1 this is the
// divisor-n sample covariance, bit for bit.
SymmetricMatrix mom_covariance(const Matrix& data, std::size_t block_count);
SymmetricMatrix mom_covariance(const ClrMatrix& w, std::size_t block_count);

// (1/n) sum W_ki W_kj - mean_i mean_j. Throws std::invalid_argument if n < 2.
SymmetricMatrix sample_covariance(const Matrix& data);
SymmetricMatrix sample_covariance(const ClrMatrix& w);

// min(ceil((2 + L) ln p), n_cap), and at least 1.
std::size_t default_block_count(std::size_t p, double L, std::size_t n_cap);

}  // namespace rcec
