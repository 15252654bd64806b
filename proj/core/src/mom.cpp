#include "rcec/mom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rcec {

PartitionScheme regular_partition(std::size_t n, std::size_t block_count) {
  if (block_count < 1 || block_count > n) {
    throw std::invalid_argument("regular_partition: need 1 <= M <= n (n = " + std::to_string(n) +
                                ", M = " + std::to_string(block_count) + ")");
  }
  PartitionScheme scheme;
  scheme.n = n;
  scheme.blocks.reserve(block_count);
  const std::size_t base = n / block_count;
  const std::size_t larger = n % block_count;
  std::size_t begin = 0;
  for (std::size_t b = 0; b < block_count; ++b) {
    const std::size_t size = base + (b < larger ? 1 : 0);
    scheme.blocks.push_back({begin, size});
    begin += size;
  }
  return scheme;
}

double median_inplace(std::span<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double median_of_means(std::span<const double> values, const PartitionScheme& partition) {
  if (values.empty()) throw std::invalid_argument("median_of_means: empty input");
  if (values.size() != partition.n) {
    throw std::invalid_argument("median_of_means: partition size does not match input length");
  }
  std::vector<double> means;
  means.reserve(partition.block_count());
  for (const auto& block : partition.blocks) {
    double sum = 0.0;
    for (std::size_t k = block.begin; k < block.begin + block.size; ++k) sum += values[k];
    means.push_back(sum / static_cast<double>(block.size));
  }
  return median_inplace(means);
}

namespace {

// Per-block first and second moments, stored block-major.
struct BlockMoments {
  std::size_t p = 0;
  std::size_t blocks = 0;
  std::vector<double> means;   // blocks x p
  std::vector<double> cross;   // blocks x (p(p+1)/2), upper triangle row-major
};

std::size_t tri_index(std::size_t i, std::size_t j, std::size_t p) {
  // i <= j
  return i * p - i * (i - 1) / 2 + (j - i);
}

BlockMoments block_moments(const Matrix& data, const PartitionScheme& partition) {
  const auto p = static_cast<std::size_t>(data.cols());
  const std::size_t tri = p * (p + 1) / 2;
  BlockMoments m;
  m.p = p;
  m.blocks = partition.block_count();
  m.means.assign(m.blocks * p, 0.0);
  m.cross.assign(m.blocks * tri, 0.0);

  std::vector<double> row(p);
  for (std::size_t b = 0; b < m.blocks; ++b) {
    const auto& block = partition.blocks[b];
    double* mean = m.means.data() + b * p;
    double* cross = m.cross.data() + b * tri;
    for (std::size_t k = block.begin; k < block.begin + block.size; ++k) {
      for (std::size_t i = 0; i < p; ++i) row[i] = data(static_cast<Index>(k), static_cast<Index>(i));
      double* out = cross;
      for (std::size_t i = 0; i < p; ++i) {
        const double wi = row[i];
        mean[i] += wi;
        for (std::size_t j = i; j < p; ++j) *out++ += wi * row[j];
      }
    }
    const auto d = static_cast<double>(block.size);
    for (std::size_t i = 0; i < p; ++i) mean[i] /= d;
    for (std::size_t t = 0; t < tri; ++t) cross[t] /= d;
  }
  return m;
}

SymmetricMatrix covariance_from_moments(const BlockMoments& m) {
  const std::size_t p = m.p;
  const std::size_t tri = p * (p + 1) / 2;
  std::vector<double> scratch(m.blocks);

  std::vector<double> mu(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t b = 0; b < m.blocks; ++b) scratch[b] = m.means[b * p + i];
    mu[i] = median_inplace(scratch);
  }

  SymmetricMatrix gamma = SymmetricMatrix::zeros(static_cast<Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const std::size_t t = tri_index(i, j, p);
      for (std::size_t b = 0; b < m.blocks; ++b) scratch[b] = m.cross[b * tri + t];
      const double mu_ij = median_inplace(scratch);
      gamma.set(static_cast<Index>(i), static_cast<Index>(j), mu_ij - mu[i] * mu[j]);
    }
  }
  return gamma;
}

}  // namespace

SymmetricMatrix mom_covariance(const Matrix& data, std::size_t block_count) {
  const auto partition = regular_partition(static_cast<std::size_t>(data.rows()), block_count);
  return covariance_from_moments(block_moments(data, partition));
}

SymmetricMatrix mom_covariance(const ClrMatrix& w, std::size_t block_count) {
  return mom_covariance(w.values(), block_count);
}

SymmetricMatrix sample_covariance(const Matrix& data) {
  if (data.rows() < 2) throw std::invalid_argument("sample_covariance: need n >= 2");
  return mom_covariance(data, 1);
}

SymmetricMatrix sample_covariance(const ClrMatrix& w) { return sample_covariance(w.values()); }

std::size_t default_block_count(std::size_t p, double L, std::size_t n_cap) {
  if (p < 2) throw std::invalid_argument("default_block_count: need p >= 2");
  if (!(L > 0.0)) throw std::invalid_argument("default_block_count: need L > 0");
  const double raw = std::ceil((2.0 + L) * std::log(static_cast<double>(p)));
  auto m = static_cast<std::size_t>(raw);
  m = std::min(m, n_cap);
  return std::max<std::size_t>(m, 1);
}

}  // namespace rcec
