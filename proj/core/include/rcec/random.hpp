#pragma once

// Seedable random streams.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard.
// All deviates below are derived from it with algorithms implemented here
// (not the implementation-defined std:: distributions), so a given seed
// reproduces the same values with any conforming standard library:
//
//   uniform01      (next() >> 11) * 2^-53, in [0, 1)
//   normal         Box-Muller, both outputs used (the second one is cached)
//   gamma(shape)   Marsaglia-Tsang squeeze; shape < 1 via the U^(1/shape) boost
//   chi_square(nu) 2 * gamma(nu / 2)
//   uniform_index  Lemire's nearly-divisionless bounded integer
//
// Child streams: Rng::child(seed, {a, b, ...}) mixes the seed with each
// stream index through SplitMix64 and seeds a fresh engine from the result.
// Replications use one child stream per replication index.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rcec {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng child(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double normal();
  double gamma(double shape);
  double chi_square(double dof);
  bool bernoulli(double p);
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace rcec
