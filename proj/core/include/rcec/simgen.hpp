#pragma once

// Synthetic compositional data: the two-block basis covariance, latent
// samplers for the four benchmark cases, and the basis -> composition map.

#include <cstdint>
#include <string>
#include <vector>

#include "rcec/compdata.hpp"
#include "rcec/random.hpp"
#include "rcec/types.hpp"

namespace rcec {

// n x p latent log-abundances Y; all entries finite.
class BasisMatrix {
 public:
  explicit BasisMatrix(Matrix values);  // throws DataError on non-finite entries
  const Matrix& values() const { return values_; }
  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }

 private:
  Matrix values_;
};

struct SimulationCase {
  enum class Kind { Gaussian, StudentT, SkewT, ContaminatedSkewT };

  Kind kind = Kind::Gaussian;
  double dof = 0.0;            // StudentT, SkewT, ContaminatedSkewT
  double skew = 0.0;           // common entry of the shape vector alpha
  double contamination = 0.0;  // Bernoulli rate of the contaminating component
  double shift = 0.0;          // mean of the contaminating N(shift * 1, I)

  static SimulationCase gaussian();
  static SimulationCase student_t(double dof = 3.5);
  static SimulationCase skew_t(double dof = 4.0, double skew = 20.0);
  static SimulationCase contaminated_skew_t(double dof = 4.0, double skew = 10.0,
                                            double contamination = 0.05, double shift = -8.0);
  // Benchmark cases 1..4. Throws std::invalid_argument otherwise.
  static SimulationCase benchmark_case(int number);

  void validate() const;
  std::string name() const;
};

// diag(A1, A2) with A1_ij = (1 - |i - j| / 10)_+ and A2 = 4 I, blocks of size
// p/2. Throws std::invalid_argument unless p is even and >= 4.
SymmetricMatrix build_omega0(std::size_t p);

struct CaseSample {
  BasisMatrix basis;
  std::vector<bool> contaminated;  // per row; all false except for ContaminatedSkewT
};

// Draws n i.i.d. rows. Per row, in order: the p standard normals of the
// Gaussian core; for skew cases one extra normal deciding the reflection; for
// t cases one chi-square. The contaminated case first draws its Bernoulli
// indicator and, when set, p normals for N(shift * 1, I) instead.
// Throws std::invalid_argument if omega0 is not positive definite.
CaseSample sample_case_with_labels(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n,
                                   Rng& rng);
BasisMatrix sample_case(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n, Rng& rng);
BasisMatrix sample_case(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n,
                        std::uint64_t seed);

// X_kj = exp(Y_kj) / sum_i exp(Y_ki), evaluated after subtracting the row max.
CompositionMatrix basis_to_composition(const BasisMatrix& y);

}  // namespace rcec
