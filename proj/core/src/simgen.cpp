#include "rcec/simgen.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>

namespace rcec {

BasisMatrix::BasisMatrix(Matrix values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw DataError("BasisMatrix: non-finite entry");
}

SimulationCase SimulationCase::gaussian() { return {}; }

SimulationCase SimulationCase::student_t(double dof) {
  SimulationCase c;
  c.kind = Kind::StudentT;
  c.dof = dof;
  return c;
}

SimulationCase SimulationCase::skew_t(double dof, double skew) {
  SimulationCase c;
  c.kind = Kind::SkewT;
  c.dof = dof;
  c.skew = skew;
  return c;
}

SimulationCase SimulationCase::contaminated_skew_t(double dof, double skew, double contamination,
                                                   double shift) {
  SimulationCase c;
  c.kind = Kind::ContaminatedSkewT;
  c.dof = dof;
  c.skew = skew;
  c.contamination = contamination;
  c.shift = shift;
  return c;
}

SimulationCase SimulationCase::benchmark_case(int number) {
  switch (number) {
    case 1: return gaussian();
    case 2: return student_t(3.5);
    case 3: return skew_t(4.0, 20.0);
    case 4: return contaminated_skew_t(4.0, 10.0, 0.05, -8.0);
    default: throw std::invalid_argument("simulation case must be 1, 2, 3 or 4");
  }
}

void SimulationCase::validate() const {
  if (kind == Kind::StudentT && !(dof > 2.0)) {
    throw std::invalid_argument("Student t case needs dof > 2");
  }
  if ((kind == Kind::SkewT || kind == Kind::ContaminatedSkewT) && !(dof > 0.0)) {
    throw std::invalid_argument("skew t case needs dof > 0");
  }
  if (!(contamination >= 0.0 && contamination <= 1.0)) {
    throw std::invalid_argument("contamination must lie in [0, 1]");
  }
}

std::string SimulationCase::name() const {
  switch (kind) {
    case Kind::Gaussian: return "gaussian";
    case Kind::StudentT: return "student_t";
    case Kind::SkewT: return "skew_t";
    case Kind::ContaminatedSkewT: return "contaminated_skew_t";
  }
  return "unknown";
}

SymmetricMatrix build_omega0(std::size_t p) {
  if (p < 4 || p % 2 != 0) throw std::invalid_argument("build_omega0: p must be even and >= 4");
  const std::size_t half = p / 2;
  SymmetricMatrix omega = SymmetricMatrix::zeros(static_cast<Index>(p));
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = i; j < half; ++j) {
      const double v = std::max(1.0 - static_cast<double>(j - i) / 10.0, 0.0);
      omega.set(static_cast<Index>(i), static_cast<Index>(j), v);
    }
  }
  for (std::size_t i = half; i < p; ++i) omega.set(static_cast<Index>(i), static_cast<Index>(i), 4.0);
  return omega;
}

CaseSample sample_case_with_labels(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n,
                                   Rng& rng) {
  c.validate();
  const Index p = omega0.dim();
  const bool skewed = c.kind == SimulationCase::Kind::SkewT || c.kind == SimulationCase::Kind::ContaminatedSkewT;
  const bool heavy = c.kind != SimulationCase::Kind::Gaussian;

  // Skew cases sample the correlation form and rescale: Y = diag(w) Z with
  // Z skew-normal on the correlation matrix, w = sqrt(diag(Omega0)).
  Vector scale = Vector::Ones(p);
  Matrix target = omega0.values();
  if (skewed) {
    scale = omega0.values().diagonal().cwiseSqrt();
    target = scale.cwiseInverse().asDiagonal() * omega0.values() * scale.cwiseInverse().asDiagonal();
  }
  Eigen::LLT<Matrix> llt(target);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("sample_case: Omega0 is not positive definite");
  }
  const Matrix chol = llt.matrixL();
  const Vector alpha = Vector::Constant(p, c.skew);

  Matrix y(static_cast<Index>(n), p);
  std::vector<bool> contaminated(n, false);
  Vector g(p);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = static_cast<Index>(k);
    if (c.kind == SimulationCase::Kind::ContaminatedSkewT && rng.bernoulli(c.contamination)) {
      contaminated[k] = true;
      for (Index j = 0; j < p; ++j) y(row, j) = c.shift + rng.normal();
      continue;
    }
    for (Index j = 0; j < p; ++j) g(j) = rng.normal();
    Vector z = chol.triangularView<Eigen::Lower>() * g;
    if (skewed) {
      // Azzalini's reflection: keep z when alpha'z exceeds an independent
      // N(0, 1) draw, otherwise use -z. The result is skew-normal with
      // correlation matrix `target` and shape alpha.
      const double gate = rng.normal();
      if (alpha.dot(z) <= gate) z = -z;
      z = scale.cwiseProduct(z);
    }
    if (heavy) z /= std::sqrt(rng.chi_square(c.dof) / c.dof);
    y.row(row) = z.transpose();
  }
  return {BasisMatrix(std::move(y)), std::move(contaminated)};
}

BasisMatrix sample_case(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n, Rng& rng) {
  return sample_case_with_labels(c, omega0, n, rng).basis;
}

BasisMatrix sample_case(const SimulationCase& c, const SymmetricMatrix& omega0, std::size_t n,
                        std::uint64_t seed) {
  Rng rng(seed);
  return sample_case(c, omega0, n, rng);
}

CompositionMatrix basis_to_composition(const BasisMatrix& y) {
  Matrix x = y.values();
  for (Index k = 0; k < x.rows(); ++k) {
    const double top = x.row(k).maxCoeff();
    x.row(k) = (x.row(k).array() - top).exp().matrix();
    x.row(k) /= x.row(k).sum();
  }
  return CompositionMatrix(std::move(x));
}

}  // namespace rcec
