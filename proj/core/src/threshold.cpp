#include "rcec/threshold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rcec {

namespace {

double sign(double z) { return (z > 0.0) - (z < 0.0); }

double soft_shrink(double z, double lambda) { return sign(z) * std::max(std::abs(z) - lambda, 0.0); }

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_parameter(std::string_view text, std::string_view rule) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("invalid " + std::string(rule) + " parameter '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ThresholdRule ThresholdRule::adaptive_lasso(double eta) {
  if (!(eta >= 1.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("adaptive lasso rule needs eta >= 1");
  }
  return ThresholdRule(AdaptiveLassoRule{eta});
}

ThresholdRule ThresholdRule::scad(double a) {
  if (!(a > 2.0) || !std::isfinite(a)) throw std::invalid_argument("SCAD rule needs a > 2");
  return ThresholdRule(ScadRule{a});
}

ThresholdRule ThresholdRule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "soft" && colon == std::string_view::npos) return soft();
  if (name == "alasso") return adaptive_lasso(arg.empty() ? 1.0 : parse_parameter(arg, "alasso"));
  if (name == "scad") return scad(arg.empty() ? 3.7 : parse_parameter(arg, "scad"));
  throw std::invalid_argument("unknown threshold rule '" + std::string(text) +
                              "' (expected soft, alasso:<eta> or scad:<a>)");
}

std::string ThresholdRule::to_string() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, SoftRule>) {
          os << "soft";
        } else if constexpr (std::is_same_v<R, AdaptiveLassoRule>) {
          os << "alasso:" << shortest(r.eta);
        } else {
          os << "scad:" << shortest(r.a);
        }
      },
      rule_);
  return os.str();
}

double ThresholdRule::apply(double z, double lambda) const {
  return std::visit(
      [&](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, SoftRule>) {
          return soft_shrink(z, lambda);
        } else if constexpr (std::is_same_v<R, AdaptiveLassoRule>) {
          if (z == 0.0) return 0.0;
          const double shrink = 1.0 - std::pow(std::abs(lambda / z), r.eta);
          return z * std::max(shrink, 0.0);
        } else {
          const double abs_z = std::abs(z);
          if (abs_z <= 2.0 * lambda) return soft_shrink(z, lambda);
          if (abs_z <= r.a * lambda) return ((r.a - 1.0) * z - sign(z) * r.a * lambda) / (r.a - 2.0);
          return z;
        }
      },
      rule_);
}

bool needs_diagonal_floor(const SymmetricMatrix& gamma) {
  for (Index i = 0; i < gamma.dim(); ++i) {
    if (!(gamma(i, i) >= kDiagonalFloor)) return true;
  }
  return false;
}

SymmetricMatrix entry_thresholds(const SymmetricMatrix& gamma, double lambda, std::size_t n) {
  const Index p = gamma.dim();
  if (p < 2) throw std::invalid_argument("entry_thresholds: need p >= 2");
  if (n < 2) throw std::invalid_argument("entry_thresholds: need n >= 2");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("entry_thresholds: lambda must be finite and nonnegative");
  }
  if (!gamma.all_finite()) throw std::invalid_argument("entry_thresholds: non-finite covariance entry");

  const double rate = std::log(static_cast<double>(p)) / static_cast<double>(n);
  Vector scale(p);
  for (Index i = 0; i < p; ++i) scale(i) = std::sqrt(std::max(gamma(i, i), kDiagonalFloor));

  SymmetricMatrix out = SymmetricMatrix::zeros(p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i; j < p; ++j) {
      out.set(i, j, lambda * scale(i) * scale(j) * std::sqrt(rate));
    }
  }
  return out;
}

SymmetricMatrix threshold_matrix(const SymmetricMatrix& gamma, double lambda, std::size_t n,
                                 const ThresholdRule& rule, bool threshold_diagonal) {
  const SymmetricMatrix limits = entry_thresholds(gamma, lambda, n);
  const Index p = gamma.dim();
  SymmetricMatrix out = SymmetricMatrix::zeros(p);
  for (Index i = 0; i < p; ++i) {
    out.set(i, i, threshold_diagonal ? rule.apply(gamma(i, i), limits(i, i)) : gamma(i, i));
    for (Index j = i + 1; j < p; ++j) out.set(i, j, rule.apply(gamma(i, j), limits(i, j)));
  }
  return out;
}

}  // namespace rcec
