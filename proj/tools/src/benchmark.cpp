#include "rcec_cli/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rcec/metrics.hpp"
#include "rcec/parallel.hpp"
#include "rcec/random.hpp"
#include "rcec/simgen.hpp"
#include "rcec_cli/csv_io.hpp"

namespace rcec::cli {

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kFoldSeedStream = 1;

double metric_value(const ReplicationRecord& r, const std::string& metric) {
  if (metric == "l1") return r.l1;
  if (metric == "spectral") return r.spectral;
  if (metric == "frobenius") return r.frobenius;
  if (metric == "tpr") return r.tpr;
  if (metric == "fpr") return r.fpr;
  if (metric == "tpr_degenerate") return r.tpr_degenerate ? 1.0 : 0.0;
  if (metric == "fpr_degenerate") return r.fpr_degenerate ? 1.0 : 0.0;
  if (metric == "lambda_star") return r.lambda_star;
  throw std::logic_error("unknown metric " + metric);
}

std::string metric_title(const std::string& metric) {
  if (metric == "l1") return "Matrix L1 norm loss";
  if (metric == "spectral") return "Spectral norm loss";
  if (metric == "frobenius") return "Frobenius norm loss";
  if (metric == "tpr") return "True positive rate";
  if (metric == "fpr") return "False positive rate";
  return metric;
}

}  // namespace

const std::vector<std::string>& benchmark_metrics() {
  static const std::vector<std::string> metrics{"l1",  "spectral",       "frobenius",      "tpr",
                                                "fpr", "tpr_degenerate", "fpr_degenerate", "lambda_star"};
  return metrics;
}

void BenchmarkSpec::validate() const {
  if (cases.empty()) throw std::invalid_argument("benchmark: no cases selected");
  for (int c : cases) {
    if (c < 1 || c > 4) throw std::invalid_argument("benchmark: cases must be in 1..4");
  }
  if (p_list.empty()) throw std::invalid_argument("benchmark: no dimensions selected");
  for (std::size_t p : p_list) {
    if (p < 4 || p % 2 != 0) throw std::invalid_argument("benchmark: every p must be even and >= 4");
  }
  if (replications < 1) throw std::invalid_argument("benchmark: replications must be >= 1");
  if (estimators.empty()) throw std::invalid_argument("benchmark: no estimators selected");
  for (const auto& e : estimators) {
    if (e != "rcec" && e != "coat" && e != "oracle") {
      throw std::invalid_argument("benchmark: unknown estimator '" + e + "'");
    }
  }
}

BenchmarkResult run_benchmark(const BenchmarkSpec& spec, const EstimatorConfig& base) {
  spec.validate();
  base.validate();

  struct Task {
    int case_number;
    std::size_t p;
    std::size_t replication;
  };
  std::vector<Task> tasks;
  for (int c : spec.cases) {
    for (std::size_t p : spec.p_list) {
      for (std::size_t r = 0; r < spec.replications; ++r) tasks.push_back({c, p, r});
    }
  }

  std::map<std::size_t, SymmetricMatrix> omegas;
  for (std::size_t p : spec.p_list) {
    SymmetricMatrix omega = build_omega0(p);
    if (spec.diagonal_omega) omega = SymmetricMatrix(Matrix(omega.values().diagonal().asDiagonal()));
    omegas.emplace(p, std::move(omega));
  }

  const std::size_t per_task = spec.estimators.size();
  std::vector<ReplicationRecord> records(tasks.size() * per_task);
  parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    const SymmetricMatrix& omega0 = omegas.at(task.p);
    Rng data_rng = Rng::child(spec.seed, {static_cast<std::uint64_t>(task.case_number), task.p,
                                          task.replication, kDataStream});
    const std::uint64_t fold_seed = Rng::child(spec.seed, {static_cast<std::uint64_t>(task.case_number),
                                                           task.p, task.replication, kFoldSeedStream})
                                        .next();

    const BasisMatrix y = sample_case(SimulationCase::benchmark_case(task.case_number), omega0, spec.n, data_rng);
    const CompositionMatrix x = basis_to_composition(y);

    for (std::size_t e = 0; e < per_task; ++e) {
      const std::string& name = spec.estimators[e];
      EstimatorConfig config = base;
      config.seed = fold_seed;
      EstimateResult fit;
      if (name == "oracle") {
        config.kind = EstimatorKind::Rcec;
        fit = estimate_from_logs(y.values(), config);
      } else {
        config.kind = parse_estimator_kind(name);
        fit = estimate(x, config);
      }
      ReplicationRecord& rec = records[t * per_task + e];
      rec.case_number = task.case_number;
      rec.p = task.p;
      rec.estimator = name;
      rec.replication = task.replication;
      rec.l1 = matrix_l1_loss(fit.omega_hat, omega0);
      rec.spectral = spectral_loss(fit.omega_hat, omega0);
      rec.frobenius = frobenius_loss(fit.omega_hat, omega0);
      const SupportMetrics support = support_metrics(fit.omega_hat, omega0);
      rec.tpr = support.tpr;
      rec.fpr = support.fpr;
      rec.tpr_degenerate = support.tpr_degenerate;
      rec.fpr_degenerate = support.fpr_degenerate;
      rec.lambda_star = fit.lambda_star;
    }
  });

  BenchmarkResult result;
  result.records = std::move(records);
  for (int c : spec.cases) {
    for (std::size_t p : spec.p_list) {
      for (const auto& name : spec.estimators) {
        for (const auto& metric : benchmark_metrics()) {
          std::vector<double> values;
          for (const auto& rec : result.records) {
            if (rec.case_number == c && rec.p == p && rec.estimator == name) {
              values.push_back(metric_value(rec, metric));
            }
          }
          double sum = 0.0;
          for (double v : values) sum += v;
          const double mean = sum / static_cast<double>(values.size());
          double ss = 0.0;
          for (double v : values) ss += (v - mean) * (v - mean);
          const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
          result.summary.push_back({c, p, name, metric, mean, sd, values.size(), spec.seed});
        }
      }
    }
  }
  return result;
}

std::string summary_csv(const BenchmarkResult& result) {
  std::ostringstream os;
  os << "case,p,estimator,metric,mean,sd,replications,seed\n";
  for (const auto& row : result.summary) {
    os << row.case_number << ',' << row.p << ',' << row.estimator << ',' << row.metric << ','
       << format_report(row.mean) << ',' << format_report(row.sd) << ',' << row.replications << ','
       << row.seed << '\n';
  }
  return os.str();
}

std::string summary_markdown(const BenchmarkResult& result, const BenchmarkSpec& spec) {
  std::ostringstream os;
  os << "# Simulation benchmark\n\n"
     << "n = " << spec.n << ", replications = " << spec.replications << ", seed = " << spec.seed
     << (spec.diagonal_omega ? ", diagonal Omega0" : "") << ".\n"
     << "Cells show mean (sd), the sd being the sample standard deviation across replications.\n";
  const std::vector<std::string> panels{"l1", "spectral", "frobenius", "tpr", "fpr"};
  for (int c : spec.cases) {
    os << "\n## Case " << c << "\n\n| metric | p |";
    for (const auto& e : spec.estimators) os << ' ' << e << " |";
    os << "\n|---|---|";
    for (std::size_t e = 0; e < spec.estimators.size(); ++e) os << "---|";
    os << '\n';
    for (const auto& metric : panels) {
      for (std::size_t p : spec.p_list) {
        os << "| " << metric_title(metric) << " | " << p << " |";
        for (const auto& e : spec.estimators) {
          for (const auto& row : result.summary) {
            if (row.case_number == c && row.p == p && row.estimator == e && row.metric == metric) {
              os << ' ' << format_report(row.mean) << " (" << format_report(row.sd) << ") |";
            }
          }
        }
        os << '\n';
      }
    }
    for (const auto& row : result.summary) {
      if (row.case_number == c && row.metric == "tpr_degenerate" && row.mean > 0.0) {
        os << "\nNote: Omega0 has no off-diagonal nonzeros for p = " << row.p
           << "; TPR is reported as 1 by convention.\n";
        break;
      }
    }
  }
  return os.str();
}

std::string replications_csv(const BenchmarkResult& result) {
  std::ostringstream os;
  os << "case,p,estimator,replication,l1,spectral,frobenius,tpr,fpr,lambda_star\n";
  for (const auto& r : result.records) {
    os << r.case_number << ',' << r.p << ',' << r.estimator << ',' << r.replication << ','
       << format_report(r.l1) << ',' << format_report(r.spectral) << ',' << format_report(r.frobenius) << ','
       << format_report(r.tpr) << ',' << format_report(r.fpr) << ',' << format_report(r.lambda_star) << '\n';
  }
  return os.str();
}

}  // namespace rcec::cli
