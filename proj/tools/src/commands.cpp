#include "rcec_cli/commands.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcec/compdata.hpp"
#include "rcec/config_io.hpp"
#include "rcec/metrics.hpp"
#include "rcec/simgen.hpp"
#include "rcec/stability.hpp"
#include "rcec/tuning.hpp"
#include "rcec_cli/benchmark.hpp"
#include "rcec_cli/csv_io.hpp"

namespace rcec::cli {

namespace {

using nlohmann::ordered_json;

// Numbers in reports carry six significant digits.
double report_number(double v) { return std::stod(format_report(v)); }

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string rule;
  std::size_t folds = 0;
  std::size_t grid_size = 0;
  double L = 0.0;
  std::string estimator;
  bool counts = false;
  double zero_replacement = kDefaultZeroReplacement;
  bool no_pd = false;
  bool threshold_diagonal = false;
  std::string config_path;
  bool row_names = false;
};

struct OptionHandles {
  CLI::Option* seed = nullptr;
  CLI::Option* rule = nullptr;
  CLI::Option* folds = nullptr;
  CLI::Option* grid_size = nullptr;
  CLI::Option* L = nullptr;
  CLI::Option* estimator = nullptr;
};

EstimatorConfig build_config(const GlobalOptions& g, const OptionHandles& h) {
  EstimatorConfig config;
  if (!g.config_path.empty()) config = load_config_file(g.config_path, config);
  if (h.seed->count() > 0) config.seed = g.seed;
  if (h.rule->count() > 0) config.rule = ThresholdRule::parse(g.rule);
  if (h.folds->count() > 0) config.folds = g.folds;
  if (h.grid_size->count() > 0) config.grid_size = g.grid_size;
  if (h.L->count() > 0) config.L = g.L;
  if (h.estimator->count() > 0) config.kind = parse_estimator_kind(g.estimator);
  if (g.no_pd) config.enforce_pd = false;
  if (g.threshold_diagonal) config.threshold_diagonal = true;
  config.validate();
  return config;
}

CompositionMatrix load_composition(const std::string& path, const GlobalOptions& g, DataTable& table) {
  table = read_csv_file(path, g.row_names);
  if (g.counts) return close_counts(CountMatrix(table.values), g.zero_replacement);
  return CompositionMatrix(table.values);
}

ordered_json config_json(const EstimatorConfig& config) {
  ordered_json j;
  std::istringstream lines(to_key_values(config));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

ordered_json edge_json(const Edge& e, const std::vector<std::string>& names, bool with_occurrences) {
  ordered_json j;
  j["i"] = e.i;
  j["j"] = e.j;
  j["taxon_i"] = names[static_cast<std::size_t>(e.i)];
  j["taxon_j"] = names[static_cast<std::size_t>(e.j)];
  j["sign"] = e.sign;
  j["weight"] = e.weight;
  j["correlation"] = e.correlation;
  if (with_occurrences) {
    j["occurrences"] = e.occurrences;
    j["sign_agreements"] = e.sign_agreements;
  } else {
    j["occurrences"] = nullptr;
  }
  return j;
}

ordered_json edges_json(const SupportSet& set, const std::vector<std::string>& names, bool with_occurrences) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : set.edges) arr.push_back(edge_json(e, names, with_occurrences));
  return arr;
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir + "': " + ec.message());
}

std::string cv_curve_csv(const std::vector<CvPoint>& curve) {
  std::ostringstream os;
  os << "lambda,cv_error\n";
  for (const auto& pt : curve) os << format_full(pt.lambda) << ',' << format_full(pt.error) << '\n';
  return os.str();
}

int cmd_estimate(const std::string& input, const std::string& out_dir, const GlobalOptions& g,
                 const OptionHandles& h, std::ostream& out) {
  const EstimatorConfig config = build_config(g, h);
  DataTable table;
  const CompositionMatrix x = load_composition(input, g, table);
  const EstimateResult fit = estimate(x, config);

  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "omega.csv"), labelled_matrix_csv(table.columns, fit.omega_hat.values()));
  write_text_file(join_path(out_dir, "cv_curve.csv"), cv_curve_csv(fit.cv_curve));

  const SupportSet edges = extract_edges(fit.omega_hat);
  ordered_json ej;
  ej["edges"] = edges_json(edges, table.columns, false);
  ej["stability"] = nullptr;
  ej["positives"] = edges.positives();
  ej["negatives"] = edges.negatives();
  write_text_file(join_path(out_dir, "edges.json"), ej.dump(2) + "\n");

  ordered_json report;
  report["command"] = "estimate";
  report["input"] = input;
  report["estimator"] = to_string(fit.kind);
  report["rule"] = config.rule.to_string();
  report["n"] = x.n();
  report["p"] = x.p();
  report["block_count"] = fit.block_count;
  report["lambda_star"] = report_number(fit.lambda_star);
  report["min_eigenvalue"] = report_number(fit.min_eigenvalue);
  report["edges"] = edges.edges.size();
  report["input_kind"] = g.counts ? "counts" : "proportions";
  if (g.counts) report["zero_replacement"] = g.zero_replacement;
  report["warnings"] = fit.warnings;
  report["config"] = config_json(config);
  write_text_file(join_path(out_dir, "report.json"), report.dump(2) + "\n");

  out << to_string(fit.kind) << ": lambda* = " << format_report(fit.lambda_star)
      << ", min eigenvalue = " << format_report(fit.min_eigenvalue) << ", " << edges.edges.size()
      << " edges -> " << out_dir << '\n';
  return kExitOk;
}

int cmd_simulate(int case_number, std::size_t n, std::size_t p, const std::string& out_path,
                 const GlobalOptions& g, std::ostream& out) {
  const SimulationCase sim = SimulationCase::benchmark_case(case_number);
  const SymmetricMatrix omega0 = build_omega0(p);
  Rng rng = Rng::child(g.seed, {static_cast<std::uint64_t>(case_number), p, 0});
  const CaseSample sample = sample_case_with_labels(sim, omega0, n, rng);
  const CompositionMatrix x = basis_to_composition(sample.basis);

  std::vector<std::string> names;
  for (std::size_t j = 0; j < p; ++j) names.push_back("taxon" + std::to_string(j + 1));
  write_text_file(out_path, samples_csv(names, x.values()));

  std::size_t contaminated = 0;
  for (bool c : sample.contaminated) contaminated += c ? 1 : 0;
  ordered_json meta;
  meta["case"] = case_number;
  meta["distribution"] = sim.name();
  meta["n"] = n;
  meta["p"] = p;
  meta["seed"] = g.seed;
  meta["contaminated_rows"] = contaminated;
  meta["omega0"] = "diag(A1, 4 I), A1_ij = (1 - |i - j| / 10)_+";
  write_text_file(out_path + ".meta.json", meta.dump(2) + "\n");
  out << "wrote " << n << "x" << p << " case " << case_number << " compositions to " << out_path << '\n';
  return kExitOk;
}

int cmd_benchmark(const BenchmarkSpec& spec, const std::string& out_dir, const GlobalOptions& g,
                  const OptionHandles& h, std::ostream& out) {
  const EstimatorConfig config = build_config(g, h);
  const BenchmarkResult result = run_benchmark(spec, config);
  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "results.csv"), summary_csv(result));
  write_text_file(join_path(out_dir, "results.md"), summary_markdown(result, spec));
  write_text_file(join_path(out_dir, "replications.csv"), replications_csv(result));
  out << "benchmark: " << result.records.size() << " fits -> " << out_dir << '\n';
  return kExitOk;
}

int cmd_stability(const std::string& input, const std::string& out_path, const StabilityOptions& options,
                  const GlobalOptions& g, const OptionHandles& h, std::ostream& out) {
  const EstimatorConfig config = build_config(g, h);
  DataTable table;
  const CompositionMatrix x = load_composition(input, g, table);
  const StabilityResult res = bootstrap_stability(x, config, options);

  ordered_json j;
  j["edges"] = edges_json(res.stable_edges, table.columns, true);
  j["stability"] = report_number(res.stability_score);
  j["positives"] = res.positive_count;
  j["negatives"] = res.negative_count;
  j["baseline_edges"] = edges_json(res.baseline_edges, table.columns, true);
  ordered_json meta;
  meta["input"] = input;
  meta["estimator"] = to_string(config.kind);
  meta["rule"] = config.rule.to_string();
  meta["B"] = options.replicates;
  meta["retain_threshold"] = options.retain_threshold;
  meta["seed"] = options.seed;
  meta["reuse_lambda"] = options.reuse_lambda;
  meta["self_replicate"] = options.self_replicate;
  meta["baseline_lambda_star"] = report_number(res.baseline.lambda_star);
  meta["failed_replicates"] = res.failed_replicates;
  meta["warnings"] = res.warnings;
  meta["config"] = config_json(config);
  j["metadata"] = meta;
  write_text_file(out_path, j.dump(2) + "\n");

  out << to_string(config.kind) << ": stability = " << format_report(res.stability_score) << ", "
      << res.stable_edges.edges.size() << " of " << res.baseline_edges.edges.size()
      << " edges retained -> " << out_path << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust sparse covariance estimation for compositional data", "rcec"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  OptionHandles h;
  h.seed = app.add_option("--seed", g.seed, "Random seed (folds, simulation, bootstrap)");
  h.rule = app.add_option("--rule", g.rule, "Thresholding rule: soft | alasso:<eta> | scad:<a>");
  h.folds = app.add_option("--folds", g.folds, "Cross-validation folds V")->check(CLI::Range(2, 1000000));
  h.grid_size = app.add_option("--grid-size", g.grid_size, "Length of the lambda grid")
                    ->check(CLI::Range(2, 1000000));
  h.L = app.add_option("--L", g.L, "Block-count constant: M = ceil((2 + L) ln p)")
            ->check(CLI::PositiveNumber);
  h.estimator = app.add_option("--estimator", g.estimator, "rcec (median of means) or coat (sample covariance)")
                    ->check(CLI::IsMember({"rcec", "coat"}));
  app.add_flag("--counts", g.counts, "Input holds read counts (zeros are replaced, rows closed)");
  app.add_option("--zero-replacement", g.zero_replacement, "Value substituted for zero counts")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-pd", g.no_pd, "Do not restrict lambda to positive definite estimates");
  app.add_flag("--threshold-diagonal", g.threshold_diagonal, "Threshold the diagonal as well");
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_flag("--row-names", g.row_names, "First CSV column holds sample labels");

  std::string input;
  std::string out_dir = ".";
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the basis covariance of a CSV of samples");
  estimate_cmd->add_option("input", input, "CSV file, one sample per row")->required();
  estimate_cmd->add_option("--out", out_dir, "Output directory");

  int case_number = 1;
  std::size_t sim_n = 100;
  std::size_t sim_p = 50;
  std::string sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate synthetic compositions");
  simulate_cmd->add_option("--case", case_number, "Simulation case 1..4")->check(CLI::Range(1, 4));
  simulate_cmd->add_option("--n", sim_n, "Sample size")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--p", sim_p, "Number of taxa (even, >= 4)");
  simulate_cmd->add_option("--out", sim_out, "Output CSV path")->required();

  BenchmarkSpec spec;
  std::string bench_out = "benchmark";
  auto* bench_cmd = app.add_subcommand("benchmark", "Run the simulation benchmark (losses and support recovery)");
  bench_cmd->add_option("--cases", spec.cases, "Cases to run")->delimiter(',')->check(CLI::Range(1, 4));
  bench_cmd->add_option("--n", spec.n, "Sample size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--p", spec.p_list, "Dimensions")->delimiter(',');
  bench_cmd->add_option("--reps", spec.replications, "Replications per setting")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--estimators", spec.estimators, "rcec, coat, oracle")
      ->delimiter(',')
      ->check(CLI::IsMember({"rcec", "coat", "oracle"}));
  bench_cmd->add_flag("--diagonal-omega", spec.diagonal_omega, "Use diag(Omega0) as the truth");
  bench_cmd->add_option("--out", bench_out, "Output directory");

  StabilityOptions stab;
  std::string stab_out = "stability.json";
  auto* stab_cmd = app.add_subcommand("stability", "Bootstrap stability of the estimated network");
  stab_cmd->add_option("input", input, "CSV file, one sample per row")->required();
  stab_cmd->add_option("--B", stab.replicates, "Bootstrap replicates")->check(CLI::PositiveNumber);
  stab_cmd->add_option("--retain", stab.retain_threshold, "Keep edges seen in at least this many replicates");
  stab_cmd->add_flag("--reuse-lambda", stab.reuse_lambda, "Reuse the baseline lambda* in every replicate");
  stab_cmd->add_flag("--self-replicate", stab.self_replicate)->group("");
  stab_cmd->add_option("--out", stab_out, "Output JSON path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate_cmd) return cmd_estimate(input, out_dir, g, h, out);
    if (*simulate_cmd) return cmd_simulate(case_number, sim_n, sim_p, sim_out, g, out);
    if (*bench_cmd) {
      spec.seed = g.seed;
      return cmd_benchmark(spec, bench_out, g, h, out);
    }
    if (*stab_cmd) {
      stab.seed = g.seed;
      return cmd_stability(input, stab_out, stab, g, h, out);
    }
  } catch (const CsvParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitUsage;
}

}  // namespace rcec::cli
