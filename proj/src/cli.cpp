#include "qasvd/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qasvd/anneal.hpp"
#include "qasvd/errors.hpp"
#include "qasvd/image.hpp"
#include "qasvd/io.hpp"
#include "qasvd/oracle.hpp"
#include "qasvd/series.hpp"
#include "qasvd/spectrum.hpp"
#include "qasvd/two_level.hpp"

namespace qasvd {

namespace {

// Oracle cross-checks are attached automatically only below this dimension;
// full diagonalization beyond it is slow enough to dominate the run.
constexpr Eigen::Index kAutoOracleLimit = 512;

Integrator parse_integrator(const std::string& name) {
  if (name == "euler") return Integrator::Euler;
  if (name == "euler-renorm") return Integrator::EulerRenorm;
  if (name == "midpoint") return Integrator::Midpoint;
  throw ConfigError("unknown integrator '" + name +
                    "' (euler, euler-renorm, midpoint)");
}

// "rowsum" -> 0 (pipeline default), "none" -> 1, else a positive number.
double parse_scale(const std::string& mode) {
  if (mode == "rowsum") return 0.0;
  if (mode == "none") return 1.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(mode, &used);
    if (used == mode.size() && v > 0.0 && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad --scale '" + mode +
                    "' (rowsum, none, or a positive number)");
}

AnnealSchedule schedule_from(const RunConfig& config) {
  AnnealSchedule s;
  s.T = config.T;
  s.stepCount = config.steps;
  s.integrator = parse_integrator(config.integrator);
  s.traceStride = 0;
  s.h0.lambda0 = config.lambda0;
  s.h0.lambdaExc = config.lambdaExc;
  s.h0.groundIndex = config.groundIndex;
  return s;
}

void emit_text(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    std::cout.flush();
  } else {
    atomic_write_file(path, payload);
  }
}

DataMatrix load_matrix(const RunConfig& config) {
  if (config.input.empty()) {
    throw ConfigError("--input is required");
  }
  DataMatrix a(read_matrix_file(config.input));
  if (config.normalize) {
    return normalize_columns(a);
  }
  return a;
}

void write_trace_csv(const std::string& path, const AnnealTrace& trace) {
  std::ostringstream out;
  out << "t,x,rayleigh,norm,overlap\n";
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    out << format_double(trace.t[i]) << "," << format_double(trace.x[i]) << ","
        << format_double(trace.rayleigh[i]) << ","
        << format_double(trace.norm[i]) << ",";
    if (i < trace.overlap.size()) {
      out << format_double(trace.overlap[i]);
    }
    out << "\n";
  }
  emit_text(path, out.str());
}

// Top-k triplets straight from the classical eigensolver.
SpectrumResult oracle_result(const DataMatrix& a, Eigen::Index k) {
  const Eigen::Index rankCap = std::min(a.rows(), a.cols());
  if (k < 1 || k > rankCap) {
    throw IndexOutOfRange("k must lie in [1, " + std::to_string(rankCap) +
                          "], got " + std::to_string(k));
  }
  const GramOperator g = gram(a);
  const EigenDecomposition eig = full_diagonalize(g);
  SpectrumResult result;
  result.method = "oracle";
  for (Eigen::Index j = 0; j < k; ++j) {
    PrincipalComponent c;
    c.lambda = eig.eigenvalues(j);
    c.sigma = std::sqrt(std::max(c.lambda, 0.0));
    c.v = eig.eigenvectors.col(j);
    c.residual = residual(g, c);
    if (c.lambda > 1e-14) {
      c.u = left_vector(a, c.v, c.lambda);
    } else {
      c.u = Eigen::VectorXd::Zero(a.rows());
    }
    result.components.push_back(std::move(c));
  }
  return result;
}

int run_decompose(const RunConfig& config) {
  const DataMatrix a = load_matrix(config);
  const double gramScale = parse_scale(config.scale);
  AnnealSchedule schedule = schedule_from(config);
  if (!(schedule.T > 0.0)) {
    schedule.T = default_anneal_time(a.cols());
  }
  SpectrumResult result =
      top_k(a, config.k, schedule, config.tol, gramScale);
  if (a.cols() <= kAutoOracleLimit) {
    attach_oracle_fidelity(result, a);
  }
  emit_text(config.output, result_to_json(result));

  if (!config.tracePath.empty()) {
    // Re-run the first anneal with tracing on so convergence is inspectable.
    const GramOperator base = gram(
        a, a.cols() <= kDenseGramLimit ? GramMode::Explicit
                                       : GramMode::Implicit);
    const GramOperator scaled = gramScale > 0.0 ? base.with_scale(gramScale)
                                                : base.with_anneal_scale();
    AnnealSchedule traced = schedule;
    traced.traceStride = std::max<Eigen::Index>(1, config.traceStride);
    const Eigen::VectorXcd ref =
        result.components.front().v.cast<std::complex<double>>();
    const EvolveResult ev = evolve(scaled, traced.h0, traced, &ref);
    write_trace_csv(config.tracePath, ev.trace);
  }
  return 0;
}

int run_oracle(const RunConfig& config) {
  const DataMatrix a = load_matrix(config);
  SpectrumResult result = oracle_result(a, config.k);
  emit_text(config.output, result_to_json(result));
  return 0;
}

int run_gap(const RunConfig& config) {
  TwoLevelParams p;
  p.K = config.K;
  p.alpha = config.alpha;
  p.lambda0H = config.lambda0;
  p.validate();

  if (!config.csvPath.empty()) {
    if (config.gridSize < 2) {
      throw ConfigError("--grid must be at least 2");
    }
    std::ostringstream csv;
    csv << "x,E_minus,E_plus,gap,a,b\n";
    const double step = 1.0 / static_cast<double>(config.gridSize - 1);
    for (long i = 0; i < config.gridSize; ++i) {
      const double x = static_cast<double>(i) * step;
      const EnergyBranches e = energy_branches(p, x);
      const MixingCoefficients mix = coefficients(p, x);
      csv << format_double(x) << "," << format_double(e.minus) << ","
          << format_double(e.plus) << "," << format_double(e.plus - e.minus)
          << "," << format_double(mix.a) << "," << format_double(mix.b)
          << "\n";
    }
    emit_text(config.csvPath, csv.str());
  }

  nlohmann::ordered_json doc;
  doc["min_gap"] = min_gap(p);
  doc["argmin_x"] = min_gap_location(p);
  doc["time_scale"] = time_scale(p);
  emit_text(config.output, doc.dump(2) + "\n");
  return 0;
}

int run_series(const RunConfig& config) {
  const DataMatrix a = load_matrix(config);
  if (!(config.T > 0.0)) {
    throw ConfigError("series: --T is required and must be positive");
  }
  const double gramScale = parse_scale(config.scale);
  const GramOperator base = gram(
      a, a.cols() <= kDenseGramLimit ? GramMode::Explicit
                                     : GramMode::Implicit);
  const GramOperator g = gramScale > 0.0 ? base.with_scale(gramScale)
                                         : base.with_anneal_scale();
  InitialHamiltonian h0;
  h0.lambda0 = config.lambda0;
  h0.lambdaExc = config.lambdaExc;
  h0.groundIndex = config.groundIndex;

  const SeriesExpansion expansion =
      series_terms(g, h0, config.T, config.maxOrder, config.tailTol);
  const SeriesSum sum = series_sum(expansion);

  // Independent check: a midpoint run at ten times the automatic step count.
  AnnealSchedule schedule;
  schedule.T = config.T;
  schedule.integrator = Integrator::Midpoint;
  schedule.stepCount =
      10 * auto_step_count(config.T, hamiltonian_bound(g, h0));
  schedule.h0 = h0;
  const EvolveResult ev = evolve(g, h0, schedule);

  const Eigen::VectorXcd state = gauge_fix(sum.state);
  nlohmann::ordered_json doc;
  doc["order_used"] = expansion.truncationOrder;
  doc["tail_norm"] = expansion.tailNorm;
  doc["prenorm_norm"] = sum.prenormNorm;
  auto stateJson = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    stateJson.push_back({state(i).real(), state(i).imag()});
  }
  doc["state"] = std::move(stateJson);
  doc["fidelity_vs_stepper"] = fidelity(state, ev.psi);
  emit_text(config.output, doc.dump(2) + "\n");
  return 0;
}

int run_image(const RunConfig& config) {
  if (config.input.empty()) {
    throw ConfigError("--input is required");
  }
  const ImageMatrix img = parse_pgm_file(config.input);
  const DataMatrix a = binarize(img, config.threshold);

  SpectrumResult result;
  if (config.method == "oracle") {
    result = oracle_result(a, config.k);
  } else if (config.method == "annealing") {
    const double gramScale = parse_scale(config.scale);
    AnnealSchedule schedule = schedule_from(config);
    if (!(schedule.T > 0.0)) {
      schedule.T = default_anneal_time(a.cols());
    }
    result = top_k(a, config.k, schedule, config.tol, gramScale);
    if (a.cols() <= kAutoOracleLimit) {
      attach_oracle_fidelity(result, a);
    }
  } else {
    throw ConfigError("unknown --method '" + config.method +
                      "' (annealing, oracle)");
  }
  emit_text(config.output, result_to_json(result));
  if (!config.outDir.empty()) {
    emit_reconstructions(a, result, config.outDir);
  }
  return 0;
}

int run_gen_testimage(const RunConfig& config) {
  if (config.output.empty()) {
    throw ConfigError("gen-testimage: --output is required");
  }
  const ImageMatrix img = generate_test_image(config.size, config.seed);
  write_pgm_file(config.output, img);
  return 0;
}

void add_common_matrix_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--input", config.input,
                  "matrix text file, or - for standard input");
  cmd->add_option("--output", config.output,
                  "result JSON path (default standard output)");
  cmd->add_flag("--normalize", config.normalize,
                "center columns and scale them to unit variance first");
}

void add_anneal_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--T", config.T,
                  "total anneal time (default 50 over the squared a-priori "
                  "model gap)");
  cmd->add_option("--steps", config.steps,
                  "integrator steps (default: automatic from the "
                  "Hamiltonian bound)");
  cmd->add_option("--integrator", config.integrator,
                  "euler, euler-renorm, or midpoint (default)");
  cmd->add_option("--scale", config.scale,
                  "Gram scaling: rowsum (default), none, or a positive "
                  "number");
  cmd->add_option("--tol", config.tol, "acceptance residual tolerance");
  cmd->add_option("--lambda0", config.lambda0,
                  "initial-Hamiltonian ground depth Lambda0");
  cmd->add_option("--lambda", config.lambdaExc,
                  "initial-Hamiltonian excited level Lambda");
  cmd->add_option("--ground-index", config.groundIndex,
                  "basis index of the initial ground state");
}

}  // namespace

int run(const RunConfig& config) {
  if (config.subcommand == "decompose") return run_decompose(config);
  if (config.subcommand == "oracle") return run_oracle(config);
  if (config.subcommand == "gap") return run_gap(config);
  if (config.subcommand == "series") return run_series(config);
  if (config.subcommand == "image") return run_image(config);
  if (config.subcommand == "gen-testimage") return run_gen_testimage(config);
  throw ConfigError("unknown subcommand '" + config.subcommand + "'");
}

int run_cli(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{
      "Singular-value decomposition by simulated adiabatic annealing"};
  app.require_subcommand(1);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "anneal the top-k principal components of a matrix");
  add_common_matrix_flags(decompose, config);
  add_anneal_flags(decompose, config);
  decompose->add_option("--k", config.k, "number of components (default 1)");
  decompose->add_option("--trace", config.tracePath,
                        "write an anneal trace CSV for the first component");
  decompose->add_option("--trace-stride", config.traceStride,
                        "steps between trace samples (default 100)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "classical eigensolver on the same input, same output schema");
  add_common_matrix_flags(oracle, config);
  oracle->add_option("--k", config.k, "number of components (default 1)");

  CLI::App* gap = app.add_subcommand(
      "gap", "two-level model branches, minimum gap, and time scale");
  gap->add_option("--K", config.K, "eigenvalue ratio lambda0/Lambda0");
  gap->add_option("--alpha", config.alpha, "overlap <phi0|v0>");
  gap->add_option("--lambda0", config.lambda0, "Lambda0 energy scale");
  gap->add_option("--grid", config.gridSize,
                  "points on the x grid for --csv (default 1001)");
  gap->add_option("--csv", config.csvPath,
                  "write per-x branch CSV (x,E_minus,E_plus,gap,a,b)");
  gap->add_option("--output", config.output,
                  "summary JSON path (default standard output)");

  CLI::App* series = app.add_subcommand(
      "series", "power-series propagator cross-checked against the stepper");
  add_common_matrix_flags(series, config);
  series->add_option("--T", config.T, "total time (required)")->required();
  series->add_option("--scale", config.scale,
                     "Gram scaling: rowsum (default), none, or a number");
  series->add_option("--max-order", config.maxOrder,
                     "truncation order cap (default 200)");
  series->add_option("--tail-tol", config.tailTol,
                     "relative tail threshold (default 1e-14)");
  series->add_option("--lambda0", config.lambda0, "ground depth Lambda0");
  series->add_option("--lambda", config.lambdaExc, "excited level Lambda");
  series->add_option("--ground-index", config.groundIndex,
                     "initial ground-state index");

  CLI::App* image = app.add_subcommand(
      "image", "binarize a PGM image and decompose it into rank-one layers");
  image->add_option("--input", config.input, "PGM image (P2 or P5)");
  image->add_option("--output", config.output,
                    "result JSON path (default standard output)");
  image->add_option("--out-dir", config.outDir,
                    "directory for component/partial PGM layers and "
                    "spectrum.csv");
  image->add_option("--method", config.method,
                    "annealing (default) or oracle");
  image->add_option("--threshold", config.threshold,
                    "binarization threshold (default ceil(maxval/2))");
  add_anneal_flags(image, config);
  image->add_option("--k", config.k, "number of components (default 1)");

  CLI::App* gen = app.add_subcommand(
      "gen-testimage", "write the deterministic hierarchical test image");
  gen->add_option("--size", config.size,
                  "image side, a positive multiple of 16 (default 64)");
  gen->add_option("--seed", config.seed, "generator seed");
  gen->add_option("--output", config.output, "PGM output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (CLI::App* sub :
       {decompose, oracle, gap, series, image, gen}) {
    if (sub->parsed()) {
      config.subcommand = sub->get_name();
      break;
    }
  }

  try {
    return run(config);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qasvd
