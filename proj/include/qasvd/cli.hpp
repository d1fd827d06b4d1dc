#pragma once

#include <cstdint>
#include <string>

namespace qasvd {

// Everything a subcommand run needs, filled by the argument parser.
// Numeric fields <= 0 mean "use the computed default" where applicable.
struct RunConfig {
  std::string subcommand;

  std::string input;        // matrix text path, PGM path, or "-" for stdin
  std::string output;       // JSON result path; empty = stdout
  std::string outDir;       // reconstruction directory (image)
  std::string tracePath;    // anneal trace CSV (decompose)
  std::string csvPath;      // branch CSV (gap)

  int k = 1;
  double T = 0.0;           // 0 = default 50/ghat^2
  long steps = 0;           // 0 = auto
  std::string integrator = "midpoint";
  std::string scale = "rowsum";   // rowsum | none | positive number
  std::string method = "annealing";  // image: annealing | oracle
  bool normalize = false;
  double tol = 1e-4;
  double lambda0 = 1.0;     // Lambda0
  double lambdaExc = 1.0;   // Lambda
  long groundIndex = 0;
  long traceStride = 100;
  std::uint64_t seed = 20240817ULL;

  // gap
  double K = 1.0;
  double alpha = 0.5;
  long gridSize = 1001;

  // series
  long maxOrder = 200;
  double tailTol = 1e-14;

  // image
  int threshold = -1;       // -1 = ceil(maxval/2)

  // gen-testimage
  int size = 64;
};

// Parses argv into a RunConfig (throws ConfigError on bad usage) and
// dispatches. Returns the process exit code: 0 success, 1 when a
// computation fails to converge, 2 on input errors.
int run_cli(int argc, const char* const* argv);

// Dispatches an already-parsed config; same exit-code contract.
int run(const RunConfig& config);

}  // namespace qasvd
