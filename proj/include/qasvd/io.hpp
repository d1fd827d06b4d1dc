#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace qasvd {

// Deterministic 64-bit LCG (Knuth's MMIX constants). Used everywhere a
// reproducible stream is needed; standard-library distributions are
// implementation-defined and would break cross-platform determinism.
struct Lcg64 {
  std::uint64_t state;

  explicit Lcg64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Standard normal via Box-Muller.
  double gauss();
};

// Matrix text format: first line "m n", then m rows of n whitespace-separated
// reals. LF line endings, UTF-8/ASCII.
Eigen::MatrixXd read_matrix_text(std::istream& in);
Eigen::MatrixXd read_matrix_file(const std::string& path);  // "-" reads stdin
void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& a);

// Writes payload to a temporary file in the target directory, then renames it
// over `path`, so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& payload);

// Shortest decimal form that round-trips a double, '.' separator, no locale.
std::string format_double(double v);

}  // namespace qasvd
