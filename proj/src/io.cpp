#include "qasvd/io.hpp"

#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qasvd/errors.hpp"

namespace qasvd {

double Lcg64::gauss() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::MatrixXd read_matrix_text(std::istream& in) {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  if (!(in >> m >> n)) {
    throw MalformedHeader("matrix text: expected header line \"m n\"");
  }
  if (m < 1 || n < 1) {
    throw MalformedHeader("matrix text: dimensions must be positive, got " +
                          std::to_string(m) + " x " + std::to_string(n));
  }
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = 0.0;
      if (!(in >> v)) {
        throw MalformedHeader("matrix text: ran out of entries at row " +
                              std::to_string(i) + ", col " + std::to_string(j));
      }
      if (!std::isfinite(v)) {
        throw InputError("matrix text: non-finite entry at row " +
                         std::to_string(i));
      }
      a(i, j) = v;
    }
  }
  return a;
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  if (path == "-") {
    return read_matrix_text(std::cin);
  }
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open matrix file: " + path);
  }
  return read_matrix_text(in);
}

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& a) {
  out << a.rows() << " " << a.cols() << "\n";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << " ";
      out << format_double(a(i, j));
    }
    out << "\n";
  }
}

void atomic_write_file(const std::string& path, const std::string& payload) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path()
                                                : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; open below reports failure
  const fs::path tmp =
      dir / (target.filename().string() + ".tmp." +
             std::to_string(static_cast<unsigned long>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open temporary file for writing: " + tmp.string());
    }
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) {
      throw IoError("short write to " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename " + tmp.string() + " to " + path + ": " +
                  ec.message());
  }
}

std::string format_double(double v) {
  // Shortest form that parses back exactly: try increasing precision.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace qasvd
