#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qasvd/matrix.hpp"
#include "qasvd/spectrum.hpp"

namespace qasvd {

// Grayscale image with pixels in [0, maxval], maxval <= 65535, row-major.
struct ImageMatrix {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;

  std::uint16_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * width + c]; }
  std::uint16_t& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * width + c]; }
};

// Parses PGM, ASCII "P2" or binary "P5". Comments (# to end of line) are
// skipped anywhere whitespace is allowed in the header. P5 pixels are one
// byte for maxval <= 255, two big-endian bytes otherwise.
ImageMatrix parse_pgm(std::istream& in);
ImageMatrix parse_pgm_file(const std::string& path);

// Writes P5 (binary=true) or P2. write_pgm_file goes through atomic_write.
void write_pgm(std::ostream& out, const ImageMatrix& img, bool binary = true);
void write_pgm_file(const std::string& path, const ImageMatrix& img,
                    bool binary = true);

// +1 where pixel >= threshold, -1 otherwise, as a height x width DataMatrix.
// Default threshold: ceil(maxval / 2).
DataMatrix binarize(const ImageMatrix& img, int threshold = -1);

// Deterministic hierarchical test image: full-width bands at the global
// scale, LCG-driven inner-block flips per 16x16 tile, LCG-driven whole-tile
// flips per 4x4 tile. size must be a positive multiple of 16.
ImageMatrix generate_test_image(int size = 64,
                                std::uint64_t seed = 20240817ULL);

// For each j < k writes component_j.pgm (the rank-one layer
// sigma_j u_j v_j^T) and partial_j.pgm (the partial sum through j), each
// linearly rescaled so its own min maps to 0 and max to 255, plus
// spectrum.csv with rows "j,lambda,sigma". Throws InputError on an empty
// result and IoError when outDir is not writable.
std::vector<std::string> emit_reconstructions(const DataMatrix& a,
                                              const SpectrumResult& result,
                                              const std::string& outDir);

}  // namespace qasvd
