#include "qasvd/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qasvd/errors.hpp"
#include "qasvd/io.hpp"

namespace qasvd {

namespace {

// Skips whitespace and '#' comments, per the PGM header grammar.
void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) return;
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    return;
  }
}

long header_int(std::istream& in, const char* what) {
  skip_separators(in);
  long v = 0;
  if (!(in >> v)) {
    throw MalformedHeader(std::string("pgm: missing or non-numeric ") + what);
  }
  return v;
}

}  // namespace

ImageMatrix parse_pgm(std::istream& in) {
  skip_separators(in);
  const int first = in.get();
  const int second = in.get();
  if (first != 'P' || second == EOF) {
    throw MalformedHeader("pgm: missing magic number");
  }
  if (second != '2' && second != '5') {
    throw UnsupportedMagic(std::string("pgm: unsupported magic P") +
                           static_cast<char>(second) +
                           " (only P2 and P5 grayscale)");
  }
  const bool binary = (second == '5');

  ImageMatrix img;
  const long w = header_int(in, "width");
  const long h = header_int(in, "height");
  const long maxval = header_int(in, "maxval");
  if (w < 1 || h < 1) {
    throw MalformedHeader("pgm: dimensions must be positive, got " +
                          std::to_string(w) + " x " + std::to_string(h));
  }
  if (maxval < 1 || maxval > 65535) {
    throw MalformedHeader("pgm: maxval " + std::to_string(maxval) +
                          " outside [1, 65535]");
  }
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(w) *
                            static_cast<std::size_t>(h);
  img.pixels.resize(count);

  if (binary) {
    // Exactly one separator byte between maxval and the raster.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) {
      throw MalformedHeader("pgm: missing separator before binary raster");
    }
    const int bytesPer = maxval > 255 ? 2 : 1;
    for (std::size_t i = 0; i < count; ++i) {
      const int b0 = in.get();
      if (b0 == EOF) {
        throw TruncatedPixels("pgm: raster ends at pixel " +
                              std::to_string(i) + " of " +
                              std::to_string(count));
      }
      long v = b0;
      if (bytesPer == 2) {
        const int b1 = in.get();
        if (b1 == EOF) {
          throw TruncatedPixels("pgm: raster ends mid-pixel at " +
                                std::to_string(i));
        }
        v = (v << 8) | b1;  // big-endian, most significant byte first
      }
      if (v > maxval) {
        throw MalformedHeader("pgm: pixel value " + std::to_string(v) +
                              " exceeds maxval " + std::to_string(maxval));
      }
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      skip_separators(in);
      long v = 0;
      if (!(in >> v)) {
        throw TruncatedPixels("pgm: raster ends at pixel " +
                              std::to_string(i) + " of " +
                              std::to_string(count));
      }
      if (v < 0 || v > maxval) {
        throw MalformedHeader("pgm: pixel value " + std::to_string(v) +
                              " outside [0, " + std::to_string(maxval) + "]");
      }
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

ImageMatrix parse_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open image file: " + path);
  }
  return parse_pgm(in);
}

void write_pgm(std::ostream& out, const ImageMatrix& img, bool binary) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) *
                               static_cast<std::size_t>(img.height)) {
    throw InputError("write_pgm: inconsistent image dimensions");
  }
  out << (binary ? "P5" : "P2") << "\n"
      << img.width << " " << img.height << "\n"
      << img.maxval << "\n";
  if (binary) {
    const bool wide = img.maxval > 255;
    for (std::uint16_t p : img.pixels) {
      if (wide) {
        out.put(static_cast<char>((p >> 8) & 0xFF));
      }
      out.put(static_cast<char>(p & 0xFF));
    }
  } else {
    int onLine = 0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      out << img.pixels[i];
      // Keep ASCII lines conservatively short per the format convention.
      if (++onLine == 12 || i + 1 == img.pixels.size()) {
        out << "\n";
        onLine = 0;
      } else {
        out << " ";
      }
    }
  }
}

void write_pgm_file(const std::string& path, const ImageMatrix& img,
                    bool binary) {
  std::ostringstream buf;
  write_pgm(buf, img, binary);
  atomic_write_file(path, buf.str());
}

DataMatrix binarize(const ImageMatrix& img, int threshold) {
  if (img.width < 1 || img.height < 1) {
    throw InputError("binarize: empty image");
  }
  const int cut = threshold >= 0 ? threshold : (img.maxval + 1) / 2;
  Eigen::MatrixXd m(img.height, img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      m(r, c) = img.at(r, c) >= cut ? 1.0 : -1.0;
    }
  }
  return DataMatrix(std::move(m), false);
}

ImageMatrix generate_test_image(int size, std::uint64_t seed) {
  if (size < 16 || size % 16 != 0) {
    throw ConfigError("generate_test_image: size must be a positive multiple "
                      "of 16, got " + std::to_string(size));
  }
  ImageMatrix img;
  img.width = size;
  img.height = size;
  img.maxval = 255;
  img.pixels.assign(static_cast<std::size_t>(size) * size, 0);

  // Global scale: two horizontal bands, XOR-ed with a vertical center band.
  for (int r = 0; r < size; ++r) {
    const bool band = (r >= size / 8 && r < 3 * size / 8) ||
                      (r >= 5 * size / 8 && r < 7 * size / 8);
    for (int c = 0; c < size; ++c) {
      int v = band ? 255 : 0;
      if (c >= 7 * size / 16 && c < 9 * size / 16) {
        v = 255 - v;
      }
      img.at(r, c) = static_cast<std::uint16_t>(v);
    }
  }

  Lcg64 rng{seed};

  // Middle scale: flip the inner 8x8 of a random half of the 16x16 tiles.
  for (int br = 0; br < size / 16; ++br) {
    for (int bc = 0; bc < size / 16; ++bc) {
      if (rng.uniform() < 0.5) {
        for (int r = br * 16 + 4; r < br * 16 + 12; ++r) {
          for (int c = bc * 16 + 4; c < bc * 16 + 12; ++c) {
            img.at(r, c) = static_cast<std::uint16_t>(255 - img.at(r, c));
          }
        }
      }
    }
  }

  // Fine scale: flip a random quarter of the 4x4 tiles outright.
  for (int tr = 0; tr < size / 4; ++tr) {
    for (int tc = 0; tc < size / 4; ++tc) {
      if (rng.uniform() < 0.25) {
        for (int r = tr * 4; r < tr * 4 + 4; ++r) {
          for (int c = tc * 4; c < tc * 4 + 4; ++c) {
            img.at(r, c) = static_cast<std::uint16_t>(255 - img.at(r, c));
          }
        }
      }
    }
  }
  return img;
}

namespace {

ImageMatrix render_layer(const Eigen::MatrixXd& layer) {
  ImageMatrix img;
  img.height = static_cast<int>(layer.rows());
  img.width = static_cast<int>(layer.cols());
  img.maxval = 255;
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  const double lo = layer.minCoeff();
  const double hi = layer.maxCoeff();
  const double span = hi - lo;
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      double v = span > 0.0 ? (layer(r, c) - lo) / span * 255.0 : 0.0;
      img.at(r, c) = static_cast<std::uint16_t>(std::lround(v));
    }
  }
  return img;
}

}  // namespace

std::vector<std::string> emit_reconstructions(const DataMatrix& a,
                                              const SpectrumResult& result,
                                              const std::string& outDir) {
  if (result.components.empty()) {
    throw InputError("emit_reconstructions: no components to render");
  }
  std::vector<std::string> written;
  Eigen::MatrixXd partial = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  std::ostringstream csv;
  csv << "j,lambda,sigma\n";
  for (std::size_t j = 0; j < result.components.size(); ++j) {
    const PrincipalComponent& c = result.components[j];
    if (c.u.size() != a.rows() || c.v.size() != a.cols()) {
      throw DimensionMismatch("emit_reconstructions: component " +
                              std::to_string(j) +
                              " does not match the matrix shape");
    }
    const Eigen::MatrixXd layer = c.sigma * c.u * c.v.transpose();
    partial += layer;

    const std::string componentPath =
        outDir + "/component_" + std::to_string(j) + ".pgm";
    const std::string partialPath =
        outDir + "/partial_" + std::to_string(j) + ".pgm";
    write_pgm_file(componentPath, render_layer(layer));
    write_pgm_file(partialPath, render_layer(partial));
    written.push_back(componentPath);
    written.push_back(partialPath);

    csv << j << "," << format_double(c.lambda) << ","
        << format_double(c.sigma) << "\n";
  }
  const std::string csvPath = outDir + "/spectrum.csv";
  atomic_write_file(csvPath, csv.str());
  written.push_back(csvPath);
  return written;
}

}  // namespace qasvd
