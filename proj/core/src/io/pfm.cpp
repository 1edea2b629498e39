#include "splidar/io/pfm.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "splidar/common.hpp"
#include "splidar/io/atomic_file.hpp"

static_assert(std::endian::native == std::endian::little,
              "raster I/O assumes a little-endian host");

namespace splidar::io {

namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return tok;
  }
  return "";
}

std::uint32_t parse_dim(const std::string& tok, const std::string& path) {
  if (tok.empty()) throw InputError(path + ": truncated header");
  unsigned long v = 0;
  try {
    v = std::stoul(tok);
  } catch (const std::exception&) {
    throw InputError(path + ": bad dimension '" + tok + "'");
  }
  if (v == 0 || v > (1u << 20)) throw InputError(path + ": dimension out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Raster<float> read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path.string());
  std::string magic = next_token(in);
  if (magic != "Pf")
    throw InputError(path.string() + ": not a grayscale PFM (magic '" + magic + "')");
  const std::uint32_t w = parse_dim(next_token(in), path.string());
  const std::uint32_t h = parse_dim(next_token(in), path.string());
  const std::string scale_tok = next_token(in);
  if (scale_tok.empty()) throw InputError(path.string() + ": truncated header");
  const double scale = std::stod(scale_tok);
  if (scale >= 0.0)
    throw InputError(path.string() + ": big-endian PFM (positive scale) is not supported");
  in.ignore(1);  // single whitespace after the scale line

  Raster<float> img(w, h, 0.0f);
  std::vector<float> row(w);
  for (std::uint32_t y = 0; y < h; ++y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(w * sizeof(float)));
    if (!in) throw InputError(path.string() + ": truncated pixel data");
    // PFM stores the bottom scanline first.
    std::memcpy(&img.at(0, h - 1 - y), row.data(), w * sizeof(float));
  }
  return img;
}

void write_pfm(const std::filesystem::path& path, const Raster<float>& image) {
  if (image.width == 0 || image.height == 0) throw InputError("write_pfm: empty raster");
  AtomicWriter w(path);
  std::ofstream& out = w.stream();
  out << "Pf\n" << image.width << " " << image.height << "\n-1.0\n";
  for (std::uint32_t y = 0; y < image.height; ++y) {
    const float* row = &image.at(0, image.height - 1 - y);
    out.write(reinterpret_cast<const char*>(row),
              static_cast<std::streamsize>(image.width * sizeof(float)));
  }
  w.commit();
}

Raster<std::uint8_t> read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path.string());
  std::string magic = next_token(in);
  if (magic != "P5") throw InputError(path.string() + ": not a binary PGM");
  const std::uint32_t w = parse_dim(next_token(in), path.string());
  const std::uint32_t h = parse_dim(next_token(in), path.string());
  const std::uint32_t maxval = parse_dim(next_token(in), path.string());
  if (maxval > 255) throw InputError(path.string() + ": 16-bit PGM is not supported");
  in.ignore(1);
  Raster<std::uint8_t> img(w, h, 0);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (!in) throw InputError(path.string() + ": truncated pixel data");
  return img;
}

void write_pgm(const std::filesystem::path& path, const Raster<std::uint8_t>& mask) {
  if (mask.width == 0 || mask.height == 0) throw InputError("write_pgm: empty raster");
  AtomicWriter w(path);
  std::ofstream& out = w.stream();
  out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
  std::vector<std::uint8_t> row(mask.width);
  for (std::uint32_t y = 0; y < mask.height; ++y) {
    for (std::uint32_t x = 0; x < mask.width; ++x)
      row[x] = mask.at(x, y) ? 255 : 0;
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  w.commit();
}

}  // namespace splidar::io
