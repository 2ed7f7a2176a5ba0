#include "urbanmot/ppm.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace urbanmot {

namespace {

// PPM headers allow '#' comments and arbitrary whitespace between tokens.
int read_header_value(std::istream& in, const std::string& path) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (ch == EOF || !std::isdigit(ch)) {
    throw std::runtime_error(path + ": malformed PPM header");
  }
  int value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    ch = in.get();
  }
  if (ch != EOF) in.unget();
  return value;
}

}  // namespace

PpmImage PpmImage::filled(int width, int height, std::uint8_t r, std::uint8_t g,
                          std::uint8_t b) {
  PpmImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = r;
    img.pixels[i + 1] = g;
    img.pixels[i + 2] = b;
  }
  return img;
}

PpmImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open PPM file");
  }
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '6') {
    throw std::runtime_error(path + ": not a binary P6 PPM file");
  }
  PpmImage img;
  img.width = read_header_value(in, path);
  img.height = read_header_value(in, path);
  const int maxval = read_header_value(in, path);
  if (maxval != 255) {
    throw std::runtime_error(path + ": only 8-bit PPM (maxval 255) is supported");
  }
  in.get();  // single whitespace byte before raster data
  if (img.width <= 0 || img.height <= 0) {
    throw std::runtime_error(path + ": invalid PPM dimensions");
  }
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw std::runtime_error(path + ": truncated PPM raster data");
  }
  return img;
}

void write_ppm(const PpmImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

std::string frame_file_name(int frame_index) {
  std::string digits = std::to_string(frame_index);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return digits + ".ppm";
}

}  // namespace urbanmot
