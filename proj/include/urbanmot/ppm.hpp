#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace urbanmot {

// 8-bit RGB raster backed by a binary P6 PPM file (maxval 255).
struct PpmImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel

  std::uint8_t* pixel(int x, int y) { return pixels.data() + 3 * (y * width + x); }
  const std::uint8_t* pixel(int x, int y) const { return pixels.data() + 3 * (y * width + x); }

  static PpmImage filled(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Throws std::runtime_error on missing file, non-P6 magic or maxval != 255.
PpmImage read_ppm(const std::string& path);

void write_ppm(const PpmImage& image, const std::string& path);

// "000012.ppm" style name for a frame index.
std::string frame_file_name(int frame_index);

}  // namespace urbanmot
