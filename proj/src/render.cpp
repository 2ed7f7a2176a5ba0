#include "urbanmot/render.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace urbanmot {

namespace {

void set_pixel(PpmImage& image, int x, int y, const std::array<std::uint8_t, 3>& rgb) {
  if (x < 0 || y < 0 || x >= image.width || y >= image.height) return;
  std::uint8_t* p = image.pixel(x, y);
  p[0] = rgb[0];
  p[1] = rgb[1];
  p[2] = rgb[2];
}

}  // namespace

std::array<std::uint8_t, 3> track_color(int track_id) {
  const auto id = static_cast<unsigned>(track_id);
  // 37 is coprime with 256, so the red channel alone separates ids < 256.
  return {static_cast<std::uint8_t>((37u * id) % 256u),
          static_cast<std::uint8_t>((97u * id + 64u) % 256u),
          static_cast<std::uint8_t>((29u * id + 160u) % 256u)};
}

void draw_track_box(PpmImage& image, const TrackRecord& record) {
  const auto rgb = track_color(record.track_id);
  const int x0 = static_cast<int>(std::lround(record.box.x));
  const int y0 = static_cast<int>(std::lround(record.box.y));
  const int x1 = static_cast<int>(std::lround(record.box.right()));
  const int y1 = static_cast<int>(std::lround(record.box.bottom()));
  if (x1 <= x0 || y1 <= y0) return;

  const int border = 2;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const bool on_border =
          x < x0 + border || x >= x1 - border || y < y0 + border || y >= y1 - border;
      // Corner tab where the id/label annotation anchors.
      const bool on_tab = x < x0 + 6 && y < y0 + 6;
      if (on_border || on_tab) set_pixel(image, x, y, rgb);
    }
  }
}

int render_tracks(const std::string& frames_dir, const HypothesisMap& tracks,
                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(frames_dir)) {
    throw std::runtime_error(frames_dir + ": not a directory");
  }
  fs::create_directories(out_dir);

  std::vector<fs::path> frame_files;
  for (const auto& entry : fs::directory_iterator(frames_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      frame_files.push_back(entry.path());
    }
  }
  std::sort(frame_files.begin(), frame_files.end());

  int written = 0;
  for (const auto& path : frame_files) {
    int frame_index = -1;
    try {
      frame_index = std::stoi(path.stem().string());
    } catch (const std::exception&) {
      continue;  // non-frame ppm, skip
    }
    PpmImage image = read_ppm(path.string());
    if (const auto it = tracks.find(frame_index); it != tracks.end()) {
      for (const auto& record : it->second) {
        draw_track_box(image, record);
      }
    }
    write_ppm(image, (fs::path(out_dir) / path.filename()).string());
    ++written;
  }
  return written;
}

}  // namespace urbanmot
