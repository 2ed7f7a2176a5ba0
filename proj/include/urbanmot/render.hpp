#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "urbanmot/ppm.hpp"
#include "urbanmot/tracker.hpp"

namespace urbanmot {

// Deterministic border color for a track id; injective for ids below 256.
std::array<std::uint8_t, 3> track_color(int track_id);

// Draws a 2-pixel border plus a filled corner tab (the id/label anchor)
// for one record. Only pixels inside the box rectangle are touched.
void draw_track_box(PpmImage& image, const TrackRecord& record);

// Copies every frames_dir/*.ppm into out_dir with that frame's track boxes
// drawn on top. Frames without records are copied unchanged. Returns the
// number of frames written.
int render_tracks(const std::string& frames_dir, const HypothesisMap& tracks,
                  const std::string& out_dir);

}  // namespace urbanmot
