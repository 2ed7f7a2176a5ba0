#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "urbanmot/types.hpp"

namespace urbanmot {

// Desk-scale scenario generators. Each produces detections, ground truth
// and (optionally) raster frames with analytically known correct tracking,
// exercising one failure mode of detector-driven tracking:
//   crossing_labels - two same-looking objects of different classes meet
//                     and rebound; appearance and position are ambiguous
//                     at the meeting point, the class label is not.
//   occlusion_gap   - one object undetected for a configurable stretch.
//   fp_storm        - every true detection accompanied by offset duplicate
//                     detections that survive NMS.
//   parked_clutter  - static distractor objects detected every frame but
//                     absent from the ground truth.
enum class Scenario {
  crossing_labels,
  occlusion_gap,
  fp_storm,
  parked_clutter,
};

std::optional<Scenario> parse_scenario(std::string_view name);
std::string_view to_string(Scenario scenario);

struct SynthOptions {
  std::uint32_t seed = 0;
  int gap_frames = 2;  // occlusion_gap only
};

// A box to draw when rendering scene frames.
struct SceneBox {
  int frame = 0;
  BoundingBox box;
};

struct SynthResult {
  DetectionMap detections;
  GroundTruthMap ground_truth;
  std::vector<SceneBox> scene_boxes;
  int frame_count = 0;
  int image_width = 480;
  int image_height = 270;
};

SynthResult generate_scenario(Scenario scenario, const SynthOptions& options);

// Writes detections.csv, gt.csv and manifest.json under out_dir; with
// with_frames also renders frames/<index>.ppm rasters of the scene.
void write_scenario(Scenario scenario, const SynthOptions& options, const std::string& out_dir,
                    bool with_frames);

// Appearance shared by every synthetic object: all mass in the bin of the
// object fill color, matching what attach_histograms reads off the frames.
ColorHistogram synth_object_histogram();

}  // namespace urbanmot
