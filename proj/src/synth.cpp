#include "urbanmot/synth.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "urbanmot/ingest.hpp"
#include "urbanmot/ppm.hpp"

namespace urbanmot {

namespace {

constexpr std::uint8_t kObjectGray = 128;
constexpr std::uint8_t kBackgroundGray = 24;

struct SceneOffsets {
  double dx = 0.0;
  double dy = 0.0;
};

SceneOffsets offsets_from_seed(std::uint32_t seed) {
  std::mt19937 rng(seed);
  SceneOffsets off;
  off.dx = static_cast<double>(rng() % 16);
  off.dy = static_cast<double>(rng() % 8);
  return off;
}

BoundingBox centered_box(double cx, double cy, double w, double h) {
  return {cx - 0.5 * w, cy - 0.5 * h, w, h};
}

Detection make_detection(int frame, const BoundingBox& box, ClassLabel label, double conf) {
  Detection det;
  det.frame = frame;
  det.box = box;
  det.label = label;
  det.confidence = conf;
  det.histogram = synth_object_histogram();
  return det;
}

void add_object(SynthResult& result, int frame, int gt_id, const BoundingBox& box,
                ClassLabel label, double conf, bool detected, bool in_gt) {
  if (detected) {
    result.detections[frame].push_back(make_detection(frame, box, label, conf));
  }
  if (in_gt) {
    result.ground_truth[frame].push_back({frame, gt_id, box});
  }
  result.scene_boxes.push_back({frame, box});
}

// Two objects of equal size and speed converge head-on, meet mid-sequence
// with a small center gap, and rebound along their incoming lanes. After
// the rebound each detection overlaps the *other* track's constant-velocity
// prediction more than its own, so association must lean on the class
// label: appearance is identical and confidence uniform by construction.
SynthResult gen_crossing_labels(const SceneOffsets& off) {
  SynthResult result;
  result.frame_count = 40;
  const double size = 24.0, speed = 6.0;
  const double meet_left = 175.0 + off.dx, meet_right = 185.0 + off.dx;
  const double cy = 100.0 + off.dy;
  for (int t = 0; t < result.frame_count; ++t) {
    const double away = speed * std::abs(t - 20);
    const double cx_a = meet_left - away;
    const double cx_b = meet_right + away;
    add_object(result, t, 1, centered_box(cx_a, cy, size, size), ClassLabel::car, 0.9, true,
               true);
    add_object(result, t, 2, centered_box(cx_b, cy, size, size), ClassLabel::pedestrian, 0.9,
               true, true);
  }
  return result;
}

SynthResult gen_occlusion_gap(const SceneOffsets& off, int gap_frames) {
  SynthResult result;
  result.frame_count = 30;
  const int gap_start = 12;
  for (int t = 0; t < result.frame_count; ++t) {
    const BoundingBox box =
        centered_box(40.0 + 5.0 * t + off.dx, 80.0 + off.dy, 24.0, 24.0);
    const bool detected = t < gap_start || t >= gap_start + gap_frames;
    add_object(result, t, 1, box, ClassLabel::car, 0.9, detected, true);
  }
  return result;
}

// Every true detection is shadowed by two lower-confidence duplicates
// offset far enough to survive NMS yet too far to count as localizing the
// object. The duplicates form stable spurious tracks, one false positive
// per duplicate per frame.
SynthResult gen_fp_storm(const SceneOffsets& off) {
  SynthResult result;
  result.frame_count = 50;
  const double w = 30.0, h = 20.0;
  const double lanes[2] = {60.0 + off.dy, 160.0 + off.dy};
  for (int t = 0; t < result.frame_count; ++t) {
    for (int obj = 0; obj < 2; ++obj) {
      const BoundingBox box =
          centered_box(40.0 + 4.0 * t + off.dx, lanes[obj], w, h);
      add_object(result, t, obj + 1, box, ClassLabel::car, 0.9, true, true);
      BoundingBox dup_x = box;
      dup_x.x += 17.0;
      result.detections[t].push_back(make_detection(t, dup_x, ClassLabel::car, 0.6));
      BoundingBox dup_y = box;
      dup_y.y += 12.0;
      result.detections[t].push_back(make_detection(t, dup_y, ClassLabel::car, 0.6));
    }
  }
  return result;
}

SynthResult gen_parked_clutter(const SceneOffsets& off) {
  SynthResult result;
  result.frame_count = 40;
  const double parked_x[3] = {70.0, 150.0, 230.0};
  for (int t = 0; t < result.frame_count; ++t) {
    const BoundingBox mover =
        centered_box(30.0 + 5.0 * t + off.dx, 120.0 + off.dy, 30.0, 20.0);
    add_object(result, t, 1, mover, ClassLabel::car, 0.9, true, true);
    // Parked cars: detected every frame, never tracked targets.
    for (double px : parked_x) {
      const BoundingBox parked = centered_box(px + off.dx, 200.0 + off.dy, 30.0, 20.0);
      add_object(result, t, 0, parked, ClassLabel::car, 0.8, true, false);
    }
  }
  return result;
}

void fill_rect(PpmImage& img, const BoundingBox& box, std::uint8_t gray) {
  const int x0 = std::max(0, static_cast<int>(std::lround(box.x)));
  const int y0 = std::max(0, static_cast<int>(std::lround(box.y)));
  const int x1 = std::min(img.width, static_cast<int>(std::lround(box.right())));
  const int y1 = std::min(img.height, static_cast<int>(std::lround(box.bottom())));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = p[1] = p[2] = gray;
    }
  }
}

}  // namespace

std::optional<Scenario> parse_scenario(std::string_view name) {
  if (name == "crossing_labels") return Scenario::crossing_labels;
  if (name == "occlusion_gap") return Scenario::occlusion_gap;
  if (name == "fp_storm") return Scenario::fp_storm;
  if (name == "parked_clutter") return Scenario::parked_clutter;
  return std::nullopt;
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::crossing_labels:
      return "crossing_labels";
    case Scenario::occlusion_gap:
      return "occlusion_gap";
    case Scenario::fp_storm:
      return "fp_storm";
    case Scenario::parked_clutter:
      return "parked_clutter";
  }
  return "unknown";
}

ColorHistogram synth_object_histogram() {
  auto hist = ColorHistogram::empty();
  hist.bins()[rgb_bin_index(kObjectGray, kObjectGray, kObjectGray)] = 1.0;
  return hist;
}

SynthResult generate_scenario(Scenario scenario, const SynthOptions& options) {
  const SceneOffsets off = offsets_from_seed(options.seed);
  switch (scenario) {
    case Scenario::crossing_labels:
      return gen_crossing_labels(off);
    case Scenario::occlusion_gap:
      if (options.gap_frames < 0) {
        throw std::invalid_argument("occlusion_gap: gap_frames must be non-negative");
      }
      return gen_occlusion_gap(off, options.gap_frames);
    case Scenario::fp_storm:
      return gen_fp_storm(off);
    case Scenario::parked_clutter:
      return gen_parked_clutter(off);
  }
  throw std::invalid_argument("unknown scenario");
}

void write_scenario(Scenario scenario, const SynthOptions& options, const std::string& out_dir,
                    bool with_frames) {
  const SynthResult result = generate_scenario(scenario, options);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);

  {
    std::ofstream out(dir / "detections.csv");
    out << write_detections(result.detections);
  }
  {
    std::ofstream out(dir / "gt.csv");
    out << write_ground_truth(result.ground_truth);
  }

  if (with_frames) {
    std::filesystem::create_directories(dir / "frames");
    for (int t = 0; t < result.frame_count; ++t) {
      PpmImage img = PpmImage::filled(result.image_width, result.image_height, kBackgroundGray,
                                      kBackgroundGray, kBackgroundGray);
      for (const auto& scene_box : result.scene_boxes) {
        if (scene_box.frame == t) fill_rect(img, scene_box.box, kObjectGray);
      }
      write_ppm(img, (dir / "frames" / frame_file_name(t)).string());
    }
  }

  nlohmann::json manifest;
  manifest["scenario"] = std::string(to_string(scenario));
  manifest["seed"] = options.seed;
  manifest["frame_count"] = result.frame_count;
  manifest["detections"] = "detections.csv";
  manifest["ground_truth"] = "gt.csv";
  manifest["frames"] = with_frames ? nlohmann::json("frames") : nlohmann::json(nullptr);
  if (scenario == Scenario::occlusion_gap) {
    manifest["gap_frames"] = options.gap_frames;
  }
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace urbanmot
