#pragma once

#include <set>
#include <string>
#include <vector>

#include "urbanmot/types.hpp"

namespace urbanmot {

struct PpmImage;

// Detection-file dialect. Only the CSV layout
// `frame,x,y,w,h,label,confidence[,h0,...,h511]` is defined; the histogram
// columns are optional per record.
enum class DetectionFormat {
  csv,
};

// Parses a detection file into per-frame lists (ascending frame order,
// file order within a frame). Header line and '#' comments are skipped.
// Records without histogram columns get the empty histogram. Throws
// std::runtime_error naming the offending line on malformed input,
// unknown labels or out-of-range confidence.
DetectionMap parse_detections(const std::string& path,
                              DetectionFormat format = DetectionFormat::csv);

// Serializes detections in the same dialect; parse(write(d)) == d.
std::string write_detections(const DetectionMap& detections,
                             DetectionFormat format = DetectionFormat::csv);

// Ground-truth CSV `frame,object_id,x,y,w,h`. Duplicate (frame, object_id)
// pairs are rejected.
GroundTruthMap parse_ground_truth(const std::string& path);

std::string write_ground_truth(const GroundTruthMap& entries);

// Keeps detections whose label is not blacklisted, order preserved.
std::vector<Detection> filter_labels(const std::vector<Detection>& detections,
                                     const std::set<ClassLabel>& blacklist);

// Greedy class-agnostic NMS: survivors sorted by descending confidence
// (ties keep input order); any detection overlapping a kept one with
// IoU > iou_threshold is discarded.
std::vector<Detection> nms(const std::vector<Detection>& detections, double iou_threshold);

// Replaces every detection's histogram with the normalized 8x8x8 joint RGB
// histogram of the frame pixels inside its box (clipped to image bounds).
// Frames are read from `frames_dir/<frame zero-padded to 6>.ppm`. A box
// clipped to nothing keeps the empty histogram. Throws on missing frames
// or non-P6 images.
DetectionMap attach_histograms(const DetectionMap& detections, const std::string& frames_dir);

// Histogram of the pixels of `image` whose centers fall inside `box`.
ColorHistogram histogram_of_region(const PpmImage& image, const BoundingBox& box);

}  // namespace urbanmot
