#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "urbanmot/costmodel.hpp"
#include "urbanmot/motion.hpp"
#include "urbanmot/types.hpp"

namespace urbanmot {

enum class TrackStatus {
  matched,    // box comes from a matched detection
  predicted,  // box comes from the Kalman prediction (coasting)
};

std::string_view to_string(TrackStatus status);

struct TrackerConfig {
  double t_match = 1.5;
  int n_timeout = 5;
  double nms_iou = 0.5;
  std::set<ClassLabel> label_blacklist = {ClassLabel::non_motorized_vehicle};
  CostWeights cost_weights;
  NoiseConfig noise;
};

struct HistoryEntry {
  int frame = 0;
  BoundingBox box;
  TrackStatus status = TrackStatus::matched;
};

struct Track {
  int id = 0;
  KalmanState state;
  ClassLabel last_label = ClassLabel::car;
  double last_confidence = 0.0;
  ColorHistogram last_histogram;
  int miss_count = 0;
  std::vector<HistoryEntry> history;
};

// One emitted row of the track output CSV.
struct TrackRecord {
  int frame = 0;
  int track_id = 0;
  BoundingBox box;
  ClassLabel label = ClassLabel::car;
  double confidence = 0.0;
  TrackStatus status = TrackStatus::matched;
};

struct RunStats {
  int frames_processed = 0;
  int tracks_created = 0;
  int tracks_removed = 0;
};

// Per-frame state machine: predict, associate, update/spawn/coast/remove.
// Frames must be fed in consecutive ascending order.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config) : config_(std::move(config)) {}

  // Advances one frame and returns the rows emitted for it (ascending
  // track id). Throws std::runtime_error on an out-of-order frame index.
  std::vector<TrackRecord> step(int frame_index, const std::vector<Detection>& detections);

  const std::vector<Track>& active_tracks() const { return tracks_; }
  const RunStats& stats() const { return stats_; }

 private:
  TrackerConfig config_;
  std::vector<Track> tracks_;
  RunStats stats_;
  int next_id_ = 1;
  int last_frame_ = -1;
  bool started_ = false;
};

struct RunOutput {
  std::vector<TrackRecord> records;
  RunStats stats;
};

// Drives the tracker over frames 0..max_frame, applying the label
// blacklist and NMS per frame. Missing frames count as empty detection
// lists. Pure: identical inputs give identical output.
RunOutput run_sequence(const TrackerConfig& config, const DetectionMap& detections);

using HypothesisMap = std::map<int, std::vector<TrackRecord>>;

// Track output CSV `frame,track_id,x,y,w,h,label,confidence,status`.
std::string write_track_csv(const std::vector<TrackRecord>& records);
HypothesisMap parse_track_csv(const std::string& path);

}  // namespace urbanmot
