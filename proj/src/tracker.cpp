#include "urbanmot/tracker.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "urbanmot/assignment.hpp"
#include "urbanmot/csv.hpp"
#include "urbanmot/ingest.hpp"

namespace urbanmot {

std::string_view to_string(TrackStatus status) {
  return status == TrackStatus::matched ? "matched" : "predicted";
}

std::vector<TrackRecord> Tracker::step(int frame_index,
                                       const std::vector<Detection>& detections) {
  if (started_ && frame_index != last_frame_ + 1) {
    throw std::runtime_error("tracker: out-of-order frame index " + std::to_string(frame_index) +
                             " (expected " + std::to_string(last_frame_ + 1) + ")");
  }
  started_ = true;
  last_frame_ = frame_index;
  ++stats_.frames_processed;

  // Predict all tracks into the current frame.
  for (auto& track : tracks_) {
    track.state = predict(track.state, config_.noise);
  }

  // Pairwise weighted costs, tracks x detections.
  CostMatrix matrix(tracks_.size(), detections.size());
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    TrackView view{tracks_[t].last_label, tracks_[t].last_confidence,
                   state_to_box(tracks_[t].state), tracks_[t].last_histogram};
    for (std::size_t d = 0; d < detections.size(); ++d) {
      matrix.at(t, d) = weighted_total(total_cost(view, detections[d]), config_.cost_weights);
    }
  }

  const auto assignment = gate_and_split(solve_min_cost(matrix), matrix, config_.t_match);

  for (const auto& match : assignment.matches) {
    Track& track = tracks_[match.track_index];
    const Detection& det = detections[match.detection_index];
    track.state = update(track.state, det.box, config_.noise);
    track.last_label = det.label;
    track.last_confidence = det.confidence;
    track.last_histogram = det.histogram;
    track.miss_count = 0;
    track.history.push_back({frame_index, det.box, TrackStatus::matched});
  }

  // Coast or remove unmatched tracks.
  std::vector<char> remove(tracks_.size(), 0);
  for (std::size_t t : assignment.unmatched_tracks) {
    Track& track = tracks_[t];
    ++track.miss_count;
    if (track.miss_count > config_.n_timeout) {
      remove[t] = 1;
      ++stats_.tracks_removed;
    } else {
      track.history.push_back({frame_index, state_to_box(track.state), TrackStatus::predicted});
    }
  }
  if (!assignment.unmatched_tracks.empty()) {
    std::vector<Track> survivors;
    survivors.reserve(tracks_.size());
    for (std::size_t t = 0; t < tracks_.size(); ++t) {
      if (!remove[t]) survivors.push_back(std::move(tracks_[t]));
    }
    tracks_ = std::move(survivors);
  }

  // Unmatched detections spawn new tracks, ids in detection order. On the
  // first frame every detection lands here.
  for (std::size_t d : assignment.unmatched_detections) {
    const Detection& det = detections[d];
    Track track;
    track.id = next_id_++;
    track.state = init_state(det.box, config_.noise);
    track.last_label = det.label;
    track.last_confidence = det.confidence;
    track.last_histogram = det.histogram;
    track.miss_count = 0;
    track.history.push_back({frame_index, det.box, TrackStatus::matched});
    tracks_.push_back(std::move(track));
    ++stats_.tracks_created;
  }

  // Tracks are kept in creation order, so ids ascend.
  std::vector<TrackRecord> emitted;
  emitted.reserve(tracks_.size());
  for (const auto& track : tracks_) {
    const HistoryEntry& entry = track.history.back();
    emitted.push_back({frame_index, track.id, entry.box, track.last_label,
                       track.last_confidence, entry.status});
  }
  return emitted;
}

RunOutput run_sequence(const TrackerConfig& config, const DetectionMap& detections) {
  RunOutput output;
  Tracker tracker(config);
  const int frame_count = detections.empty() ? 0 : detections.rbegin()->first + 1;
  for (int frame = 0; frame < frame_count; ++frame) {
    std::vector<Detection> dets;
    if (const auto it = detections.find(frame); it != detections.end()) {
      dets = nms(filter_labels(it->second, config.label_blacklist), config.nms_iou);
    }
    auto rows = tracker.step(frame, dets);
    output.records.insert(output.records.end(), rows.begin(), rows.end());
  }
  output.stats = tracker.stats();
  return output;
}

std::string write_track_csv(const std::vector<TrackRecord>& records) {
  std::ostringstream out;
  out << "# columns: frame,track_id,x,y,w,h,label,confidence,status\n";
  for (const auto& rec : records) {
    out << rec.frame << ',' << rec.track_id << ',' << format_double(rec.box.x) << ','
        << format_double(rec.box.y) << ',' << format_double(rec.box.w) << ','
        << format_double(rec.box.h) << ',' << to_string(rec.label) << ','
        << format_double(rec.confidence) << ',' << to_string(rec.status) << '\n';
  }
  return out.str();
}

HypothesisMap parse_track_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open track file");
  }
  HypothesisMap result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    bool skip = true;
    for (char ch : line) {
      if (ch == '#') break;
      if (ch != ' ' && ch != '\t' && ch != '\r') {
        skip = false;
        break;
      }
    }
    if (skip) continue;
    const auto fields = split_csv_fields(line);
    if (!fields.empty() && fields[0] == "frame") continue;
    const auto fail = [&](const std::string& message) {
      return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + message);
    };
    if (fields.size() != 9) {
      throw fail("expected 9 fields, got " + std::to_string(fields.size()));
    }
    try {
      TrackRecord rec;
      rec.frame = static_cast<int>(parse_int_field(fields[0], "frame"));
      rec.track_id = static_cast<int>(parse_int_field(fields[1], "track_id"));
      rec.box.x = parse_double_field(fields[2], "x");
      rec.box.y = parse_double_field(fields[3], "y");
      rec.box.w = parse_double_field(fields[4], "w");
      rec.box.h = parse_double_field(fields[5], "h");
      const auto label = parse_class_label(fields[6]);
      if (!label) throw std::runtime_error("unknown label '" + std::string(fields[6]) + "'");
      rec.label = *label;
      rec.confidence = parse_double_field(fields[7], "confidence");
      if (fields[8] == "matched") {
        rec.status = TrackStatus::matched;
      } else if (fields[8] == "predicted") {
        rec.status = TrackStatus::predicted;
      } else {
        throw std::runtime_error("unknown status '" + std::string(fields[8]) + "'");
      }
      auto& frame_rows = result[rec.frame];
      for (const auto& existing : frame_rows) {
        if (existing.track_id == rec.track_id) {
          throw std::runtime_error("duplicate track_id " + std::to_string(rec.track_id) +
                                   " in frame " + std::to_string(rec.frame));
        }
      }
      frame_rows.push_back(rec);
    } catch (const std::runtime_error& err) {
      if (std::string(err.what()).starts_with(path)) throw;
      throw fail(err.what());
    }
  }
  return result;
}

}  // namespace urbanmot
