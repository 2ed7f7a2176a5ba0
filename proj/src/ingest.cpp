#include "urbanmot/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "urbanmot/csv.hpp"
#include "urbanmot/ppm.hpp"

namespace urbanmot {

namespace {

constexpr std::size_t kDetectionBaseFields = 7;
constexpr std::size_t kDetectionHistFields = kDetectionBaseFields + ColorHistogram::kDefaultBins;

std::runtime_error line_error(const std::string& path, int line_no, const std::string& message) {
  return std::runtime_error(path + ":" + std::to_string(line_no) + ": " + message);
}

bool is_skippable(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t' && ch != '\r') return false;
  }
  return true;  // blank
}

BoundingBox parse_box_fields(std::string_view xs, std::string_view ys, std::string_view ws,
                             std::string_view hs) {
  BoundingBox box;
  box.x = parse_double_field(xs, "x");
  box.y = parse_double_field(ys, "y");
  box.w = parse_double_field(ws, "w");
  box.h = parse_double_field(hs, "h");
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw std::runtime_error("box width and height must be positive");
  }
  return box;
}

ColorHistogram parse_histogram_fields(const std::vector<std::string_view>& fields,
                                      std::size_t offset) {
  std::vector<double> bins(ColorHistogram::kDefaultBins);
  double sum = 0.0;
  bool all_zero = true;
  for (std::size_t i = 0; i < ColorHistogram::kDefaultBins; ++i) {
    const double v = parse_double_field(fields[offset + i], "histogram bin");
    if (v < 0.0) throw std::runtime_error("histogram bins must be non-negative");
    if (v != 0.0) all_zero = false;
    bins[i] = v;
    sum += v;
  }
  if (!all_zero && std::abs(sum - 1.0) > 1e-9) {
    throw std::runtime_error("histogram must sum to 1 (or be all zero)");
  }
  return ColorHistogram(std::move(bins));
}

}  // namespace

DetectionMap parse_detections(const std::string& path, DetectionFormat format) {
  (void)format;  // single dialect
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open detection file");
  }
  DetectionMap result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto fields = split_csv_fields(line);
    if (!fields.empty() && fields[0] == "frame") continue;  // header
    if (fields.size() != kDetectionBaseFields && fields.size() != kDetectionHistFields) {
      throw line_error(path, line_no,
                       "expected " + std::to_string(kDetectionBaseFields) + " or " +
                           std::to_string(kDetectionHistFields) + " fields, got " +
                           std::to_string(fields.size()));
    }
    try {
      Detection det;
      const long frame = parse_int_field(fields[0], "frame");
      if (frame < 0) throw std::runtime_error("frame index must be non-negative");
      det.frame = static_cast<int>(frame);
      det.box = parse_box_fields(fields[1], fields[2], fields[3], fields[4]);
      const auto label = parse_class_label(fields[5]);
      if (!label) {
        throw std::runtime_error("unknown label '" + std::string(fields[5]) + "'");
      }
      det.label = *label;
      det.confidence = parse_double_field(fields[6], "confidence");
      if (det.confidence < 0.0 || det.confidence > 1.0) {
        throw std::runtime_error("confidence must lie in [0,1]");
      }
      det.histogram = fields.size() == kDetectionHistFields
                          ? parse_histogram_fields(fields, kDetectionBaseFields)
                          : ColorHistogram::empty();
      result[det.frame].push_back(std::move(det));
    } catch (const std::runtime_error& err) {
      throw line_error(path, line_no, err.what());
    }
  }
  return result;
}

std::string write_detections(const DetectionMap& detections, DetectionFormat format) {
  (void)format;
  std::ostringstream out;
  out << "# columns: frame,x,y,w,h,label,confidence[,h0,...,h511]\n";
  for (const auto& [frame, dets] : detections) {
    for (const auto& det : dets) {
      out << frame << ',' << format_double(det.box.x) << ',' << format_double(det.box.y) << ','
          << format_double(det.box.w) << ',' << format_double(det.box.h) << ','
          << to_string(det.label) << ',' << format_double(det.confidence);
      if (!det.histogram.is_empty()) {
        for (double bin : det.histogram.bins()) {
          out << ',' << format_double(bin);
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

GroundTruthMap parse_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open ground-truth file");
  }
  GroundTruthMap result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto fields = split_csv_fields(line);
    if (!fields.empty() && fields[0] == "frame") continue;
    if (fields.size() != 6) {
      throw line_error(path, line_no,
                       "expected 6 fields, got " + std::to_string(fields.size()));
    }
    try {
      GroundTruthEntry entry;
      const long frame = parse_int_field(fields[0], "frame");
      if (frame < 0) throw std::runtime_error("frame index must be non-negative");
      entry.frame = static_cast<int>(frame);
      const long id = parse_int_field(fields[1], "object_id");
      if (id <= 0) throw std::runtime_error("object_id must be positive");
      entry.object_id = static_cast<int>(id);
      entry.box = parse_box_fields(fields[2], fields[3], fields[4], fields[5]);
      auto& frame_entries = result[entry.frame];
      for (const auto& existing : frame_entries) {
        if (existing.object_id == entry.object_id) {
          throw std::runtime_error("duplicate object_id " + std::to_string(entry.object_id) +
                                   " in frame " + std::to_string(entry.frame));
        }
      }
      frame_entries.push_back(entry);
    } catch (const std::runtime_error& err) {
      throw line_error(path, line_no, err.what());
    }
  }
  return result;
}

std::string write_ground_truth(const GroundTruthMap& entries) {
  std::ostringstream out;
  out << "# columns: frame,object_id,x,y,w,h\n";
  for (const auto& [frame, list] : entries) {
    for (const auto& entry : list) {
      out << frame << ',' << entry.object_id << ',' << format_double(entry.box.x) << ','
          << format_double(entry.box.y) << ',' << format_double(entry.box.w) << ','
          << format_double(entry.box.h) << '\n';
    }
  }
  return out.str();
}

std::vector<Detection> filter_labels(const std::vector<Detection>& detections,
                                     const std::set<ClassLabel>& blacklist) {
  std::vector<Detection> kept;
  kept.reserve(detections.size());
  for (const auto& det : detections) {
    if (!blacklist.contains(det.label)) kept.push_back(det);
  }
  return kept;
}

std::vector<Detection> nms(const std::vector<Detection>& detections, double iou_threshold) {
  std::vector<std::size_t> order(detections.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });

  std::vector<Detection> kept;
  std::vector<char> suppressed(detections.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (suppressed[order[i]]) continue;
    const Detection& top = detections[order[i]];
    kept.push_back(top);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (suppressed[order[j]]) continue;
      if (iou(top.box, detections[order[j]].box) > iou_threshold) {
        suppressed[order[j]] = 1;
      }
    }
  }
  return kept;
}

ColorHistogram histogram_of_region(const PpmImage& image, const BoundingBox& box) {
  // A pixel belongs to the box when its center (px + 0.5, py + 0.5) does.
  const int x0 = std::max(0, static_cast<int>(std::ceil(box.x - 0.5)));
  const int x1 = std::min(image.width, static_cast<int>(std::ceil(box.right() - 0.5)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(box.y - 0.5)));
  const int y1 = std::min(image.height, static_cast<int>(std::ceil(box.bottom() - 0.5)));

  ColorHistogram hist = ColorHistogram::empty();
  long count = 0;
  for (int py = y0; py < y1; ++py) {
    for (int px = x0; px < x1; ++px) {
      const std::uint8_t* p = image.pixel(px, py);
      hist.bins()[rgb_bin_index(p[0], p[1], p[2])] += 1.0;
      ++count;
    }
  }
  if (count > 0) {
    for (double& bin : hist.bins()) bin /= static_cast<double>(count);
  }
  return hist;
}

DetectionMap attach_histograms(const DetectionMap& detections, const std::string& frames_dir) {
  DetectionMap result;
  for (const auto& [frame, dets] : detections) {
    const std::string path =
        (std::filesystem::path(frames_dir) / frame_file_name(frame)).string();
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error("attach_histograms: missing image for frame " +
                               std::to_string(frame) + " (" + path + ")");
    }
    const PpmImage image = read_ppm(path);
    auto& out = result[frame];
    out.reserve(dets.size());
    for (const auto& det : dets) {
      Detection updated = det;
      updated.histogram = histogram_of_region(image, det.box);
      out.push_back(std::move(updated));
    }
  }
  return result;
}

}  // namespace urbanmot
