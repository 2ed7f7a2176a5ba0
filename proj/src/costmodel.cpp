#include "urbanmot/costmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace urbanmot {

double label_cost(ClassLabel label_i, double conf_i, ClassLabel label_j, double conf_j) {
  if (label_i != label_j) return 1.0;
  return 1.0 - 0.5 * (conf_i + conf_j);
}

double position_cost(const BoundingBox& box_i, const BoundingBox& box_j) {
  return 1.0 - iou(box_i, box_j);
}

double color_cost(const ColorHistogram& h_i, const ColorHistogram& h_j) {
  if (h_i.bin_count() != h_j.bin_count()) {
    throw std::invalid_argument("color_cost: histogram bin counts differ");
  }
  if (h_i.is_empty() || h_j.is_empty()) return 1.0;

  const auto n = static_cast<double>(h_i.bin_count());
  const double mean_i = h_i.sum() / n;
  const double mean_j = h_j.sum() / n;

  double overlap = 0.0;
  for (std::size_t k = 0; k < h_i.bin_count(); ++k) {
    overlap += std::sqrt(h_i[k] * h_j[k]);
  }

  // Rounding can push the radicand a hair outside [0,1]; clamp before the
  // outer square root.
  double radicand = 1.0 - overlap / std::sqrt(mean_i * mean_j * n * n);
  radicand = std::clamp(radicand, 0.0, 1.0);
  return std::sqrt(radicand);
}

CostBreakdown total_cost(const TrackView& track, const Detection& det) {
  CostBreakdown out;
  out.label_cost = label_cost(track.label, track.confidence, det.label, det.confidence);
  out.position_cost = position_cost(track.box, det.box);
  out.color_cost = color_cost(track.histogram, det.histogram);
  out.total = out.label_cost + out.position_cost + out.color_cost;
  return out;
}

}  // namespace urbanmot
