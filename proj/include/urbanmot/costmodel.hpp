#pragma once

#include "urbanmot/geometry.hpp"
#include "urbanmot/types.hpp"

namespace urbanmot {

// Per-component weights applied when combining the three costs into the
// assignment matrix. Setting a weight to 0 removes that cue.
struct CostWeights {
  double label = 1.0;
  double position = 1.0;
  double color = 1.0;
};

struct CostBreakdown {
  double label_cost = 0.0;
  double position_cost = 0.0;
  double color_cost = 0.0;
  double total = 0.0;  // label_cost + position_cost + color_cost
};

// Track-side attributes entering the pairwise cost: the Kalman-predicted
// box for the current frame plus label/confidence/histogram of the most
// recent matched detection.
struct TrackView {
  ClassLabel label = ClassLabel::car;
  double confidence = 0.0;
  BoundingBox box;
  ColorHistogram histogram;
};

// 1 - 0.5*(conf_i + conf_j) when labels agree, 1 otherwise.
double label_cost(ClassLabel label_i, double conf_i, ClassLabel label_j, double conf_j);

// 1 - IoU of the two boxes.
double position_cost(const BoundingBox& box_i, const BoundingBox& box_j);

// Bhattacharyya distance between two histograms of equal bin count.
// Empty (all-zero) histograms compare as maximally dissimilar (cost 1).
// Throws std::invalid_argument on bin-count mismatch.
double color_cost(const ColorHistogram& h_i, const ColorHistogram& h_j);

CostBreakdown total_cost(const TrackView& track, const Detection& det);

inline double weighted_total(const CostBreakdown& c, const CostWeights& w) {
  return w.label * c.label_cost + w.position * c.position_cost + w.color * c.color_cost;
}

}  // namespace urbanmot
