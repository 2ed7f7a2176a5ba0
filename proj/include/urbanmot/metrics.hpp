#pragma once

#include <string>
#include <vector>

#include "urbanmot/tracker.hpp"
#include "urbanmot/types.hpp"

namespace urbanmot {

struct FrameEvalAccumulator {
  long matches = 0;
  long misses = 0;           // FN
  long false_positives = 0;  // FP
  long mismatches = 0;       // identity switches
  double overlap_sum = 0.0;
  long gt_count = 0;
};

struct EvalResult {
  double mota = 0.0;
  double motp = 0.0;
  FrameEvalAccumulator counts;
};

// CLEAR MOT evaluation with overlap-based correspondence. Per frame:
// previous-frame correspondences are carried over while both sides are
// present with IoU >= iou_gate; the rest are matched by maximum-total-IoU
// assignment; a ground-truth object whose track changes from its last
// known one counts a mismatch. MOTA = 1 - (FN + FP + IDSW)/GT (can be
// negative); MOTP is the mean IoU over matches (0 when there are none).
// Throws std::runtime_error when the ground truth is empty.
EvalResult evaluate(const GroundTruthMap& gt, const HypothesisMap& hyp, double iou_gate = 0.5);

struct SequenceComparison {
  std::string sequence;
  EvalResult with_labels;
  EvalResult without_labels;
};

struct MetricsReport {
  std::string csv;         // sequence,motp_with,motp_without,mota_with,mota_without
  std::string text_table;  // aligned human-readable rendering of the same rows
};

// Table-style comparison of runs with and without the label cost, one row
// per sequence, sorted by sequence name.
MetricsReport report(std::vector<SequenceComparison> results);

// Machine-readable single-run metrics.
std::string write_metrics_csv(const std::string& sequence, const EvalResult& result);

}  // namespace urbanmot
