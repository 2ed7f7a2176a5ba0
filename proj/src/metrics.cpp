#include "urbanmot/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "urbanmot/assignment.hpp"
#include "urbanmot/csv.hpp"
#include "urbanmot/geometry.hpp"

namespace urbanmot {

EvalResult evaluate(const GroundTruthMap& gt, const HypothesisMap& hyp, double iou_gate) {
  if (iou_gate <= 0.0 || iou_gate > 1.0) {
    throw std::invalid_argument("evaluate: iou_gate must lie in (0,1]");
  }

  FrameEvalAccumulator acc;
  std::map<int, int> prev_corr;   // gt_id -> track_id active in the previous frame
  std::map<int, int> last_track;  // gt_id -> last track_id it was ever matched to

  std::set<int> frames;
  for (const auto& [frame, entries] : gt) frames.insert(frame);
  for (const auto& [frame, rows] : hyp) frames.insert(frame);

  static const std::vector<GroundTruthEntry> no_gt;
  static const std::vector<TrackRecord> no_hyp;

  for (int frame : frames) {
    const auto git = gt.find(frame);
    const auto hit = hyp.find(frame);
    const auto& gts = git != gt.end() ? git->second : no_gt;
    const auto& hyps = hit != hyp.end() ? hit->second : no_hyp;

    acc.gt_count += static_cast<long>(gts.size());

    std::map<int, std::size_t> gt_index;
    for (std::size_t i = 0; i < gts.size(); ++i) gt_index[gts[i].object_id] = i;
    std::map<int, std::size_t> hyp_index;
    for (std::size_t i = 0; i < hyps.size(); ++i) hyp_index[hyps[i].track_id] = i;

    std::vector<char> gt_used(gts.size(), 0);
    std::vector<char> hyp_used(hyps.size(), 0);
    std::map<int, int> corr;

    // Carry over still-valid correspondences from the previous frame.
    for (const auto& [gt_id, track_id] : prev_corr) {
      const auto gi = gt_index.find(gt_id);
      const auto hi = hyp_index.find(track_id);
      if (gi == gt_index.end() || hi == hyp_index.end()) continue;
      const double overlap = iou(gts[gi->second].box, hyps[hi->second].box);
      if (overlap < iou_gate) continue;
      corr[gt_id] = track_id;
      gt_used[gi->second] = 1;
      hyp_used[hi->second] = 1;
      ++acc.matches;
      acc.overlap_sum += overlap;
    }

    // Remaining pairs: maximum-total-IoU assignment, gated at the overlap
    // threshold.
    std::vector<std::size_t> rem_gt, rem_hyp;
    for (std::size_t i = 0; i < gts.size(); ++i) {
      if (!gt_used[i]) rem_gt.push_back(i);
    }
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      if (!hyp_used[i]) rem_hyp.push_back(i);
    }
    CostMatrix matrix(rem_gt.size(), rem_hyp.size());
    for (std::size_t r = 0; r < rem_gt.size(); ++r) {
      for (std::size_t c = 0; c < rem_hyp.size(); ++c) {
        matrix.at(r, c) = 1.0 - iou(gts[rem_gt[r]].box, hyps[rem_hyp[c]].box);
      }
    }
    const auto gated = gate_and_split(solve_min_cost(matrix), matrix, 1.0 - iou_gate);
    for (const auto& match : gated.matches) {
      const auto& gt_entry = gts[rem_gt[match.track_index]];
      const auto& hyp_row = hyps[rem_hyp[match.detection_index]];
      corr[gt_entry.object_id] = hyp_row.track_id;
      gt_used[rem_gt[match.track_index]] = 1;
      hyp_used[rem_hyp[match.detection_index]] = 1;
      ++acc.matches;
      acc.overlap_sum += iou(gt_entry.box, hyp_row.box);
      const auto last = last_track.find(gt_entry.object_id);
      if (last != last_track.end() && last->second != hyp_row.track_id) {
        ++acc.mismatches;
      }
    }

    for (std::size_t i = 0; i < gts.size(); ++i) {
      if (!gt_used[i]) ++acc.misses;
    }
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      if (!hyp_used[i]) ++acc.false_positives;
    }

    for (const auto& [gt_id, track_id] : corr) last_track[gt_id] = track_id;
    prev_corr = std::move(corr);
  }

  if (acc.gt_count == 0) {
    throw std::runtime_error("evaluate: ground truth is empty, MOTA undefined");
  }

  EvalResult result;
  result.counts = acc;
  result.mota = 1.0 - static_cast<double>(acc.misses + acc.false_positives + acc.mismatches) /
                          static_cast<double>(acc.gt_count);
  result.motp = acc.matches > 0 ? acc.overlap_sum / static_cast<double>(acc.matches) : 0.0;
  return result;
}

MetricsReport report(std::vector<SequenceComparison> results) {
  std::sort(results.begin(), results.end(),
            [](const SequenceComparison& a, const SequenceComparison& b) {
              return a.sequence < b.sequence;
            });

  MetricsReport out;
  std::ostringstream csv;
  csv << "sequence,motp_with,motp_without,mota_with,mota_without\n";
  for (const auto& row : results) {
    csv << row.sequence << ',' << format_double(row.with_labels.motp) << ','
        << format_double(row.without_labels.motp) << ',' << format_double(row.with_labels.mota)
        << ',' << format_double(row.without_labels.mota) << '\n';
  }
  out.csv = csv.str();

  std::size_t name_width = 8;
  for (const auto& row : results) name_width = std::max(name_width, row.sequence.size());
  std::ostringstream table;
  table << std::left << std::setw(static_cast<int>(name_width + 2)) << "sequence" << std::right
        << std::setw(12) << "MOTP w/" << std::setw(12) << "MOTP w/o" << std::setw(12)
        << "MOTA w/" << std::setw(12) << "MOTA w/o" << '\n';
  table << std::setprecision(4) << std::fixed;
  for (const auto& row : results) {
    table << std::left << std::setw(static_cast<int>(name_width + 2)) << row.sequence
          << std::right << std::setw(12) << row.with_labels.motp << std::setw(12)
          << row.without_labels.motp << std::setw(12) << row.with_labels.mota << std::setw(12)
          << row.without_labels.mota << '\n';
  }
  out.text_table = table.str();
  return out;
}

std::string write_metrics_csv(const std::string& sequence, const EvalResult& result) {
  std::ostringstream out;
  out << "sequence,mota,motp,matches,misses,false_positives,mismatches,gt_count\n";
  out << sequence << ',' << format_double(result.mota) << ',' << format_double(result.motp) << ','
      << result.counts.matches << ',' << result.counts.misses << ','
      << result.counts.false_positives << ',' << result.counts.mismatches << ','
      << result.counts.gt_count << '\n';
  return out.str();
}

}  // namespace urbanmot
