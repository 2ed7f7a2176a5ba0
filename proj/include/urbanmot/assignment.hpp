#pragma once

#include <cstddef>
#include <vector>

namespace urbanmot {

// Dense row-major cost matrix. Rows are tracks, columns are detections in
// tracker use; the solver itself is agnostic.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct MatchPair {
  std::size_t row = 0;  // track index
  std::size_t col = 0;  // detection index
  bool operator==(const MatchPair&) const = default;
};

struct Match {
  std::size_t track_index = 0;
  std::size_t detection_index = 0;
  double total_cost = 0.0;
};

// Gated pairing: every input row and column index lands in exactly one of
// the three lists.
struct AssignmentResult {
  std::vector<Match> matches;
  std::vector<std::size_t> unmatched_tracks;
  std::vector<std::size_t> unmatched_detections;
};

// Cost used for the square padding of rectangular matrices. Padded pairs
// are dropped from the result; genuine totals stay far below this.
inline constexpr double kPaddingCost = 1e9;

// Minimum-cost bipartite assignment (Hungarian algorithm). Returns
// min(rows, cols) pairs sorted by row; among equal-cost optima the
// lexicographically smallest (row, col) sequence is returned. An empty
// matrix yields an empty pairing. Throws std::invalid_argument on
// non-finite entries.
std::vector<MatchPair> solve_min_cost(const CostMatrix& matrix);

// Splits a solver pairing at t_match: pairs costing strictly more than
// t_match are dissolved into the unmatched pools, as are all rows and
// columns absent from the pairing.
AssignmentResult gate_and_split(const std::vector<MatchPair>& pairing,
                                const CostMatrix& matrix, double t_match);

}  // namespace urbanmot
