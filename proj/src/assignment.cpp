#include "urbanmot/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urbanmot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^3) Hungarian algorithm with potentials on a square matrix.
// Returns the column assigned to each row.
std::vector<int> hungarian_square(const std::vector<double>& a, int n) {
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Every perfect matching of the padded square contains the same number of
// sentinel entries (one per padded row or column), so assignments compare
// on their real-entry sums alone. `real_rows`/`real_cols` mark the
// original extent.
double real_value(const std::vector<double>& a, int n, const std::vector<int>& row_to_col,
                  std::size_t real_rows, std::size_t real_cols) {
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    if (static_cast<std::size_t>(r) >= real_rows) continue;
    if (static_cast<std::size_t>(row_to_col[r]) >= real_cols) continue;
    total += a[r * n + row_to_col[r]];
  }
  return total;
}

// Optimal real-entry value of the subproblem on the given rows x cols.
double subproblem_real_value(const std::vector<double>& a, int n, const std::vector<int>& rows,
                             const std::vector<int>& cols, std::size_t real_rows,
                             std::size_t real_cols) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) return 0.0;
  std::vector<double> sub(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      sub[r * m + c] = a[rows[r] * n + cols[c]];
    }
  }
  const auto assign = hungarian_square(sub, m);
  double total = 0.0;
  for (int r = 0; r < m; ++r) {
    if (static_cast<std::size_t>(rows[r]) >= real_rows) continue;
    if (static_cast<std::size_t>(cols[assign[r]]) >= real_cols) continue;
    total += sub[r * m + assign[r]];
  }
  return total;
}

// Refines an optimal assignment to the lexicographically smallest
// (row, col) sequence among assignments of equal cost. Each row in turn is
// pinned to the smallest column that still completes to the optimal value;
// padded columns sort after real ones, so matched rows are preferred.
std::vector<int> lexicographic_refine(const std::vector<double>& a, int n, double opt_real,
                                      std::size_t real_rows, std::size_t real_cols) {
  const double eps = 1e-9 * std::max(1.0, std::abs(opt_real));
  std::vector<int> result(n, -1);
  std::vector<int> free_cols(n);
  for (int c = 0; c < n; ++c) free_cols[c] = c;
  double fixed_real = 0.0;
  for (int r = 0; r < n; ++r) {
    std::vector<int> tail_rows;
    for (int rr = r + 1; rr < n; ++rr) tail_rows.push_back(rr);
    const bool pad_row = static_cast<std::size_t>(r) >= real_rows;
    std::size_t chosen = free_cols.size();
    std::size_t best_k = 0;
    double best_total = kInf;
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const int c = free_cols[k];
      const bool pad_entry = pad_row || static_cast<std::size_t>(c) >= real_cols;
      std::vector<int> rest_cols;
      rest_cols.reserve(free_cols.size() - 1);
      for (std::size_t k2 = 0; k2 < free_cols.size(); ++k2) {
        if (k2 != k) rest_cols.push_back(free_cols[k2]);
      }
      const double candidate =
          fixed_real + (pad_entry ? 0.0 : a[r * n + c]) +
          subproblem_real_value(a, n, tail_rows, rest_cols, real_rows, real_cols);
      if (candidate < best_total) {
        best_total = candidate;
        best_k = k;
      }
      if (candidate <= opt_real + eps) {
        chosen = k;
        break;
      }
    }
    if (chosen == free_cols.size()) chosen = best_k;  // tolerance fallback
    const int c = free_cols[chosen];
    const bool pad_entry = pad_row || static_cast<std::size_t>(c) >= real_cols;
    result[r] = c;
    if (!pad_entry) fixed_real += a[r * n + c];
    free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return result;
}

}  // namespace

std::vector<MatchPair> solve_min_cost(const CostMatrix& matrix) {
  if (matrix.empty()) return {};

  const auto rows = matrix.rows();
  const auto cols = matrix.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(matrix.at(r, c))) {
        throw std::invalid_argument("solve_min_cost: non-finite cost entry");
      }
    }
  }

  // Pad to square; padded rows/cols are appended after the real ones so the
  // lexicographic refinement settles real rows first.
  const int n = static_cast<int>(std::max(rows, cols));
  std::vector<double> a(static_cast<std::size_t>(n) * n, kPaddingCost);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      a[r * static_cast<std::size_t>(n) + c] = matrix.at(r, c);
    }
  }

  const auto assign = hungarian_square(a, n);
  const double opt_real = real_value(a, n, assign, rows, cols);
  const auto refined = lexicographic_refine(a, n, opt_real, rows, cols);

  std::vector<MatchPair> out;
  out.reserve(std::min(rows, cols));
  for (int r = 0; r < n; ++r) {
    if (static_cast<std::size_t>(r) >= rows) continue;     // padded row
    if (static_cast<std::size_t>(refined[r]) >= cols) continue;  // padded col
    out.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(refined[r])});
  }
  return out;
}

AssignmentResult gate_and_split(const std::vector<MatchPair>& pairing, const CostMatrix& matrix,
                                double t_match) {
  AssignmentResult result;
  std::vector<char> row_matched(matrix.rows(), 0);
  std::vector<char> col_matched(matrix.cols(), 0);
  for (const auto& pair : pairing) {
    const double cost = matrix.at(pair.row, pair.col);
    if (cost > t_match) continue;
    result.matches.push_back({pair.row, pair.col, cost});
    row_matched[pair.row] = 1;
    col_matched[pair.col] = 1;
  }
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (!row_matched[r]) result.unmatched_tracks.push_back(r);
  }
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    if (!col_matched[c]) result.unmatched_detections.push_back(c);
  }
  return result;
}

}  // namespace urbanmot
