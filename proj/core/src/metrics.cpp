#include "gazesweep/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gazesweep/error.hpp"

namespace gazesweep {

void RecurrenceConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ValidationError("rho must be positive");
  if (min_line_len < 2) throw ValidationError("min_line_len must be >= 2");
}

RecurrenceMatrix::RecurrenceMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw ValidationError("negative recurrence matrix extent");
}

int RecurrenceMatrix::count() const noexcept {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

double point_distance(const Fixation& a, const Fixation& b) noexcept {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

double dtw(const Scanpath& a, const Scanpath& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  // Rolling rows of the accumulated cost matrix.
  std::vector<double> prev(nb), cur(nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const double d = point_distance(a[i], b[j]);
      if (i == 0 && j == 0) {
        cur[j] = d;
      } else if (i == 0) {
        cur[j] = d + cur[j - 1];
      } else if (j == 0) {
        cur[j] = d + prev[j];
      } else {
        cur[j] = d + std::min({prev[j], cur[j - 1], prev[j - 1]});
      }
    }
    std::swap(prev, cur);
  }
  return prev[nb - 1];
}

double eyenalysis(const Scanpath& a, const Scanpath& b) {
  double total = 0.0;
  for (const Fixation& p : a.fixations()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Fixation& q : b.fixations()) best = std::min(best, point_distance(p, q));
    total += best;
  }
  for (const Fixation& q : b.fixations()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Fixation& p : a.fixations()) best = std::min(best, point_distance(p, q));
    total += best;
  }
  return total / static_cast<double>(a.size() + b.size());
}

RecurrenceMatrix cross_recurrence_matrix(const Scanpath& a, const Scanpath& b,
                                         const RecurrenceConfig& cfg) {
  cfg.validate();
  RecurrenceMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, point_distance(a[i], b[j]) <= cfg.rho);
  return m;
}

namespace {

// Walk a line starting at (i, j) in direction (di, dj) and add the length
// of every maximal run of ones that reaches `min_len`.
int points_on_runs(const RecurrenceMatrix& m, int i, int j, int di, int dj, int min_len) {
  int total = 0;
  int run = 0;
  for (; i < m.rows() && j < m.cols(); i += di, j += dj) {
    if (m.at(i, j)) {
      ++run;
    } else {
      if (run >= min_len) total += run;
      run = 0;
    }
  }
  if (run >= min_len) total += run;
  return total;
}

double percentage(int part, int whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double determinism(const RecurrenceMatrix& m, int min_line_len) {
  const int recurrent = m.count();
  if (recurrent == 0) return 0.0;
  int diagonal = 0;
  for (int i = 0; i < m.rows(); ++i) diagonal += points_on_runs(m, i, 0, 1, 1, min_line_len);
  for (int j = 1; j < m.cols(); ++j) diagonal += points_on_runs(m, 0, j, 1, 1, min_line_len);
  return percentage(diagonal, recurrent);
}

double laminarity(const RecurrenceMatrix& m, int min_line_len) {
  const int recurrent = m.count();
  if (recurrent == 0) return 0.0;
  int horizontal = 0;
  int vertical = 0;
  for (int i = 0; i < m.rows(); ++i) horizontal += points_on_runs(m, i, 0, 0, 1, min_line_len);
  for (int j = 0; j < m.cols(); ++j) vertical += points_on_runs(m, 0, j, 1, 0, min_line_len);
  return percentage(horizontal + vertical, 2 * recurrent);
}

double determinism(const Scanpath& a, const Scanpath& b, const RecurrenceConfig& cfg) {
  return determinism(cross_recurrence_matrix(a, b, cfg), cfg.min_line_len);
}

double laminarity(const Scanpath& a, const Scanpath& b, const RecurrenceConfig& cfg) {
  return laminarity(cross_recurrence_matrix(a, b, cfg), cfg.min_line_len);
}

MetricReport compare(const Scanpath& predicted, const Scanpath& truth,
                     const RecurrenceConfig& cfg, double coord_scale) {
  if (!(coord_scale > 0.0) || !std::isfinite(coord_scale))
    throw ValidationError("coordinate scale must be positive");
  const RecurrenceMatrix m = cross_recurrence_matrix(predicted, truth, cfg);
  MetricReport r;
  r.dtw = coord_scale * dtw(predicted, truth);
  r.eyenalysis = coord_scale * eyenalysis(predicted, truth);
  r.determinism_pct = determinism(m, cfg.min_line_len);
  r.laminarity_pct = laminarity(m, cfg.min_line_len);
  r.recurrence_count = m.count();
  return r;
}

}  // namespace gazesweep
