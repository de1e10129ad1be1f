#pragma once

#include <cstdint>
#include <vector>

#include "gazesweep/types.hpp"

namespace gazesweep {

struct RecurrenceConfig {
  double rho = 0.1;      ///< recurrence distance threshold, normalized units
  int min_line_len = 2;  ///< minimum diagonal/horizontal/vertical run length

  void validate() const;
};

/// Binary |a| x |b| matrix, row i = a_i, column j = b_j.
class RecurrenceMatrix {
 public:
  RecurrenceMatrix(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * cols_ + j] != 0; }
  void set(int i, int j, bool v) { cells_[static_cast<std::size_t>(i) * cols_ + j] = v ? 1 : 0; }
  int count() const noexcept;

  friend bool operator==(const RecurrenceMatrix&, const RecurrenceMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<std::uint8_t> cells_;
};

struct MetricReport {
  double dtw = 0.0;
  double eyenalysis = 0.0;
  double determinism_pct = 0.0;
  double laminarity_pct = 0.0;
  int recurrence_count = 0;
};

double point_distance(const Fixation& a, const Fixation& b) noexcept;

/// Accumulated-cost DTW with Euclidean point cost; raw (unnormalized) sum
/// along the optimal monotone warping path.
double dtw(const Scanpath& a, const Scanpath& b);

/// Mean nearest-neighbour distance under the double mapping a->b and b->a.
double eyenalysis(const Scanpath& a, const Scanpath& b);

RecurrenceMatrix cross_recurrence_matrix(const Scanpath& a, const Scanpath& b,
                                         const RecurrenceConfig& cfg);

/// Percentage of recurrent points lying on diagonal runs of length >= L.
/// 0 when nothing recurs.
double determinism(const RecurrenceMatrix& m, int min_line_len);
double determinism(const Scanpath& a, const Scanpath& b, const RecurrenceConfig& cfg);

/// 100 (HL + VL) / (2 R): HL/VL count recurrent points on horizontal/vertical
/// runs of length >= L. 0 when nothing recurs.
double laminarity(const RecurrenceMatrix& m, int min_line_len);
double laminarity(const Scanpath& a, const Scanpath& b, const RecurrenceConfig& cfg);

/// All four metrics for one (predicted, ground-truth) pair. DTW and
/// Eyenalysis are multiplied by `coord_scale` (1 = normalized units); the
/// recurrence metrics always use normalized coordinates against `cfg.rho`.
MetricReport compare(const Scanpath& predicted, const Scanpath& truth,
                     const RecurrenceConfig& cfg, double coord_scale = 1.0);

}  // namespace gazesweep
