#pragma once

#include <span>
#include <vector>

#include "gazesweep/grid.hpp"
#include "gazesweep/types.hpp"

namespace gazesweep {

/// Integer map cell; row = y, col = x.
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// IOR weight of the i-th already-selected fixation (1-based) while the
/// n-th fixation is being predicted. Requires 1 <= i <= n-1.
///
///  - BaselineLinear: 1 - 0.1 (n - i - 1). Evaluated as (10 - (n - i - 1)) / 10
///    so integer steps land on the nearest double (n=13, i=1 gives exactly -0.1).
///  - ExponentialGamma: gamma^(n - i - 1), always in (0, 1].
///  - Full: 1.
double decay_weight(DecayKind kind, double gamma, int n, int i);

/// Weight clamped into [0,1] and turned into the multiplicative factor
/// applied inside a masking disk.
double suppression_factor(double weight);

/// Multiply every cell within Euclidean distance `radius_px` of each
/// history cell by that entry's suppression factor. Overlapping disks
/// compose multiplicatively; cells outside every disk are copied unchanged.
/// `weights` must be parallel to `history`.
Grid apply_disk_suppression(const Grid& fresh, std::span<const Cell> history,
                            std::span<const double> weights, double radius_px);

/// Suppressed working map for the next prediction. `history` is oldest
/// first and n = history.size() + 1 in decay_weight. The result may be all
/// zero, so it is a plain Grid rather than a SaliencyMap.
Grid apply_ior_mask(const SaliencyMap& fresh, std::span<const Cell> history,
                    const RolloutConfig& cfg);

/// Normalized coordinate of a cell center.
Fixation cell_center(const Cell& cell, int width, int height);

struct RolloutTrace {
  Scanpath scanpath;
  std::vector<Cell> cells;
  /// Steps where the suppressed map was all zero and selection fell back to
  /// the fresh map.
  int fallback_steps = 0;
};

/// Greedy scanpath: at each step rebuild the suppressed map from the fresh
/// map and the full history, pick the global argmax (ties: lowest row, then
/// lowest column) and append its cell center. When the suppressed map is
/// all zero, pick the argmax of the fresh map over cells not yet in the
/// history. Stops early only if every cell is already in the history.
RolloutTrace rollout_with_trace(const SaliencyMap& map, const RolloutConfig& cfg,
                                std::string image_id = {});

Scanpath rollout(const SaliencyMap& map, const RolloutConfig& cfg, std::string image_id = {});

}  // namespace gazesweep
