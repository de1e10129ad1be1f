#include "gazesweep/ior.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "gazesweep/error.hpp"

namespace gazesweep {

double decay_weight(DecayKind kind, double gamma, int n, int i) {
  const int age = n - i - 1;
  switch (kind) {
    case DecayKind::BaselineLinear:
      return static_cast<double>(10 - age) / 10.0;
    case DecayKind::ExponentialGamma:
      return std::pow(gamma, age);
    case DecayKind::Full:
      return 1.0;
  }
  return 1.0;
}

double suppression_factor(double weight) { return 1.0 - std::clamp(weight, 0.0, 1.0); }

Grid apply_disk_suppression(const Grid& fresh, std::span<const Cell> history,
                            std::span<const double> weights, double radius_px) {
  if (history.size() != weights.size())
    throw ValidationError("history and weights must have the same length");
  Grid out = fresh;
  const double r2 = radius_px * radius_px;
  const int reach = static_cast<int>(std::floor(radius_px));
  for (std::size_t k = 0; k < history.size(); ++k) {
    const double factor = suppression_factor(weights[k]);
    if (factor == 1.0) continue;
    const Cell h = history[k];
    const int r_lo = std::max(0, h.row - reach);
    const int r_hi = std::min(out.height() - 1, h.row + reach);
    const int c_lo = std::max(0, h.col - reach);
    const int c_hi = std::min(out.width() - 1, h.col + reach);
    for (int r = r_lo; r <= r_hi; ++r) {
      const double dy = r - h.row;
      for (int c = c_lo; c <= c_hi; ++c) {
        const double dx = c - h.col;
        if (dx * dx + dy * dy <= r2) out.at(r, c) *= factor;
      }
    }
  }
  return out;
}

Grid apply_ior_mask(const SaliencyMap& fresh, std::span<const Cell> history,
                    const RolloutConfig& cfg) {
  const int n = static_cast<int>(history.size()) + 1;
  std::vector<double> weights(history.size());
  for (std::size_t k = 0; k < history.size(); ++k)
    weights[k] = decay_weight(cfg.decay, cfg.gamma, n, static_cast<int>(k) + 1);
  return apply_disk_suppression(fresh.grid(), history, weights, cfg.radius_px());
}

Fixation cell_center(const Cell& cell, int width, int height) {
  return Fixation((cell.col + 0.5) / width, (cell.row + 0.5) / height);
}

namespace {

// Row-major scan with strict '>' gives the lowest-row, lowest-column tie-break.
std::optional<Cell> argmax(const Grid& g, std::span<const Cell> excluded = {}) {
  std::optional<Cell> best;
  double best_value = 0.0;
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) {
      const Cell cell{r, c};
      if (std::find(excluded.begin(), excluded.end(), cell) != excluded.end()) continue;
      const double v = g.at(r, c);
      if (!best || v > best_value) {
        best = cell;
        best_value = v;
      }
    }
  return best;
}

}  // namespace

RolloutTrace rollout_with_trace(const SaliencyMap& map, const RolloutConfig& cfg,
                                std::string image_id) {
  cfg.validate();
  std::vector<Cell> history;
  history.reserve(static_cast<std::size_t>(cfg.n_fixations));
  int fallback_steps = 0;
  for (int step = 0; step < cfg.n_fixations; ++step) {
    const Grid working = apply_ior_mask(map, history, cfg);
    std::optional<Cell> pick;
    if (working.max() > 0.0) {
      pick = argmax(working);
    } else {
      ++fallback_steps;
      pick = argmax(map.grid(), history);
    }
    if (!pick) break;
    history.push_back(*pick);
  }

  std::vector<Fixation> fixations;
  fixations.reserve(history.size());
  for (const Cell& c : history) fixations.push_back(cell_center(c, map.width(), map.height()));
  return {Scanpath(std::move(fixations), std::move(image_id)), std::move(history),
          fallback_steps};
}

Scanpath rollout(const SaliencyMap& map, const RolloutConfig& cfg, std::string image_id) {
  return rollout_with_trace(map, cfg, std::move(image_id)).scanpath;
}

}  // namespace gazesweep
