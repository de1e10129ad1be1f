#include "gazesweep/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gazesweep/error.hpp"

namespace gazesweep {

Grid::Grid(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw ValidationError("grid dimensions must be non-negative");
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Grid::Grid(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 0 || height < 0) throw ValidationError("grid dimensions must be non-negative");
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw ValidationError("grid value count does not match width*height");
}

double Grid::max() const {
  if (values_.empty()) throw ValidationError("max of empty grid");
  return *std::max_element(values_.begin(), values_.end());
}

double Grid::min() const {
  if (values_.empty()) throw ValidationError("min of empty grid");
  return *std::min_element(values_.begin(), values_.end());
}

double Grid::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double sample_bilinear(const Grid& g, double x, double y) {
  const double cx = std::clamp(x, 0.0, static_cast<double>(g.width() - 1));
  const double cy = std::clamp(y, 0.0, static_cast<double>(g.height() - 1));
  const int x0 = static_cast<int>(std::floor(cx));
  const int y0 = static_cast<int>(std::floor(cy));
  const int x1 = std::min(x0 + 1, g.width() - 1);
  const int y1 = std::min(y0 + 1, g.height() - 1);
  const double fx = cx - x0;
  const double fy = cy - y0;
  const double top = (1.0 - fx) * g.at(y0, x0) + fx * g.at(y0, x1);
  const double bottom = (1.0 - fx) * g.at(y1, x0) + fx * g.at(y1, x1);
  return (1.0 - fy) * top + fy * bottom;
}

namespace {

// Precomputed 1-D taps for one axis of the resample.
struct AxisTaps {
  std::vector<int> lo;
  std::vector<int> hi;
  std::vector<double> frac;
};

AxisTaps axis_taps(int src, int dst) {
  AxisTaps t;
  t.lo.resize(dst);
  t.hi.resize(dst);
  t.frac.resize(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(std::floor(s));
    t.lo[i] = lo;
    t.hi[i] = std::min(lo + 1, src - 1);
    t.frac[i] = s - lo;
  }
  return t;
}

}  // namespace

Grid resize_bilinear(const Grid& g, int width, int height) {
  if (width < 1 || height < 1) throw ValidationError("resize target must be at least 1x1");
  if (g.empty()) throw ValidationError("cannot resize an empty grid");
  if (width == g.width() && height == g.height()) return g;

  const AxisTaps tx = axis_taps(g.width(), width);
  const AxisTaps ty = axis_taps(g.height(), height);
  Grid out(width, height);
  for (int r = 0; r < height; ++r) {
    const double fy = ty.frac[r];
    for (int c = 0; c < width; ++c) {
      const double fx = tx.frac[c];
      const double top = (1.0 - fx) * g.at(ty.lo[r], tx.lo[c]) + fx * g.at(ty.lo[r], tx.hi[c]);
      const double bottom =
          (1.0 - fx) * g.at(ty.hi[r], tx.lo[c]) + fx * g.at(ty.hi[r], tx.hi[c]);
      out.at(r, c) = (1.0 - fy) * top + fy * bottom;
    }
  }
  return out;
}

Grid rotate180(const Grid& g) {
  std::vector<double> v(g.values().begin(), g.values().end());
  std::reverse(v.begin(), v.end());
  return Grid(g.width(), g.height(), std::move(v));
}

}  // namespace gazesweep
