#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gazesweep {

/// Dense row-major 2-D grid of doubles. Used for image channels, pyramid
/// levels, saliency values and suppressed working maps.
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, double fill = 0.0);
  Grid(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& at(int row, int col) { return values_[index(row, col)]; }
  double at(int row, int col) const { return values_[index(row, col)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double max() const;
  double min() const;
  double sum() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Value of `g` at continuous position (x, y) in pixel-center coordinates
/// (pixel (r, c) sits at x = c, y = r). Positions outside the grid clamp to
/// the border.
double sample_bilinear(const Grid& g, double x, double y);

/// Bilinear resample with half-pixel centers: output pixel i maps to source
/// coordinate (i + 0.5) * src / dst - 0.5, clamped to the border. Same-size
/// resampling is the identity. Output values stay inside [min, max] of the
/// input.
Grid resize_bilinear(const Grid& g, int width, int height);

/// Rotate by 180 degrees.
Grid rotate180(const Grid& g);

}  // namespace gazesweep
