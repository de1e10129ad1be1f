#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazesweep/grid.hpp"

namespace gazesweep {

/// A single gaze point in normalized [0,1]^2 image coordinates. Pixel
/// coordinates only exist at I/O boundaries.
class Fixation {
 public:
  Fixation(double x, double y, std::optional<double> duration_ms = std::nullopt,
           std::optional<double> t_ms = std::nullopt);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  std::optional<double> duration_ms() const noexcept { return duration_ms_; }
  std::optional<double> t_ms() const noexcept { return t_ms_; }

  friend bool operator==(const Fixation&, const Fixation&) = default;

 private:
  double x_;
  double y_;
  std::optional<double> duration_ms_;
  std::optional<double> t_ms_;
};

/// Ordered fixation sequence for one viewer (or one model rollout) on one image.
class Scanpath {
 public:
  explicit Scanpath(std::vector<Fixation> fixations, std::string image_id = {},
                    std::optional<std::string> viewer_id = std::nullopt);

  std::span<const Fixation> fixations() const noexcept { return fixations_; }
  std::size_t size() const noexcept { return fixations_.size(); }
  const Fixation& operator[](std::size_t i) const { return fixations_[i]; }
  const std::string& image_id() const noexcept { return image_id_; }
  const std::optional<std::string>& viewer_id() const noexcept { return viewer_id_; }

  /// Copy holding only the first `n` fixations (n >= 1).
  Scanpath truncated(std::size_t n) const;

  friend bool operator==(const Scanpath&, const Scanpath&) = default;

 private:
  std::vector<Fixation> fixations_;
  std::string image_id_;
  std::optional<std::string> viewer_id_;
};

/// Non-negative attention density over a (resized) image. Rejects NaN,
/// infinities, negative values and the all-zero grid.
class SaliencyMap {
 public:
  explicit SaliencyMap(Grid values);

  int width() const noexcept { return grid_.width(); }
  int height() const noexcept { return grid_.height(); }
  double at(int row, int col) const { return grid_.at(row, col); }
  const Grid& grid() const noexcept { return grid_; }

  friend bool operator==(const SaliencyMap&, const SaliencyMap&) = default;

 private:
  Grid grid_;
};

enum class GuiType { Poster, Desktop, Mobile, Web };

GuiType parse_gui_type(std::string_view s);
std::string_view to_string(GuiType t) noexcept;
inline constexpr GuiType kAllGuiTypes[] = {GuiType::Poster, GuiType::Desktop, GuiType::Mobile,
                                           GuiType::Web};

enum class ElementCategory { Image, Text, Face };

ElementCategory parse_element_category(std::string_view s);
std::string_view to_string(ElementCategory c) noexcept;
inline constexpr ElementCategory kAllElementCategories[] = {
    ElementCategory::Image, ElementCategory::Text, ElementCategory::Face};

/// Axis-aligned GUI element in normalized coordinates.
class ElementBox {
 public:
  ElementBox(double x0, double y0, double x1, double y1, ElementCategory category,
             std::string element_id);

  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }
  double x1() const noexcept { return x1_; }
  double y1() const noexcept { return y1_; }
  double area() const noexcept { return (x1_ - x0_) * (y1_ - y0_); }
  ElementCategory category() const noexcept { return category_; }
  const std::string& element_id() const noexcept { return element_id_; }

  /// Closed-interval containment.
  bool contains(double x, double y) const noexcept {
    return x >= x0_ && x <= x1_ && y >= y0_ && y <= y1_;
  }

  friend bool operator==(const ElementBox&, const ElementBox&) = default;

 private:
  double x0_, y0_, x1_, y1_;
  ElementCategory category_;
  std::string element_id_;
};

/// How the weight of an already-selected fixation evolves as more
/// fixations are predicted.
enum class DecayKind {
  BaselineLinear,    ///< 1 - 0.1 (n - i - 1); goes negative past 12 fixations
  ExponentialGamma,  ///< gamma^(n - i - 1)
  Full,              ///< constant 1: every prior fixation stays fully suppressed
};

DecayKind parse_decay_kind(std::string_view s);
std::string_view to_string(DecayKind k) noexcept;

struct RolloutConfig {
  int n_fixations = 10;
  DecayKind decay = DecayKind::ExponentialGamma;
  double gamma = 0.1;
  double mask_radius_frac = 0.1;
  int image_side = 225;

  /// Masking radius in map pixels.
  double radius_px() const noexcept { return mask_radius_frac * image_side; }

  /// Throws ValidationError on any out-of-domain field.
  void validate() const;

  friend bool operator==(const RolloutConfig&, const RolloutConfig&) = default;
};

struct ImageDims {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

/// Fixation as recorded by an eye tracker, in source-screen pixels.
struct RawFixation {
  double x_px = 0.0;
  double y_px = 0.0;
  std::optional<double> t_ms;
  std::optional<double> duration_ms;
};

struct NormalizedScanpath {
  Scanpath scanpath;
  int clamped = 0;  ///< points pulled back into [0,1]^2
};

/// Divide pixel coordinates by the source dimensions, clamping overshoot.
NormalizedScanpath validate_scanpath(std::span<const RawFixation> raw, ImageDims dims,
                                     std::string image_id = {},
                                     std::optional<std::string> viewer_id = std::nullopt);

/// Inverse of the normalization in validate_scanpath, in source pixels.
RawFixation denormalize(const Fixation& f, ImageDims dims);

}  // namespace gazesweep
