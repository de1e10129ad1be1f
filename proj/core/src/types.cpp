#include "gazesweep/types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gazesweep/error.hpp"

namespace gazesweep {

namespace {

void check_optional_time(const std::optional<double>& v, const char* name) {
  if (v && (!std::isfinite(*v) || *v < 0.0))
    throw ValidationError(std::string(name) + " must be finite and non-negative");
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

Fixation::Fixation(double x, double y, std::optional<double> duration_ms,
                   std::optional<double> t_ms)
    : x_(x), y_(y), duration_ms_(duration_ms), t_ms_(t_ms) {
  if (!in_unit(x) || !in_unit(y))
    throw ValidationError("fixation coordinates must lie in [0,1], got (" + std::to_string(x) +
                          ", " + std::to_string(y) + ")");
  check_optional_time(duration_ms_, "duration_ms");
  check_optional_time(t_ms_, "t_ms");
}

Scanpath::Scanpath(std::vector<Fixation> fixations, std::string image_id,
                   std::optional<std::string> viewer_id)
    : fixations_(std::move(fixations)),
      image_id_(std::move(image_id)),
      viewer_id_(std::move(viewer_id)) {
  if (fixations_.empty()) throw ValidationError("scanpath must contain at least one fixation");
  const bool all_timed = std::all_of(fixations_.begin(), fixations_.end(),
                                     [](const Fixation& f) { return f.t_ms().has_value(); });
  if (all_timed) {
    for (std::size_t i = 1; i < fixations_.size(); ++i)
      if (*fixations_[i].t_ms() < *fixations_[i - 1].t_ms())
        throw ValidationError("fixation onsets must be non-decreasing (index " +
                              std::to_string(i) + ")");
  }
}

Scanpath Scanpath::truncated(std::size_t n) const {
  if (n == 0) throw ValidationError("cannot truncate a scanpath to zero fixations");
  if (n >= fixations_.size()) return *this;
  return Scanpath({fixations_.begin(), fixations_.begin() + static_cast<std::ptrdiff_t>(n)},
                  image_id_, viewer_id_);
}

SaliencyMap::SaliencyMap(Grid values) : grid_(std::move(values)) {
  if (grid_.width() < 1 || grid_.height() < 1)
    throw ValidationError("saliency map must be at least 1x1");
  bool any_positive = false;
  for (double v : grid_.values()) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("saliency values must be finite and non-negative");
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw ValidationError("saliency map is all zero");
}

GuiType parse_gui_type(std::string_view s) {
  if (s == "poster") return GuiType::Poster;
  if (s == "desktop") return GuiType::Desktop;
  if (s == "mobile") return GuiType::Mobile;
  if (s == "web") return GuiType::Web;
  throw ValidationError("unknown GUI type '" + std::string(s) + "'");
}

std::string_view to_string(GuiType t) noexcept {
  switch (t) {
    case GuiType::Poster: return "poster";
    case GuiType::Desktop: return "desktop";
    case GuiType::Mobile: return "mobile";
    case GuiType::Web: return "web";
  }
  return "?";
}

ElementCategory parse_element_category(std::string_view s) {
  if (s == "image") return ElementCategory::Image;
  if (s == "text") return ElementCategory::Text;
  if (s == "face") return ElementCategory::Face;
  throw ValidationError("unknown element category '" + std::string(s) + "'");
}

std::string_view to_string(ElementCategory c) noexcept {
  switch (c) {
    case ElementCategory::Image: return "image";
    case ElementCategory::Text: return "text";
    case ElementCategory::Face: return "face";
  }
  return "?";
}

ElementBox::ElementBox(double x0, double y0, double x1, double y1, ElementCategory category,
                       std::string element_id)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), category_(category),
      element_id_(std::move(element_id)) {
  if (!in_unit(x0) || !in_unit(y0) || !in_unit(x1) || !in_unit(y1))
    throw ValidationError("element box '" + element_id_ + "' has corners outside [0,1]");
  if (!(x0 < x1) || !(y0 < y1))
    throw ValidationError("element box '" + element_id_ + "' is empty or inverted");
}

DecayKind parse_decay_kind(std::string_view s) {
  if (s == "linear" || s == "baseline") return DecayKind::BaselineLinear;
  if (s == "gamma" || s == "exponential") return DecayKind::ExponentialGamma;
  if (s == "full") return DecayKind::Full;
  throw ValidationError("unknown decay kind '" + std::string(s) + "'");
}

std::string_view to_string(DecayKind k) noexcept {
  switch (k) {
    case DecayKind::BaselineLinear: return "linear";
    case DecayKind::ExponentialGamma: return "gamma";
    case DecayKind::Full: return "full";
  }
  return "?";
}

void RolloutConfig::validate() const {
  if (n_fixations < 1) throw ValidationError("n_fixations must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0,1)");
  if (!(mask_radius_frac > 0.0 && mask_radius_frac < 1.0))
    throw ValidationError("mask_radius_frac must lie in (0,1)");
  if (image_side < 1) throw ValidationError("image_side must be positive");
}

NormalizedScanpath validate_scanpath(std::span<const RawFixation> raw, ImageDims dims,
                                     std::string image_id,
                                     std::optional<std::string> viewer_id) {
  if (raw.empty()) throw ValidationError("no fixation records");
  if (dims.width < 1 || dims.height < 1)
    throw ValidationError("source image dimensions must be positive");

  int clamped = 0;
  std::vector<Fixation> out;
  out.reserve(raw.size());
  for (const RawFixation& r : raw) {
    if (!std::isfinite(r.x_px) || !std::isfinite(r.y_px))
      throw ValidationError("non-finite fixation coordinate");
    double x = r.x_px / dims.width;
    double y = r.y_px / dims.height;
    if (!in_unit(x) || !in_unit(y)) {
      ++clamped;
      x = std::clamp(x, 0.0, 1.0);
      y = std::clamp(y, 0.0, 1.0);
    }
    out.emplace_back(x, y, r.duration_ms, r.t_ms);
  }
  return {Scanpath(std::move(out), std::move(image_id), std::move(viewer_id)), clamped};
}

RawFixation denormalize(const Fixation& f, ImageDims dims) {
  return {f.x() * dims.width, f.y() * dims.height, f.t_ms(), f.duration_ms()};
}

}  // namespace gazesweep
