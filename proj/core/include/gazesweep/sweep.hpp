#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazesweep/dataset.hpp"
#include "gazesweep/metrics.hpp"
#include "gazesweep/saliency.hpp"
#include "gazesweep/stats.hpp"
#include "gazesweep/types.hpp"

namespace gazesweep {

enum class SweepAxis { Size, Aspect, Gamma, Radius, NFixations, IorCompare };

SweepAxis parse_sweep_axis(std::string_view s);
std::string_view to_string(SweepAxis a) noexcept;

/// Values visited along each design axis; only the swept axis is read.
struct SweepGrid {
  std::vector<int> image_sides{128, 225, 512};
  std::vector<int> widths_for_aspect{128, 225, 512};
  int aspect_height = 225;
  std::vector<double> gammas{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> radii{0.05, 0.1, 0.2, 0.3};
  std::vector<int> fixation_counts{5, 6, 7, 8, 9, 10};
  std::vector<DecayKind> decay_kinds{DecayKind::BaselineLinear, DecayKind::ExponentialGamma};

  void validate() const;
};

/// One point of a sweep: the rollout parameters plus the resize target.
struct ConfigSpec {
  std::string id;
  RolloutConfig rollout;
  int width = 225;
  int height = 225;

  friend bool operator==(const ConfigSpec&, const ConfigSpec&) = default;
};

/// Configurations a one-axis sweep visits; every parameter other than the
/// axis stays at `defaults`.
std::vector<ConfigSpec> expand_axis(const SweepGrid& grid, SweepAxis axis,
                                    const RolloutConfig& defaults);

/// Produces the fresh saliency map of a manifest entry at a given size.
class SaliencySource {
 public:
  virtual ~SaliencySource() = default;
  virtual SaliencyMap compute(const ManifestEntry& entry, int width, int height) const = 0;
  virtual std::string name() const = 0;
};

/// Decode the screenshot, resize (aspect not preserved) and run the
/// center-surround model.
class IttiKochSource final : public SaliencySource {
 public:
  explicit IttiKochSource(IttiKochParams params = {}) : params_(std::move(params)) {}
  SaliencyMap compute(const ManifestEntry& entry, int width, int height) const override;
  std::string name() const override { return "ittikoch"; }

 private:
  IttiKochParams params_;
};

/// Load the entry's precomputed density map and bilinearly resize it.
class DensityFileSource final : public SaliencySource {
 public:
  SaliencyMap compute(const ManifestEntry& entry, int width, int height) const override;
  std::string name() const override { return "file"; }
};

std::unique_ptr<SaliencySource> make_saliency_source(std::string_view backend);

/// How one predicted scanpath is reduced against the many viewers of an image.
enum class ViewerReduction { Mean, Min };

ViewerReduction parse_viewer_reduction(std::string_view s);
std::string_view to_string(ViewerReduction r) noexcept;

struct EvalOptions {
  RecurrenceConfig recurrence;
  ViewerReduction reduction = ViewerReduction::Mean;
  double coord_scale = 1.0;
  /// Worker threads; 0 = hardware concurrency.
  int threads = 1;
  std::optional<Partition> partition;
};

inline constexpr const char* kMetricNames[] = {"dtw", "eyenalysis", "determinism", "laminarity"};

struct ImageOutcome {
  std::string image_id;
  GuiType gui_type = GuiType::Web;
  bool ok = false;
  std::string message;
  int fallback_steps = 0;
  int clamped = 0;
  int n_viewers = 0;
  /// Per-image metric after viewer reduction, indexed like kMetricNames.
  std::array<double, 4> metrics{};

  friend bool operator==(const ImageOutcome&, const ImageOutcome&) = default;
};

struct SweepRow {
  std::string config;
  std::string gui_type;  ///< GUI type name or "all"
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct PairedRecord {
  std::string config_a;
  std::string config_b;
  std::string metric;
  PairedTestResult test;

  friend bool operator==(const PairedRecord&, const PairedRecord&) = default;
};

struct ConfigDiagnostics {
  std::string config;
  std::vector<ImageOutcome> images;  ///< manifest order

  int succeeded() const noexcept;
  int failed() const noexcept;

  friend bool operator==(const ConfigDiagnostics&, const ConfigDiagnostics&) = default;
};

struct SweepResult {
  std::string axis;
  std::vector<ConfigSpec> configs;
  std::vector<SweepRow> rows;          ///< sorted by (config order, gui_type, metric order)
  std::vector<PairedRecord> tests;
  std::vector<ConfigDiagnostics> diagnostics;

  bool partial_failure() const noexcept;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Predicted-vs-truth metrics for one image under one configuration.
ImageOutcome evaluate_image(const ManifestEntry& entry, const DatasetManifest& manifest,
                            const SaliencyMap& fresh, const ConfigSpec& spec,
                            const EvalOptions& opts);

/// resize -> saliency -> rollout -> metrics for every selected image, then
/// mean +- SD rows per GUI type and "all". Per-image failures are recorded,
/// not thrown; a configuration with zero successful images throws.
SweepResult evaluate_config(const DatasetManifest& manifest, const ConfigSpec& spec,
                            const SaliencySource& source, const EvalOptions& opts);

/// One-axis-at-a-time sweep. For IorCompare the two decay kinds run at the
/// defaults and a paired t-test (difference = baseline - improved) is
/// attached per metric over per-image values.
SweepResult run_sweep(const DatasetManifest& manifest, const SweepGrid& grid, SweepAxis axis,
                      const RolloutConfig& defaults, const SaliencySource& source,
                      const EvalOptions& opts);

/// Evaluate explicit configurations (any mix); rows and diagnostics follow
/// `configs` order.
SweepResult run_configs(const DatasetManifest& manifest, const std::vector<ConfigSpec>& configs,
                        const SaliencySource& source, const EvalOptions& opts,
                        std::string axis_label = "custom");

}  // namespace gazesweep
