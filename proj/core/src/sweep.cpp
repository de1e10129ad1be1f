#include "gazesweep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <utility>

#include "gazesweep/error.hpp"
#include "gazesweep/format.hpp"
#include "gazesweep/image.hpp"
#include "gazesweep/ior.hpp"

namespace gazesweep {

SweepAxis parse_sweep_axis(std::string_view s) {
  if (s == "size") return SweepAxis::Size;
  if (s == "aspect") return SweepAxis::Aspect;
  if (s == "gamma") return SweepAxis::Gamma;
  if (s == "radius") return SweepAxis::Radius;
  if (s == "nfix" || s == "n_fixations") return SweepAxis::NFixations;
  if (s == "ior_compare") return SweepAxis::IorCompare;
  throw ValidationError("unknown sweep axis '" + std::string(s) + "'");
}

std::string_view to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::Size: return "size";
    case SweepAxis::Aspect: return "aspect";
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::Radius: return "radius";
    case SweepAxis::NFixations: return "nfix";
    case SweepAxis::IorCompare: return "ior_compare";
  }
  return "?";
}

ViewerReduction parse_viewer_reduction(std::string_view s) {
  if (s == "mean") return ViewerReduction::Mean;
  if (s == "min") return ViewerReduction::Min;
  throw ValidationError("unknown viewer reduction '" + std::string(s) + "'");
}

std::string_view to_string(ViewerReduction r) noexcept {
  return r == ViewerReduction::Mean ? "mean" : "min";
}

void SweepGrid::validate() const {
  auto non_empty = [](bool empty, const char* name) {
    if (empty) throw ValidationError(std::string("sweep grid list '") + name + "' is empty");
  };
  non_empty(image_sides.empty(), "image_sides");
  non_empty(widths_for_aspect.empty(), "widths_for_aspect");
  non_empty(gammas.empty(), "gammas");
  non_empty(radii.empty(), "radii");
  non_empty(fixation_counts.empty(), "fixation_counts");
  non_empty(decay_kinds.empty(), "decay_kinds");
  for (int s : image_sides)
    if (s < GuiImage::kMinSide) throw ValidationError("image sides must be >= 8");
  for (int w : widths_for_aspect)
    if (w < GuiImage::kMinSide) throw ValidationError("aspect widths must be >= 8");
  if (aspect_height < GuiImage::kMinSide) throw ValidationError("aspect height must be >= 8");
  for (double g : gammas)
    if (!(g > 0.0 && g < 1.0)) throw ValidationError("gammas must lie in (0,1)");
  for (double r : radii)
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("radii must lie in (0,1)");
  for (int n : fixation_counts)
    if (n < 1) throw ValidationError("fixation counts must be positive");
}

std::vector<ConfigSpec> expand_axis(const SweepGrid& grid, SweepAxis axis,
                                    const RolloutConfig& defaults) {
  grid.validate();
  defaults.validate();
  const std::string axis_name(to_string(axis));
  std::vector<ConfigSpec> out;
  auto base = [&](std::string id) {
    ConfigSpec s;
    s.id = std::move(id);
    s.rollout = defaults;
    s.width = defaults.image_side;
    s.height = defaults.image_side;
    return s;
  };
  switch (axis) {
    case SweepAxis::Size:
      for (int side : grid.image_sides) {
        ConfigSpec s = base("size=" + std::to_string(side));
        s.rollout.image_side = side;
        s.width = s.height = side;
        out.push_back(std::move(s));
      }
      break;
    case SweepAxis::Aspect:
      // Height stays fixed, so the masking radius is measured against it.
      for (int w : grid.widths_for_aspect) {
        ConfigSpec s =
            base("aspect=" + std::to_string(w) + "x" + std::to_string(grid.aspect_height));
        s.rollout.image_side = grid.aspect_height;
        s.width = w;
        s.height = grid.aspect_height;
        out.push_back(std::move(s));
      }
      break;
    case SweepAxis::Gamma:
      for (double g : grid.gammas) {
        ConfigSpec s = base("gamma=" + format_number(g));
        s.rollout.decay = DecayKind::ExponentialGamma;
        s.rollout.gamma = g;
        out.push_back(std::move(s));
      }
      break;
    case SweepAxis::Radius:
      for (double r : grid.radii) {
        ConfigSpec s = base("radius=" + format_number(r));
        s.rollout.mask_radius_frac = r;
        out.push_back(std::move(s));
      }
      break;
    case SweepAxis::NFixations:
      for (int n : grid.fixation_counts) {
        ConfigSpec s = base("nfix=" + std::to_string(n));
        s.rollout.n_fixations = n;
        out.push_back(std::move(s));
      }
      break;
    case SweepAxis::IorCompare:
      for (DecayKind k : grid.decay_kinds) {
        ConfigSpec s = base("ior=" + std::string(to_string(k)));
        s.rollout.decay = k;
        out.push_back(std::move(s));
      }
      break;
  }
  std::map<std::string, int> ids;
  for (const ConfigSpec& s : out)
    if (++ids[s.id] > 1) throw ValidationError("duplicate sweep value '" + s.id + "'");
  return out;
}

SaliencyMap IttiKochSource::compute(const ManifestEntry& entry, int width, int height) const {
  return itti_koch_saliency(resize(load_image(entry.image_path), width, height), params_);
}

SaliencyMap DensityFileSource::compute(const ManifestEntry& entry, int width, int height) const {
  if (!entry.density_map_path)
    throw ValidationError("entry '" + entry.image_id + "' has no density_map_path");
  return load_density_map(*entry.density_map_path, width, height, true);
}

std::unique_ptr<SaliencySource> make_saliency_source(std::string_view backend) {
  if (backend == "ittikoch") return std::make_unique<IttiKochSource>();
  if (backend == "file") return std::make_unique<DensityFileSource>();
  throw ValidationError("unknown saliency backend '" + std::string(backend) + "'");
}

int ConfigDiagnostics::succeeded() const noexcept {
  return static_cast<int>(
      std::count_if(images.begin(), images.end(), [](const ImageOutcome& o) { return o.ok; }));
}

int ConfigDiagnostics::failed() const noexcept {
  return static_cast<int>(images.size()) - succeeded();
}

bool SweepResult::partial_failure() const noexcept {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ConfigDiagnostics& d) { return d.failed() > 0; });
}

namespace {

ImageOutcome failed_outcome(const ManifestEntry& entry, std::string message) {
  ImageOutcome o;
  o.image_id = entry.image_id;
  o.gui_type = entry.gui_type;
  o.ok = false;
  o.message = std::move(message);
  return o;
}

ImageOutcome score_image(const ManifestEntry& entry, const LoadedScanpaths& truth,
                         const SaliencyMap& fresh, const ConfigSpec& spec,
                         const EvalOptions& opts) {
  const RolloutTrace trace = rollout_with_trace(fresh, spec.rollout, entry.image_id);
  ImageOutcome o;
  o.image_id = entry.image_id;
  o.gui_type = entry.gui_type;
  o.ok = true;
  o.fallback_steps = trace.fallback_steps;
  o.clamped = truth.clamped;
  o.n_viewers = static_cast<int>(truth.scanpaths.size());
  if (trace.fallback_steps > 0)
    o.message = "rollout fell back to the unsuppressed map on " +
                std::to_string(trace.fallback_steps) + " step(s)";

  std::array<std::vector<double>, 4> per_viewer;
  for (const Scanpath& gt : truth.scanpaths) {
    const MetricReport r = compare(trace.scanpath, gt, opts.recurrence, opts.coord_scale);
    per_viewer[0].push_back(r.dtw);
    per_viewer[1].push_back(r.eyenalysis);
    per_viewer[2].push_back(r.determinism_pct);
    per_viewer[3].push_back(r.laminarity_pct);
  }
  for (std::size_t k = 0; k < per_viewer.size(); ++k) {
    const auto& v = per_viewer[k];
    o.metrics[k] = opts.reduction == ViewerReduction::Mean ? summarize(v).mean
                                                           : *std::min_element(v.begin(), v.end());
  }
  return o;
}

LoadedScanpaths load_truth(const ManifestEntry& entry, const DatasetManifest& manifest) {
  std::optional<ImageDims> fallback;
  if (!entry.source_dims) fallback = probe_image_dims(entry.image_path);
  return load_ground_truth(entry, manifest, fallback);
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

int group_rank(const std::string& g) {
  for (std::size_t k = 0; k < std::size(kAllGuiTypes); ++k)
    if (g == to_string(kAllGuiTypes[k])) return static_cast<int>(k);
  return static_cast<int>(std::size(kAllGuiTypes));  // "all" last
}

std::vector<SweepRow> summarize_config(const ConfigDiagnostics& diag) {
  std::vector<SweepRow> rows;
  for (std::size_t m = 0; m < std::size(kMetricNames); ++m) {
    std::vector<GroupedValue> values;
    for (const ImageOutcome& o : diag.images)
      if (o.ok) values.push_back({diag.config, std::string(to_string(o.gui_type)), o.metrics[m]});
    for (const AggregateRow& a : aggregate(values))
      rows.push_back({diag.config, a.group, kMetricNames[m], a.summary.mean, a.summary.sd,
                      a.summary.n});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return group_rank(a.gui_type) < group_rank(b.gui_type);
  });
  return rows;
}

}  // namespace

ImageOutcome evaluate_image(const ManifestEntry& entry, const DatasetManifest& manifest,
                            const SaliencyMap& fresh, const ConfigSpec& spec,
                            const EvalOptions& opts) {
  try {
    return score_image(entry, load_truth(entry, manifest), fresh, spec, opts);
  } catch (const std::exception& e) {
    return failed_outcome(entry, e.what());
  }
}

SweepResult run_configs(const DatasetManifest& manifest, const std::vector<ConfigSpec>& configs,
                        const SaliencySource& source, const EvalOptions& opts,
                        std::string axis_label) {
  opts.recurrence.validate();
  if (configs.empty()) throw ValidationError("no configurations to evaluate");
  for (const ConfigSpec& c : configs) c.rollout.validate();

  std::vector<const ManifestEntry*> selected;
  for (const ManifestEntry& e : manifest.entries)
    if (!opts.partition || e.partition == *opts.partition) selected.push_back(&e);
  if (selected.empty()) throw ValidationError("no manifest entries match the partition filter");

  // Configurations sharing a resize target share one saliency map per image.
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_size;
  for (std::size_t c = 0; c < configs.size(); ++c)
    by_size[{configs[c].width, configs[c].height}].push_back(c);
  std::vector<std::pair<std::pair<int, int>, std::vector<std::size_t>>> groups(by_size.begin(),
                                                                              by_size.end());

  std::vector<std::vector<ImageOutcome>> outcomes(configs.size(),
                                                  std::vector<ImageOutcome>(selected.size()));
  parallel_for(groups.size() * selected.size(), opts.threads, [&](std::size_t item) {
    const auto& [size, members] = groups[item / selected.size()];
    const std::size_t img = item % selected.size();
    const ManifestEntry& entry = *selected[img];
    try {
      const LoadedScanpaths truth = load_truth(entry, manifest);
      const SaliencyMap fresh = source.compute(entry, size.first, size.second);
      for (std::size_t c : members) {
        try {
          outcomes[c][img] = score_image(entry, truth, fresh, configs[c], opts);
        } catch (const std::exception& e) {
          outcomes[c][img] = failed_outcome(entry, e.what());
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t c : members) outcomes[c][img] = failed_outcome(entry, e.what());
    }
  });

  SweepResult result;
  result.axis = std::move(axis_label);
  result.configs = configs;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    ConfigDiagnostics diag{configs[c].id, std::move(outcomes[c])};
    if (diag.succeeded() == 0) {
      std::string why = diag.images.empty() ? std::string("no images") : diag.images.front().message;
      throw ValidationError("configuration '" + configs[c].id +
                            "' produced no successful images (first failure: " + why + ")");
    }
    auto rows = summarize_config(diag);
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    result.diagnostics.push_back(std::move(diag));
  }
  return result;
}

SweepResult evaluate_config(const DatasetManifest& manifest, const ConfigSpec& spec,
                            const SaliencySource& source, const EvalOptions& opts) {
  return run_configs(manifest, {spec}, source, opts, "single");
}

SweepResult run_sweep(const DatasetManifest& manifest, const SweepGrid& grid, SweepAxis axis,
                      const RolloutConfig& defaults, const SaliencySource& source,
                      const EvalOptions& opts) {
  SweepResult result = run_configs(manifest, expand_axis(grid, axis, defaults), source, opts,
                                   std::string(to_string(axis)));
  if (axis != SweepAxis::IorCompare) return result;

  const ConfigDiagnostics* baseline = nullptr;
  const ConfigDiagnostics* improved = nullptr;
  for (std::size_t c = 0; c < result.configs.size(); ++c) {
    if (result.configs[c].rollout.decay == DecayKind::BaselineLinear) baseline = &result.diagnostics[c];
    if (result.configs[c].rollout.decay == DecayKind::ExponentialGamma) improved = &result.diagnostics[c];
  }
  if (!baseline || !improved) return result;

  for (std::size_t m = 0; m < std::size(kMetricNames); ++m) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < baseline->images.size(); ++i) {
      const ImageOutcome& a = baseline->images[i];
      const ImageOutcome& b = improved->images[i];
      if (!a.ok || !b.ok) continue;
      x.push_back(a.metrics[m]);
      y.push_back(b.metrics[m]);
    }
    try {
      result.tests.push_back(
          {baseline->config, improved->config, kMetricNames[m], paired_t_test(x, y)});
    } catch (const ValidationError&) {
      // Too few pairs or identical per-image values: no test for this metric.
    }
  }
  return result;
}

}  // namespace gazesweep
