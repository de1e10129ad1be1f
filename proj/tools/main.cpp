// gazesweep command-line front end.
//
// Exit codes: 0 success, 1 validation/usage error, 2 partial failure (some
// images failed; diagnostics are written next to the results).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gazesweep/dataset.hpp"
#include "gazesweep/error.hpp"
#include "gazesweep/fixture.hpp"
#include "gazesweep/format.hpp"
#include "gazesweep/image.hpp"
#include "gazesweep/ior.hpp"
#include "gazesweep/metrics.hpp"
#include "gazesweep/report.hpp"
#include "gazesweep/saliency.hpp"
#include "gazesweep/stats.hpp"
#include "gazesweep/sweep.hpp"
#include "gazesweep/version.hpp"
#include "gazesweep/visits.hpp"

namespace fs = std::filesystem;
using namespace gazesweep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPartial = 2;

// Nested JSON objects map to subcommands: {"sweep": {"axis": "gamma"}}.
// Keys are long flag names without the dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    walk(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_number()) return v.dump();
    throw ParseError("config values must be strings, numbers, booleans or lists of those");
  }

  static void walk(const nlohmann::json& obj, const std::vector<std::string>& parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        walk(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(value));
      items.push_back(std::move(item));
    }
  }
};

struct RolloutArgs {
  int n = 10;
  std::string decay = "gamma";
  double gamma = 0.1;
  double radius = 0.1;
  int side = 0;

  RolloutConfig config(int fallback_side) const {
    RolloutConfig c;
    c.n_fixations = n;
    c.decay = parse_decay_kind(decay);
    c.gamma = gamma;
    c.mask_radius_frac = radius;
    c.image_side = side > 0 ? side : fallback_side;
    c.validate();
    return c;
  }
};

void add_rollout_options(CLI::App* cmd, RolloutArgs& a, bool with_decay) {
  cmd->add_option("--n", a.n, "Fixations to predict")->capture_default_str();
  if (with_decay)
    cmd->add_option("--decay", a.decay, "IOR decay: linear, gamma or full")->capture_default_str();
  cmd->add_option("--gamma", a.gamma, "Exponential decay base in (0,1)")->capture_default_str();
  cmd->add_option("--radius", a.radius, "Masking radius as a fraction of the image side")
      ->capture_default_str();
}

ImageDims parse_dims(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x != std::string::npos) {
      std::size_t used = 0;
      const int w = std::stoi(s.substr(0, x), &used);
      if (used == x) {
        const std::string rest = s.substr(x + 1);
        const int h = std::stoi(rest, &used);
        if (used == rest.size() && w > 0 && h > 0) return {w, h};
      }
    }
  } catch (const std::exception&) {
  }
  throw ValidationError("dimensions must look like WIDTHxHEIGHT, got '" + s + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------- saliency

struct SaliencyArgs {
  std::string input;
  std::string backend = "ittikoch";
  std::string out;
  int side = 0;
  int width = 0;
  int height = 0;
  bool allow_resize = false;
};

int cmd_saliency(const SaliencyArgs& a) {
  int w = a.width;
  int h = a.height;
  if (a.side > 0) w = h = a.side;
  if ((w > 0) != (h > 0)) throw ValidationError("--width and --height go together");

  std::optional<SaliencyMap> map;
  if (a.backend == "ittikoch") {
    const GuiImage img = load_image(a.input);
    map = itti_koch_saliency(w > 0 ? resize(img, w, h) : resize(img, 225, 225));
  } else if (a.backend == "file") {
    map = w > 0 ? load_density_map(a.input, w, h, a.allow_resize) : load_density_map(a.input);
  } else {
    throw ValidationError("unknown saliency backend '" + a.backend + "'");
  }

  if (fs::path(a.out).extension() == ".png") {
    const Grid& g = map->grid();
    const double peak = g.max();
    Gray16Image png{g.width(), g.height(), {}};
    png.values.reserve(g.size());
    for (double v : g.values())
      png.values.push_back(static_cast<std::uint16_t>(std::lround(v / peak * 65535.0)));
    save_png_gray16(png, a.out);
  } else {
    save_density_map(map->grid(), a.out);
  }
  std::cerr << "saliency " << map->width() << "x" << map->height() << " -> " << a.out << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- rollout

struct RolloutCmdArgs {
  std::string map;
  std::string out;
  std::string image_id;
  RolloutArgs rollout;
};

int cmd_rollout(const RolloutCmdArgs& a) {
  const int side = a.rollout.side;
  const SaliencyMap map = side > 0 ? load_density_map(a.map, side, side, true) : load_density_map(a.map);
  const RolloutConfig cfg = a.rollout.config(map.height());
  const RolloutTrace trace = rollout_with_trace(map, cfg, a.image_id);
  if (trace.fallback_steps > 0)
    std::cerr << "warning: masking covered the whole map on " << trace.fallback_steps
              << " step(s); fell back to the unsuppressed map\n";
  const Scanpath sp(std::vector<Fixation>(trace.scanpath.fixations().begin(),
                                          trace.scanpath.fixations().end()),
                    a.image_id, "model");
  std::ostringstream csv;
  write_scanpath_csv(csv, std::span<const Scanpath>(&sp, 1), ImageDims{map.width(), map.height()});
  write_text(a.out, csv.str());
  return kExitOk;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string pred;
  std::vector<std::string> truth;
  double rho = 0.1;
  int min_line = 2;
  double coord_scale = 1.0;
  std::string dims;
  std::string reduction = "mean";
};

std::vector<Scanpath> read_normalized(const std::string& path, const std::optional<ImageDims>& fallback) {
  const ScanpathFile file = read_scanpath_csv(fs::path(path));
  const std::optional<ImageDims> dims = file.dims ? file.dims : fallback;
  if (!dims) throw ValidationError("'" + path + "' has no '# width= height=' line; pass --dims");
  std::vector<Scanpath> out;
  for (const RawScanpath& raw : file.viewers)
    out.push_back(validate_scanpath(raw.fixations, *dims, {}, raw.viewer_id).scanpath);
  if (out.empty()) throw ValidationError("'" + path + "' holds no fixations");
  return out;
}

int cmd_eval(const EvalArgs& a) {
  RecurrenceConfig rec{a.rho, a.min_line};
  rec.validate();
  const ViewerReduction reduction = parse_viewer_reduction(a.reduction);
  std::optional<ImageDims> dims;
  if (!a.dims.empty()) dims = parse_dims(a.dims);

  const std::vector<Scanpath> pred = read_normalized(a.pred, dims);
  if (pred.size() != 1)
    throw ValidationError("prediction file must hold exactly one scanpath, found " +
                          std::to_string(pred.size()));

  std::ostringstream out;
  out << "truth_file,viewer_id,dtw,eyenalysis,determinism,laminarity\n";
  std::array<std::vector<double>, 4> cols;
  for (const std::string& path : a.truth) {
    for (const Scanpath& gt : read_normalized(path, dims)) {
      const MetricReport r = compare(pred.front(), gt, rec, a.coord_scale);
      const std::array<double, 4> v{r.dtw, r.eyenalysis, r.determinism_pct, r.laminarity_pct};
      out << path << ',' << gt.viewer_id().value_or("") ;
      for (std::size_t k = 0; k < 4; ++k) {
        out << ',' << format_number(v[k]);
        cols[k].push_back(v[k]);
      }
      out << '\n';
    }
  }
  out << to_string(reduction) << ",";
  for (const auto& c : cols)
    out << ',' << format_number(reduction == ViewerReduction::Mean
                                    ? summarize(c).mean
                                    : *std::min_element(c.begin(), c.end()));
  out << '\n';
  std::cout << out.str();
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string manifest;
  std::string axis;
  std::string out = "sweep_out";
  std::string format = "csv";
  int threads = 1;
  double rho = 0.1;
  int min_line = 2;
  std::string reduction = "mean";
  std::string backend = "ittikoch";
  double coord_scale = 1.0;
  std::string partition;
  RolloutArgs rollout;
  SweepGrid grid;
  std::vector<std::string> decay_kinds;
};

void report_failures(const SweepResult& r) {
  for (const ConfigDiagnostics& d : r.diagnostics)
    for (const ImageOutcome& o : d.images)
      if (!o.ok) std::cerr << "  " << d.config << " / " << o.image_id << ": " << o.message << "\n";
}

int cmd_sweep(SweepArgs a) {
  const DatasetManifest manifest = load_manifest(a.manifest);
  const SweepAxis axis = parse_sweep_axis(a.axis);
  if (!a.decay_kinds.empty()) {
    a.grid.decay_kinds.clear();
    for (const auto& k : a.decay_kinds) a.grid.decay_kinds.push_back(parse_decay_kind(k));
  }
  RolloutArgs defaults_args = a.rollout;
  defaults_args.decay = "gamma";
  const RolloutConfig defaults = defaults_args.config(225);

  EvalOptions opts;
  opts.recurrence = {a.rho, a.min_line};
  opts.reduction = parse_viewer_reduction(a.reduction);
  opts.coord_scale = a.coord_scale;
  opts.threads = a.threads;
  if (!a.partition.empty()) opts.partition = parse_partition(a.partition);
  const ReportFormat format = parse_report_format(a.format);
  const auto source = make_saliency_source(a.backend);

  const SweepResult result = run_sweep(manifest, a.grid, axis, defaults, *source, opts);
  const RunMetadata meta{a.backend, defaults, opts, a.manifest};
  const auto written = emit(result, meta, format, a.out);

  std::cerr << "axis " << result.axis << ": " << result.configs.size() << " configuration(s)";
  if (!result.diagnostics.empty())
    std::cerr << ", " << result.diagnostics.front().images.size() << " image(s)";
  std::cerr << "\n";
  for (const auto& p : written) std::cerr << "wrote " << p.string() << "\n";
  if (result.partial_failure()) {
    std::cerr << "some images failed:\n";
    report_failures(result);
    return kExitPartial;
  }
  return kExitOk;
}

// ---------------------------------------------------------- analyze visits

struct VisitArgs {
  std::string manifest;
  std::string boxes;
  std::string backend = "ittikoch";
  std::string partition;
  std::string out;
  RolloutArgs rollout;
};

int cmd_visits(const VisitArgs& a) {
  const DatasetManifest manifest = load_manifest(a.manifest);
  const auto source = make_saliency_source(a.backend);
  std::optional<Partition> partition;
  if (!a.partition.empty()) partition = parse_partition(a.partition);

  RolloutArgs base = a.rollout;
  base.decay = "linear";
  RolloutArgs improved = a.rollout;
  improved.decay = "gamma";
  const RolloutConfig cfg_base = base.config(225);
  const RolloutConfig cfg_improved = improved.config(225);
  const int side = cfg_base.image_side;

  const std::vector<std::string> sources{"ground_truth", "baseline", "improved"};
  std::map<std::string, std::vector<VisitStats>> per_source;
  int failures = 0;
  int processed = 0;
  for (const ManifestEntry& e : manifest.entries) {
    if (partition && e.partition != *partition) continue;
    ++processed;
    try {
      fs::path box_path;
      if (!a.boxes.empty())
        box_path = fs::path(a.boxes) / (e.image_id + ".json");
      else if (e.element_box_path)
        box_path = *e.element_box_path;
      else
        throw ValidationError("no element boxes");
      const std::vector<ElementBox> boxes = read_element_boxes(box_path);

      std::optional<ImageDims> fallback;
      if (!e.source_dims) fallback = probe_image_dims(e.image_path);
      const LoadedScanpaths truth = load_ground_truth(e, manifest, fallback);
      const SaliencyMap map = source->compute(e, side, side);

      std::map<std::string, std::vector<VisitStats>> local;
      for (const Scanpath& sp : truth.scanpaths)
        local["ground_truth"].push_back(visit_revisit(map_fixations_to_elements(sp, boxes), boxes));
      local["baseline"].push_back(
          visit_revisit(map_fixations_to_elements(rollout(map, cfg_base), boxes), boxes));
      local["improved"].push_back(
          visit_revisit(map_fixations_to_elements(rollout(map, cfg_improved), boxes), boxes));
      for (auto& [k, v] : local) per_source[k].insert(per_source[k].end(), v.begin(), v.end());
    } catch (const std::exception& ex) {
      ++failures;
      std::cerr << "  " << e.image_id << ": " << ex.what() << "\n";
    }
  }
  if (processed == 0) throw ValidationError("no manifest entries match the partition filter");
  if (failures == processed) throw ValidationError("visit analysis failed for every image");

  std::ostringstream out;
  out << "source,category,total_elements,visited,revisited,visited_ratio,revisited_ratio\n";
  for (const std::string& s : sources) {
    const VisitStats pooled = pool_visits(per_source[s]);
    for (ElementCategory c : kAllElementCategories) {
      const CategoryVisits& v = pooled[c];
      out << s << ',' << to_string(c) << ',' << v.total_elements << ',' << v.visited_count << ','
          << v.revisited_count << ',' << format_number(v.visited_ratio) << ','
          << format_number(v.revisited_ratio) << '\n';
    }
  }
  write_text(a.out, out.str());
  return failures > 0 ? kExitPartial : kExitOk;
}

// ----------------------------------------------------------------- fixture

struct FixtureArgs {
  std::string out = "fixture";
  int count = 12;
  std::uint32_t seed = kFixtureSeed;
};

int cmd_fixture(const FixtureArgs& a) {
  std::cout << write_fixture(a.out, a.count, a.seed).string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scanpath prediction from saliency maps with inhibition of return"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags; flags win");
  app.set_version_flag("--version", std::string(kVersion));

  SaliencyArgs sal;
  auto* c_sal = app.add_subcommand("saliency", "Compute or import a saliency map");
  c_sal->add_option("image", sal.input, "Screenshot (ittikoch) or density map (file)")->required();
  c_sal->add_option("--backend", sal.backend, "ittikoch or file")->capture_default_str();
  c_sal->add_option("--out", sal.out, "Output map (.txt grid or 16-bit .png)")->required();
  c_sal->add_option("--side", sal.side, "Square output side in pixels");
  c_sal->add_option("--width", sal.width, "Output width");
  c_sal->add_option("--height", sal.height, "Output height");
  c_sal->add_flag("--allow-resize", sal.allow_resize, "Resize file maps to the requested size");

  RolloutCmdArgs ro;
  auto* c_ro = app.add_subcommand("rollout", "Predict a scanpath from a saliency map");
  c_ro->add_option("map", ro.map, "Saliency map (.txt grid or 16-bit .png)")->required();
  add_rollout_options(c_ro, ro.rollout, true);
  c_ro->add_option("--side", ro.rollout.side, "Resize the map to SIDE x SIDE first");
  c_ro->add_option("--out", ro.out, "Scanpath CSV (default stdout)");
  c_ro->add_option("--id", ro.image_id, "Image id recorded with the scanpath");

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Score one predicted scanpath against ground truth");
  c_ev->add_option("pred", ev.pred, "Predicted scanpath CSV")->required();
  c_ev->add_option("truth", ev.truth, "Ground-truth scanpath CSV(s)")->required();
  c_ev->add_option("--rho", ev.rho, "Recurrence radius (normalized)")->capture_default_str();
  c_ev->add_option("--min-line", ev.min_line, "Minimum DET/LAM line length")->capture_default_str();
  c_ev->add_option("--coord-scale", ev.coord_scale, "Scale applied to DTW and Eyenalysis")
      ->capture_default_str();
  c_ev->add_option("--dims", ev.dims, "WIDTHxHEIGHT for CSVs without a dims line");
  c_ev->add_option("--reduction", ev.reduction, "mean or min over viewers")->capture_default_str();

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "One-axis parameter sweep over a dataset");
  c_sw->add_option("--manifest", sw.manifest, "Dataset manifest JSON")->required();
  c_sw->add_option("--axis", sw.axis, "size, aspect, gamma, radius, nfix or ior_compare")->required();
  c_sw->add_option("--out", sw.out, "Output directory")->capture_default_str();
  c_sw->add_option("--format", sw.format, "csv or json")->capture_default_str();
  c_sw->add_option("--threads", sw.threads, "Worker threads (0 = all cores)")->capture_default_str();
  c_sw->add_option("--rho", sw.rho, "Recurrence radius (normalized)")->capture_default_str();
  c_sw->add_option("--min-line", sw.min_line, "Minimum DET/LAM line length")->capture_default_str();
  c_sw->add_option("--reduction", sw.reduction, "mean or min over viewers")->capture_default_str();
  c_sw->add_option("--backend", sw.backend, "ittikoch or file")->capture_default_str();
  c_sw->add_option("--coord-scale", sw.coord_scale, "Scale applied to DTW and Eyenalysis")
      ->capture_default_str();
  c_sw->add_option("--partition", sw.partition, "Only evaluate train or test entries");
  add_rollout_options(c_sw, sw.rollout, false);
  c_sw->add_option("--side", sw.rollout.side, "Default square image side")->default_str("225");
  c_sw->add_option("--sides", sw.grid.image_sides, "Size axis values")->delimiter(',');
  c_sw->add_option("--widths", sw.grid.widths_for_aspect, "Aspect axis widths")->delimiter(',');
  c_sw->add_option("--aspect-height", sw.grid.aspect_height, "Aspect axis height");
  c_sw->add_option("--gammas", sw.grid.gammas, "Gamma axis values")->delimiter(',');
  c_sw->add_option("--radii", sw.grid.radii, "Radius axis values")->delimiter(',');
  c_sw->add_option("--nfix-values", sw.grid.fixation_counts, "Fixation-count axis values")
      ->delimiter(',');
  c_sw->add_option("--decay-kinds", sw.decay_kinds, "ior_compare decay kinds")->delimiter(',');

  VisitArgs vi;
  auto* c_an = app.add_subcommand("analyze", "Dataset analyses");
  c_an->require_subcommand(1);
  auto* c_vi = c_an->add_subcommand("visits", "Visited/revisited element ratios per category");
  c_vi->add_option("--manifest", vi.manifest, "Dataset manifest JSON")->required();
  c_vi->add_option("--boxes", vi.boxes, "Directory of <image_id>.json element boxes");
  c_vi->add_option("--backend", vi.backend, "ittikoch or file")->capture_default_str();
  c_vi->add_option("--partition", vi.partition, "Only analyze train or test entries");
  c_vi->add_option("--out", vi.out, "Output CSV (default stdout)");
  add_rollout_options(c_vi, vi.rollout, false);
  c_vi->add_option("--side", vi.rollout.side, "Square image side")->default_str("225");

  FixtureArgs fx;
  auto* c_fx = app.add_subcommand("fixture", "Write the synthetic fixture dataset");
  c_fx->add_option("--out", fx.out, "Output directory")->capture_default_str();
  c_fx->add_option("--count", fx.count, "Number of images")->capture_default_str();
  c_fx->add_option("--seed", fx.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (c_sal->parsed()) return cmd_saliency(sal);
    if (c_ro->parsed()) return cmd_rollout(ro);
    if (c_ev->parsed()) return cmd_eval(ev);
    if (c_sw->parsed()) return cmd_sweep(sw);
    if (c_vi->parsed()) return cmd_visits(vi);
    if (c_fx->parsed()) return cmd_fixture(fx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
