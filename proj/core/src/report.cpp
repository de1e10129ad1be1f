#include "gazesweep/report.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gazesweep/error.hpp"
#include "gazesweep/format.hpp"
#include "gazesweep/version.hpp"

namespace gazesweep {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ValidationError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

namespace {

// Config ids may contain commas only if a caller builds them by hand.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

ordered_json rollout_json(const RolloutConfig& r) {
  return ordered_json{{"n_fixations", r.n_fixations},
                      {"decay", std::string(to_string(r.decay))},
                      {"gamma", r.gamma},
                      {"mask_radius_frac", r.mask_radius_frac},
                      {"image_side", r.image_side}};
}

RolloutConfig rollout_from_json(const ordered_json& j) {
  RolloutConfig r;
  r.n_fixations = j.at("n_fixations").get<int>();
  r.decay = parse_decay_kind(j.at("decay").get<std::string>());
  r.gamma = j.at("gamma").get<double>();
  r.mask_radius_frac = j.at("mask_radius_frac").get<double>();
  r.image_side = j.at("image_side").get<int>();
  return r;
}

ordered_json test_json(const PairedTestResult& t) {
  return ordered_json{{"t", t.t_statistic},
                      {"df", t.degrees_of_freedom},
                      {"p", t.p_value},
                      {"cohens_d", t.cohens_d},
                      {"n_pairs", t.n_pairs}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string results_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "config,gui_type,metric,mean,sd,n\n";
  for (const SweepRow& r : result.rows)
    out << csv_field(r.config) << ',' << r.gui_type << ',' << r.metric << ','
        << format_number(r.mean) << ',' << format_number(r.sd) << ',' << r.n << '\n';
  return out.str();
}

std::string paired_tests_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "config_a,config_b,metric,t,df,p,cohens_d,n_pairs\n";
  for (const PairedRecord& r : result.tests)
    out << csv_field(r.config_a) << ',' << csv_field(r.config_b) << ',' << r.metric << ','
        << format_number(r.test.t_statistic) << ',' << r.test.degrees_of_freedom << ','
        << format_number(r.test.p_value) << ',' << format_number(r.test.cohens_d) << ','
        << r.test.n_pairs << '\n';
  return out.str();
}

std::string results_json(const SweepResult& result) {
  ordered_json doc;
  doc["axis"] = result.axis;
  doc["configs"] = ordered_json::array();
  for (const ConfigSpec& c : result.configs)
    doc["configs"].push_back(ordered_json{{"id", c.id},
                                          {"width", c.width},
                                          {"height", c.height},
                                          {"rollout", rollout_json(c.rollout)}});
  doc["rows"] = ordered_json::array();
  for (const SweepRow& r : result.rows)
    doc["rows"].push_back(ordered_json{{"config", r.config},
                                       {"gui_type", r.gui_type},
                                       {"metric", r.metric},
                                       {"mean", r.mean},
                                       {"sd", r.sd},
                                       {"n", r.n}});
  doc["tests"] = ordered_json::array();
  for (const PairedRecord& r : result.tests)
    doc["tests"].push_back(ordered_json{{"config_a", r.config_a},
                                        {"config_b", r.config_b},
                                        {"metric", r.metric},
                                        {"result", test_json(r.test)}});
  doc["diagnostics"] = ordered_json::array();
  for (const ConfigDiagnostics& d : result.diagnostics) {
    ordered_json images = ordered_json::array();
    for (const ImageOutcome& o : d.images) {
      ordered_json metrics = ordered_json::object();
      for (std::size_t m = 0; m < std::size(kMetricNames); ++m) metrics[kMetricNames[m]] = o.metrics[m];
      images.push_back(ordered_json{{"image_id", o.image_id},
                                    {"gui_type", std::string(to_string(o.gui_type))},
                                    {"ok", o.ok},
                                    {"message", o.message},
                                    {"fallback_steps", o.fallback_steps},
                                    {"clamped", o.clamped},
                                    {"n_viewers", o.n_viewers},
                                    {"metrics", metrics}});
    }
    doc["diagnostics"].push_back(ordered_json{{"config", d.config},
                                              {"succeeded", d.succeeded()},
                                              {"failed", d.failed()},
                                              {"images", images}});
  }
  doc["partial_failure"] = result.partial_failure();
  return doc.dump(2) + "\n";
}

SweepResult sweep_result_from_json(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("results JSON: ") + e.what());
  }
  try {
    SweepResult r;
    r.axis = doc.at("axis").get<std::string>();
    for (const auto& c : doc.at("configs"))
      r.configs.push_back({c.at("id").get<std::string>(), rollout_from_json(c.at("rollout")),
                           c.at("width").get<int>(), c.at("height").get<int>()});
    for (const auto& row : doc.at("rows"))
      r.rows.push_back({row.at("config").get<std::string>(), row.at("gui_type").get<std::string>(),
                        row.at("metric").get<std::string>(), row.at("mean").get<double>(),
                        row.at("sd").get<double>(), row.at("n").get<int>()});
    for (const auto& t : doc.at("tests")) {
      const auto& res = t.at("result");
      PairedTestResult p{res.at("t").get<double>(), res.at("df").get<int>(),
                         res.at("p").get<double>(), res.at("cohens_d").get<double>(),
                         res.at("n_pairs").get<int>()};
      r.tests.push_back({t.at("config_a").get<std::string>(), t.at("config_b").get<std::string>(),
                         t.at("metric").get<std::string>(), p});
    }
    for (const auto& d : doc.at("diagnostics")) {
      ConfigDiagnostics diag;
      diag.config = d.at("config").get<std::string>();
      for (const auto& o : d.at("images")) {
        ImageOutcome io;
        io.image_id = o.at("image_id").get<std::string>();
        io.gui_type = parse_gui_type(o.at("gui_type").get<std::string>());
        io.ok = o.at("ok").get<bool>();
        io.message = o.at("message").get<std::string>();
        io.fallback_steps = o.at("fallback_steps").get<int>();
        io.clamped = o.at("clamped").get<int>();
        io.n_viewers = o.at("n_viewers").get<int>();
        const auto& metrics = o.at("metrics");
        for (std::size_t m = 0; m < std::size(kMetricNames); ++m)
          io.metrics[m] = metrics.at(kMetricNames[m]).get<double>();
        diag.images.push_back(std::move(io));
      }
      r.diagnostics.push_back(std::move(diag));
    }
    return r;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("results JSON: ") + e.what());
  }
}

std::string run_metadata_json(const SweepResult& result, const RunMetadata& meta) {
  ordered_json doc;
  doc["tool"] = "gazesweep";
  doc["version"] = kVersion;
  doc["axis"] = result.axis;
  doc["backend"] = meta.backend;
  if (!meta.manifest_path.empty()) doc["manifest"] = meta.manifest_path;
  doc["defaults"] = rollout_json(meta.defaults);
  doc["configs"] = ordered_json::array();
  for (const ConfigSpec& c : result.configs) doc["configs"].push_back(c.id);
  doc["recurrence"] = ordered_json{{"rho", meta.options.recurrence.rho},
                                   {"min_line_len", meta.options.recurrence.min_line_len}};
  doc["viewer_reduction"] = std::string(to_string(meta.options.reduction));
  doc["coord_scale"] = meta.options.coord_scale;
  doc["partition"] =
      meta.options.partition ? ordered_json(std::string(to_string(*meta.options.partition)))
                             : ordered_json(nullptr);
  doc["determinism"] =
      "no random state; outputs depend only on inputs and parameters, not on the worker count";
  doc["diagnostics"] = ordered_json::array();
  for (const ConfigDiagnostics& d : result.diagnostics) {
    int fallbacks = 0;
    int clamped = 0;
    ordered_json failures = ordered_json::array();
    for (const ImageOutcome& o : d.images) {
      fallbacks += o.fallback_steps;
      clamped += o.clamped;
      if (!o.ok) failures.push_back(ordered_json{{"image_id", o.image_id}, {"error", o.message}});
    }
    doc["diagnostics"].push_back(ordered_json{{"config", d.config},
                                              {"succeeded", d.succeeded()},
                                              {"failed", d.failed()},
                                              {"fallback_steps", fallbacks},
                                              {"clamped_points", clamped},
                                              {"failures", failures}});
  }
  doc["partial_failure"] = result.partial_failure();
  return doc.dump(2) + "\n";
}

std::vector<fs::path> emit(const SweepResult& result, const RunMetadata& meta, ReportFormat format,
                           const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<fs::path> written;
  auto put = [&](const char* name, const std::string& text) {
    write_file(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  if (format == ReportFormat::Csv) {
    put("results.csv", results_csv(result));
    put("paired_tests.csv", paired_tests_csv(result));
  } else {
    put("results.json", results_json(result));
  }
  put("run_metadata.json", run_metadata_json(result, meta));
  return written;
}

}  // namespace gazesweep
