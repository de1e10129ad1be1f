#include "gazesweep/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gazesweep/error.hpp"
#include "gazesweep/format.hpp"

namespace gazesweep {

namespace fs = std::filesystem;
using nlohmann::json;

Partition parse_partition(std::string_view s) {
  if (s == "train") return Partition::Train;
  if (s == "test") return Partition::Test;
  throw ParseError("unknown partition '" + std::string(s) + "' (expected train or test)");
}

std::string_view to_string(Partition p) noexcept {
  return p == Partition::Train ? "train" : "test";
}

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path raw(p);
  return raw.is_absolute() ? raw : base / raw;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

DatasetManifest parse_manifest(std::string_view json_text, const fs::path& base_dir,
                               bool check_files) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed manifest JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest must be a JSON object");

  DatasetManifest m;
  if (auto it = doc.find("max_fixations"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<int>() < 1)
      throw ParseError("max_fixations must be a positive integer");
    m.max_fixations = it->get<int>();
  }
  const json& entries = require(doc, "entries", "manifest");
  if (!entries.is_array()) throw ParseError("manifest 'entries' must be an array");

  std::set<std::string> seen;
  int index = 0;
  for (const json& e : entries) {
    const std::string where = "manifest entry " + std::to_string(index++);
    if (!e.is_object()) throw ParseError(where + " must be an object");
    ManifestEntry entry;
    entry.image_id = require_string(e, "image_id", where);
    const std::string label = "entry '" + entry.image_id + "'";
    if (!seen.insert(entry.image_id).second)
      throw ValidationError("duplicate image_id '" + entry.image_id + "'");
    entry.image_path = resolve(base_dir, require_string(e, "image_path", label));
    try {
      entry.gui_type = parse_gui_type(require_string(e, "gui_type", label));
    } catch (const ValidationError& err) {
      throw ParseError(label + ": " + err.what());
    }
    entry.partition = parse_partition(require_string(e, "partition", label));

    const json& sps = require(e, "scanpath_paths", label);
    if (!sps.is_array() || sps.empty())
      throw ParseError(label + ": 'scanpath_paths' must be a non-empty array");
    for (const json& p : sps) {
      if (!p.is_string()) throw ParseError(label + ": scanpath paths must be strings");
      entry.scanpath_paths.push_back(resolve(base_dir, p.get<std::string>()));
    }
    if (auto it = e.find("element_box_path"); it != e.end() && !it->is_null())
      entry.element_box_path = resolve(base_dir, it->get<std::string>());
    if (auto it = e.find("density_map_path"); it != e.end() && !it->is_null())
      entry.density_map_path = resolve(base_dir, it->get<std::string>());

    const bool has_w = e.contains("source_width");
    const bool has_h = e.contains("source_height");
    if (has_w != has_h) throw ParseError(label + ": source_width and source_height go together");
    if (has_w) {
      const json& w = e["source_width"];
      const json& h = e["source_height"];
      if (!w.is_number_integer() || !h.is_number_integer() || w.get<int>() < 1 ||
          h.get<int>() < 1)
        throw ParseError(label + ": source dimensions must be positive integers");
      entry.source_dims = ImageDims{w.get<int>(), h.get<int>()};
    }
    m.entries.push_back(std::move(entry));
  }

  if (check_files) {
    std::string missing;
    for (const ManifestEntry& e : m.entries) {
      std::vector<fs::path> paths{e.image_path};
      paths.insert(paths.end(), e.scanpath_paths.begin(), e.scanpath_paths.end());
      if (e.element_box_path) paths.push_back(*e.element_box_path);
      if (e.density_map_path) paths.push_back(*e.density_map_path);
      for (const fs::path& p : paths)
        if (!fs::exists(p)) missing += "\n  entry '" + e.image_id + "': missing " + p.string();
    }
    if (!missing.empty()) throw ValidationError("manifest references missing files:" + missing);
  }
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  return parse_manifest(read_text(path), path.parent_path(), true);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, int row, int col) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed number '" + s + "'", row, col);
  return v;
}

std::optional<double> parse_optional(const std::string& s, int row, int col) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, row, col);
}

std::optional<ImageDims> parse_dims_comment(const std::string& line) {
  int w = 0;
  int h = 0;
  if (std::sscanf(line.c_str(), "# width=%d height=%d", &w, &h) == 2 && w > 0 && h > 0)
    return ImageDims{w, h};
  return std::nullopt;
}

}  // namespace

ScanpathFile read_scanpath_csv(std::istream& in) {
  static const std::vector<std::string> kHeader{"viewer_id", "idx",   "x_px",
                                                "y_px",      "t_ms", "duration_ms"};
  ScanpathFile file;
  std::string line;
  int row = 0;
  bool have_header = false;
  std::map<std::string, std::size_t> viewer_index;
  std::vector<std::map<long, RawFixation>> by_idx;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    if (line[0] == '#') {
      if (auto d = parse_dims_comment(line)) file.dims = d;
      continue;
    }
    if (!have_header) {
      if (split_csv(line) != kHeader)
        throw ParseError("scanpath CSV header must be viewer_id,idx,x_px,y_px,t_ms,duration_ms",
                         row);
      have_header = true;
      continue;
    }
    const auto cols = split_csv(line);
    if (cols.size() != kHeader.size())
      throw ParseError("expected 6 columns, found " + std::to_string(cols.size()), row);
    const double idx_value = parse_double(cols[1], row, 2);
    const long idx = static_cast<long>(idx_value);
    if (idx_value != static_cast<double>(idx)) throw ParseError("idx must be an integer", row, 2);
    RawFixation f{parse_double(cols[2], row, 3), parse_double(cols[3], row, 4),
                  parse_optional(cols[4], row, 5), parse_optional(cols[5], row, 6)};
    auto [it, inserted] = viewer_index.emplace(cols[0], by_idx.size());
    if (inserted) {
      by_idx.emplace_back();
      file.viewers.push_back({cols[0], {}});
    }
    if (!by_idx[it->second].emplace(idx, f).second)
      throw ParseError("duplicate idx " + std::to_string(idx) + " for viewer '" + cols[0] + "'",
                       row, 2);
  }
  if (!have_header) throw ParseError("scanpath CSV has no header");
  for (std::size_t v = 0; v < file.viewers.size(); ++v)
    for (auto& [idx, f] : by_idx[v]) file.viewers[v].fixations.push_back(f);
  return file;
}

ScanpathFile read_scanpath_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scanpath file '" + path.string() + "'");
  try {
    return read_scanpath_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_scanpath_csv(std::ostream& out, std::span<const Scanpath> scanpaths, ImageDims dims) {
  out << "# width=" << dims.width << " height=" << dims.height << '\n';
  out << "viewer_id,idx,x_px,y_px,t_ms,duration_ms\n";
  int anonymous = 0;
  for (const Scanpath& sp : scanpaths) {
    const std::string viewer =
        sp.viewer_id() ? *sp.viewer_id() : "model" + std::to_string(anonymous++);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const RawFixation r = denormalize(sp[i], dims);
      out << viewer << ',' << i << ',' << format_number(r.x_px) << ','
          << format_number(r.y_px) << ',' << (r.t_ms ? format_number(*r.t_ms) : "") << ','
          << (r.duration_ms ? format_number(*r.duration_ms) : "") << '\n';
    }
  }
}

void write_scanpath_csv(const fs::path& path, std::span<const Scanpath> scanpaths,
                        ImageDims dims) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scanpath file '" + path.string() + "'");
  write_scanpath_csv(out, scanpaths, dims);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LoadedScanpaths load_ground_truth(const ManifestEntry& entry, const DatasetManifest& manifest,
                                  std::optional<ImageDims> fallback_dims) {
  LoadedScanpaths out;
  for (const fs::path& p : entry.scanpath_paths) {
    const ScanpathFile file = read_scanpath_csv(p);
    std::optional<ImageDims> dims = entry.source_dims;
    if (!dims) dims = file.dims;
    if (!dims) dims = fallback_dims;
    if (!dims)
      throw ValidationError("no source dimensions for scanpaths of '" + entry.image_id + "'");
    for (const RawScanpath& raw : file.viewers) {
      NormalizedScanpath n = validate_scanpath(raw.fixations, *dims, entry.image_id, raw.viewer_id);
      out.clamped += n.clamped;
      out.scanpaths.push_back(manifest.max_fixations
                                  ? n.scanpath.truncated(static_cast<std::size_t>(*manifest.max_fixations))
                                  : std::move(n.scanpath));
    }
  }
  if (out.scanpaths.empty())
    throw ValidationError("entry '" + entry.image_id + "' has no ground-truth scanpaths");
  return out;
}

std::vector<ElementBox> parse_element_boxes(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed element box JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("element box file must be a JSON array");
  std::vector<ElementBox> boxes;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& b = doc[i];
    const std::string where = "element box " + std::to_string(i);
    if (!b.is_object()) throw ParseError(where + " must be an object");
    auto num = [&](const char* key) {
      const json& v = require(b, key, where);
      if (!v.is_number()) throw ParseError(where + ": '" + key + "' must be a number");
      return v.get<double>();
    };
    std::string id = b.contains("element_id") ? b["element_id"].get<std::string>()
                                              : "e" + std::to_string(i);
    if (!ids.insert(id).second) throw ValidationError("duplicate element id '" + id + "'");
    ElementCategory category;
    try {
      category = parse_element_category(require_string(b, "category", where));
    } catch (const ValidationError& err) {
      throw ParseError(where + ": " + err.what());
    }
    boxes.emplace_back(num("x0"), num("y0"), num("x1"), num("y1"), category, std::move(id));
  }
  return boxes;
}

std::vector<ElementBox> read_element_boxes(const fs::path& path) {
  return parse_element_boxes(read_text(path));
}

void write_element_boxes(const fs::path& path, std::span<const ElementBox> boxes) {
  json doc = json::array();
  for (const ElementBox& b : boxes)
    doc.push_back({{"element_id", b.element_id()},
                   {"category", std::string(to_string(b.category()))},
                   {"x0", b.x0()},
                   {"y0", b.y0()},
                   {"x1", b.x1()},
                   {"y1", b.y1()}});
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace gazesweep
