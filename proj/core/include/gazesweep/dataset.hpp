#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazesweep/types.hpp"

namespace gazesweep {

enum class Partition { Train, Test };

Partition parse_partition(std::string_view s);
std::string_view to_string(Partition p) noexcept;

struct ManifestEntry {
  std::string image_id;
  std::filesystem::path image_path;
  GuiType gui_type = GuiType::Web;
  std::vector<std::filesystem::path> scanpath_paths;
  std::optional<std::filesystem::path> element_box_path;
  /// Precomputed density map for the file saliency backend.
  std::optional<std::filesystem::path> density_map_path;
  Partition partition = Partition::Test;
  /// Pixel extent the scanpath coordinates refer to. Falls back to the CSV
  /// "# width=.. height=.." line, then to the decoded image size.
  std::optional<ImageDims> source_dims;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  /// Truncate every ground-truth scanpath to its first N fixations.
  std::optional<int> max_fixations;
};

/// Parse and validate a JSON manifest. Relative paths resolve against the
/// manifest's directory.
///
/// {
///   "max_fixations": 15,                       (optional)
///   "entries": [{
///     "image_id": "web_01", "image_path": "images/web_01.png",
///     "gui_type": "web", "partition": "test",
///     "scanpath_paths": ["scanpaths/web_01.csv"],
///     "element_box_path": "boxes/web_01.json",   (optional)
///     "density_map_path": "maps/web_01.txt",     (optional)
///     "source_width": 1920, "source_height": 1200 (optional, together)
///   }]
/// }
///
/// Throws ParseError for malformed JSON or closed-set violations,
/// ValidationError for duplicate ids and missing files (all missing files
/// are listed, one line per entry).
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Parse a manifest document held in memory; `base_dir` anchors relative paths.
DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                               bool check_files = true);

/// One viewer's raw records from a scanpath CSV.
struct RawScanpath {
  std::string viewer_id;
  std::vector<RawFixation> fixations;
};

struct ScanpathFile {
  std::optional<ImageDims> dims;
  std::vector<RawScanpath> viewers;  ///< in order of first appearance
};

/// CSV with header `viewer_id,idx,x_px,y_px,t_ms,duration_ms`; t_ms and
/// duration_ms may be empty. An optional leading `# width=W height=H` line
/// gives the source pixel dimensions. Rows are ordered by idx per viewer.
ScanpathFile read_scanpath_csv(std::istream& in);
ScanpathFile read_scanpath_csv(const std::filesystem::path& path);

void write_scanpath_csv(std::ostream& out, std::span<const Scanpath> scanpaths, ImageDims dims);
void write_scanpath_csv(const std::filesystem::path& path, std::span<const Scanpath> scanpaths,
                        ImageDims dims);

struct LoadedScanpaths {
  std::vector<Scanpath> scanpaths;
  int clamped = 0;
};

/// Read every scanpath CSV of an entry, normalize with the entry's source
/// dims (or `fallback_dims`) and apply the manifest truncation.
LoadedScanpaths load_ground_truth(const ManifestEntry& entry, const DatasetManifest& manifest,
                                  std::optional<ImageDims> fallback_dims);

/// JSON list of {"category", "x0", "y0", "x1", "y1", optional "element_id"}
/// in normalized coordinates. Missing ids become "e<index>".
std::vector<ElementBox> read_element_boxes(const std::filesystem::path& path);
std::vector<ElementBox> parse_element_boxes(std::string_view json_text);
void write_element_boxes(const std::filesystem::path& path, std::span<const ElementBox> boxes);

}  // namespace gazesweep
