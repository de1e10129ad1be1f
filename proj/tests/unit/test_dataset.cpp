#include <sstream>

#include <gtest/gtest.h>

#include "gazesweep/dataset.hpp"
#include "gazesweep/error.hpp"
#include "gazesweep/image.hpp"
#include "test_support.hpp"

namespace gazesweep {
namespace {

namespace fs = std::filesystem;
using testing::make_temp_dir;
using testing::write_file;

const char* kCsv =
    "viewer_id,idx,x_px,y_px,t_ms,duration_ms\n"
    "v1,0,10,20,0,200\n"
    "v1,1,30,40,,\n"
    "v2,0,50,60,5,100\n";

// Writes one tiny image + scanpath per entry and returns the directory.
fs::path make_dataset(const std::vector<std::string>& ids) {
  const fs::path dir = make_temp_dir("dataset");
  for (const std::string& id : ids) {
    save_png(GuiImage(100, 80, std::vector<std::uint8_t>(100 * 80 * 3, 128)), dir / (id + ".png"));
    write_file(dir / (id + ".csv"), kCsv);
  }
  return dir;
}

std::string entry_json(const std::string& id, const std::string& gui,
                       const std::string& partition = "test", const std::string& extra = "") {
  return "{\"image_id\":\"" + id + "\",\"image_path\":\"" + id + ".png\",\"gui_type\":\"" + gui +
         "\",\"partition\":\"" + partition + "\",\"scanpath_paths\":[\"" + id + ".csv\"]" + extra +
         "}";
}

TEST(Manifest, OneEntryPerGuiType) {
  const fs::path dir = make_dataset({"a", "b", "c", "d"});
  const std::string doc = "{\"entries\":[" + entry_json("a", "poster") + "," +
                          entry_json("b", "desktop") + "," + entry_json("c", "mobile", "train") +
                          "," + entry_json("d", "web") + "]}";
  write_file(dir / "manifest.json", doc);
  const DatasetManifest m = load_manifest(dir / "manifest.json");
  ASSERT_EQ(m.entries.size(), 4u);
  EXPECT_EQ(m.entries[0].gui_type, GuiType::Poster);
  EXPECT_EQ(m.entries[1].gui_type, GuiType::Desktop);
  EXPECT_EQ(m.entries[2].gui_type, GuiType::Mobile);
  EXPECT_EQ(m.entries[2].partition, Partition::Train);
  EXPECT_EQ(m.entries[3].gui_type, GuiType::Web);
  EXPECT_EQ(m.entries[0].image_path, dir / "a.png");
  EXPECT_FALSE(m.max_fixations);
  EXPECT_FALSE(m.entries[0].source_dims);
}

TEST(Manifest, DuplicateIdNamesTheId) {
  const fs::path dir = make_dataset({"a"});
  const std::string doc =
      "{\"entries\":[" + entry_json("a", "web") + "," + entry_json("a", "web") + "]}";
  try {
    parse_manifest(doc, dir);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
  }
}

TEST(Manifest, ClosedSetsAreParseErrors) {
  const fs::path dir = make_dataset({"a"});
  EXPECT_THROW(parse_manifest("{\"entries\":[" + entry_json("a", "web", "validation") + "]}", dir),
               ParseError);
  EXPECT_THROW(parse_manifest("{\"entries\":[" + entry_json("a", "tablet") + "]}", dir),
               ParseError);
  EXPECT_THROW(parse_manifest("{\"entries\":[", dir), ParseError);
  EXPECT_THROW(parse_manifest("{\"entries\":[{\"image_id\":\"a\"}]}", dir), ParseError);
}

TEST(Manifest, EveryMissingFileIsListed) {
  const fs::path dir = make_dataset({"a"});
  const std::string doc = "{\"entries\":[" + entry_json("a", "web") + "," +
                          entry_json("gone", "web") + "," + entry_json("lost", "poster") + "]}";
  try {
    parse_manifest(doc, dir);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("gone.png"), std::string::npos);
    EXPECT_NE(msg.find("gone.csv"), std::string::npos);
    EXPECT_NE(msg.find("lost.png"), std::string::npos);
    EXPECT_EQ(msg.find("a.png"), std::string::npos);
  }
  EXPECT_NO_THROW(parse_manifest(doc, dir, false));
}

TEST(Manifest, OptionalFields) {
  const fs::path dir = make_dataset({"a"});
  const std::string doc =
      "{\"max_fixations\":1,\"entries\":[" +
      entry_json("a", "web", "test", ",\"source_width\":200,\"source_height\":160") + "]}";
  const DatasetManifest m = parse_manifest(doc, dir);
  EXPECT_EQ(m.max_fixations, 1);
  EXPECT_EQ(m.entries[0].source_dims, (ImageDims{200, 160}));

  EXPECT_THROW(parse_manifest("{\"entries\":[" +
                                  entry_json("a", "web", "test", ",\"source_width\":200") + "]}",
                              dir),
               ParseError);
  EXPECT_THROW(parse_manifest("{\"entries\":[" +
                                  entry_json("a", "web", "test",
                                             ",\"source_width\":0,\"source_height\":5") +
                                  "]}",
                              dir),
               ParseError);
}

TEST(ScanpathCsv, ReadGroupsByViewer) {
  std::istringstream in(std::string("# width=100 height=80\n") + kCsv);
  const ScanpathFile f = read_scanpath_csv(in);
  EXPECT_EQ(f.dims, (ImageDims{100, 80}));
  ASSERT_EQ(f.viewers.size(), 2u);
  EXPECT_EQ(f.viewers[0].viewer_id, "v1");
  ASSERT_EQ(f.viewers[0].fixations.size(), 2u);
  EXPECT_DOUBLE_EQ(f.viewers[0].fixations[1].x_px, 30.0);
  EXPECT_FALSE(f.viewers[0].fixations[1].t_ms);
  EXPECT_EQ(f.viewers[0].fixations[0].duration_ms, 200.0);
  EXPECT_EQ(f.viewers[1].fixations.size(), 1u);
}

TEST(ScanpathCsv, RowsSortByIdx) {
  std::istringstream in(
      "viewer_id,idx,x_px,y_px,t_ms,duration_ms\n"
      "v,2,3,3,,\n"
      "v,0,1,1,,\n"
      "v,1,2,2,,\n");
  const ScanpathFile f = read_scanpath_csv(in);
  ASSERT_EQ(f.viewers[0].fixations.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(f.viewers[0].fixations[i].x_px, i + 1.0);
}

TEST(ScanpathCsv, ErrorsCarryRow) {
  auto row_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_scanpath_csv(in);
    } catch (const ParseError& e) {
      return e.row();
    }
    return std::optional<int>{-1};
  };
  const std::string header = "viewer_id,idx,x_px,y_px,t_ms,duration_ms\n";
  EXPECT_EQ(row_of(header + "v,0,1,1,,\nv,1,abc,1,,\n"), 3);
  EXPECT_EQ(row_of(header + "v,0,1,1\n"), 2);
  EXPECT_EQ(row_of(header + "v,0,1,1,,\nv,0,2,2,,\n"), 3);
  EXPECT_EQ(row_of(header + "v,0.5,1,1,,\n"), 2);
  EXPECT_EQ(row_of("viewer,idx,x,y\n"), 1);
  std::istringstream empty("");
  EXPECT_THROW(read_scanpath_csv(empty), ParseError);
}

TEST(ScanpathCsv, WriteThenReadRoundTrips) {
  const ImageDims dims{640, 480};
  const std::vector<Scanpath> sps{
      Scanpath({Fixation(0.25, 0.5, 210.0, 0.0), Fixation(0.75, 0.125)}, "img", "alice"),
      Scanpath({Fixation(0.5, 0.5)}, "img")};
  std::ostringstream out;
  write_scanpath_csv(out, sps, dims);
  std::istringstream in(out.str());
  const ScanpathFile f = read_scanpath_csv(in);
  EXPECT_EQ(f.dims, dims);
  ASSERT_EQ(f.viewers.size(), 2u);
  EXPECT_EQ(f.viewers[0].viewer_id, "alice");
  EXPECT_EQ(f.viewers[1].viewer_id, "model0");
  const NormalizedScanpath back = validate_scanpath(f.viewers[0].fixations, dims, "img", "alice");
  EXPECT_EQ(back.scanpath, sps[0]);
}

TEST(ElementBoxes, RoundTripAndDefaultIds) {
  const auto boxes = parse_element_boxes(
      R"([{"category":"text","x0":0.1,"y0":0.2,"x1":0.3,"y1":0.4},
          {"category":"face","x0":0.5,"y0":0.5,"x1":0.9,"y1":0.8,"element_id":"hero"}])");
  ASSERT_EQ(boxes.size(), 2u);
  EXPECT_EQ(boxes[0].element_id(), "e0");
  EXPECT_EQ(boxes[0].category(), ElementCategory::Text);
  EXPECT_EQ(boxes[1].element_id(), "hero");

  const fs::path dir = make_temp_dir("boxes");
  write_element_boxes(dir / "b.json", boxes);
  EXPECT_EQ(read_element_boxes(dir / "b.json"), boxes);
}

TEST(ElementBoxes, Rejects) {
  EXPECT_THROW(parse_element_boxes(R"([{"category":"logo","x0":0,"y0":0,"x1":1,"y1":1}])"),
               ParseError);
  EXPECT_THROW(parse_element_boxes(R"([{"category":"text","x0":0.5,"y0":0,"x1":0.2,"y1":1}])"),
               Error);
  EXPECT_THROW(parse_element_boxes(
                   R"([{"category":"text","x0":0,"y0":0,"x1":1,"y1":1,"element_id":"a"},
                       {"category":"face","x0":0,"y0":0,"x1":1,"y1":1,"element_id":"a"}])"),
               ValidationError);
  EXPECT_THROW(read_element_boxes("/nonexistent/boxes.json"), IoError);
}

TEST(GroundTruth, TruncationAndDims) {
  const fs::path dir = make_dataset({"a"});
  DatasetManifest m = parse_manifest("{\"entries\":[" + entry_json("a", "web") + "]}", dir);
  const LoadedScanpaths full = load_ground_truth(m.entries[0], m, ImageDims{100, 80});
  ASSERT_EQ(full.scanpaths.size(), 2u);
  EXPECT_EQ(full.scanpaths[0].size(), 2u);
  EXPECT_DOUBLE_EQ(full.scanpaths[0][0].x(), 0.1);
  EXPECT_DOUBLE_EQ(full.scanpaths[0][0].y(), 0.25);

  m.max_fixations = 1;
  const LoadedScanpaths cut = load_ground_truth(m.entries[0], m, ImageDims{100, 80});
  EXPECT_EQ(cut.scanpaths[0].size(), 1u);

  // Entry dims win over the fallback.
  m.entries[0].source_dims = ImageDims{200, 160};
  EXPECT_DOUBLE_EQ(load_ground_truth(m.entries[0], m, ImageDims{100, 80}).scanpaths[0][0].x(),
                   0.05);

  m.entries[0].source_dims.reset();
  EXPECT_THROW(load_ground_truth(m.entries[0], m, std::nullopt), ValidationError);
}

TEST(GroundTruth, OutOfRangePointsAreCounted) {
  const fs::path dir = make_dataset({"a"});
  write_file(dir / "a.csv",
             "viewer_id,idx,x_px,y_px,t_ms,duration_ms\nv,0,10,10,,\nv,1,500,10,,\n");
  const DatasetManifest m = parse_manifest("{\"entries\":[" + entry_json("a", "web") + "]}", dir);
  const LoadedScanpaths got = load_ground_truth(m.entries[0], m, ImageDims{100, 80});
  EXPECT_EQ(got.clamped, 1);
  EXPECT_DOUBLE_EQ(got.scanpaths[0][1].x(), 1.0);
}

TEST(Partition, Parse) {
  EXPECT_EQ(parse_partition("train"), Partition::Train);
  EXPECT_EQ(parse_partition("test"), Partition::Test);
  EXPECT_EQ(to_string(Partition::Train), "train");
  EXPECT_THROW(parse_partition("val"), Error);
}

}  // namespace
}  // namespace gazesweep
