#include "gazesweep/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "gazesweep/dataset.hpp"
#include "gazesweep/error.hpp"
#include "gazesweep/saliency.hpp"

namespace gazesweep {

namespace fs = std::filesystem;

namespace {

// mt19937 output is specified by the standard; the distributions are not,
// so draws are converted by hand.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  double uniform() { return gen_() / 4294967296.0; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint32_t>(n)); }

 private:
  std::mt19937 gen_;
};

struct Canvas {
  int w;
  int h;
  std::vector<std::uint8_t> rgb;

  void put(int x, int y, std::array<std::uint8_t, 3> c) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    auto* p = &rgb[(static_cast<std::size_t>(y) * w + x) * 3];
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }
  void fill(int x0, int y0, int x1, int y1, std::array<std::uint8_t, 3> c) {
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) put(x, y, c);
  }
};

constexpr std::array<ImageDims, 4> kCanvas{{
    {180, 256},  // poster
    {320, 200},  // desktop
    {120, 240},  // mobile
    {280, 300},  // web
}};

constexpr std::array<std::array<std::uint8_t, 3>, 4> kBackground{{
    {238, 232, 220}, {228, 232, 238}, {245, 245, 245}, {250, 250, 246}}};

std::array<std::uint8_t, 3> random_colour(Rng& rng) {
  return {static_cast<std::uint8_t>(40 + rng.below(200)),
          static_cast<std::uint8_t>(40 + rng.below(200)),
          static_cast<std::uint8_t>(40 + rng.below(200))};
}

void draw_image_block(Canvas& c, int x0, int y0, int x1, int y1, Rng& rng) {
  const auto a = random_colour(rng);
  const auto b = random_colour(rng);
  const int cell = 4 + rng.below(6);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) c.put(x, y, ((x - x0) / cell + (y - y0) / cell) % 2 ? a : b);
}

void draw_text_block(Canvas& c, int x0, int y0, int x1, int y1, Rng& rng) {
  const std::uint8_t ink = static_cast<std::uint8_t>(20 + rng.below(60));
  for (int y = y0 + 1; y + 2 <= y1; y += 5) {
    const int end = x1 - rng.below(std::max(1, (x1 - x0) / 3));
    c.fill(x0, y, end, y + 2, {ink, ink, ink});
  }
}

void draw_face(Canvas& c, int x0, int y0, int x1, int y1) {
  const double cx = 0.5 * (x0 + x1);
  const double cy = 0.5 * (y0 + y1);
  const double rx = 0.5 * (x1 - x0);
  const double ry = 0.5 * (y1 - y0);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      const double dx = (x + 0.5 - cx) / rx;
      const double dy = (y + 0.5 - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) c.put(x, y, {224, 172, 140});
    }
  const int eye = std::max(1, static_cast<int>(rx / 5));
  for (int side : {-1, 1}) {
    const int ex = static_cast<int>(cx + side * rx * 0.4);
    const int ey = static_cast<int>(cy - ry * 0.25);
    c.fill(ex - eye, ey - eye, ex + eye, ey + eye, {30, 30, 40});
  }
  c.fill(static_cast<int>(cx - rx * 0.35), static_cast<int>(cy + ry * 0.35),
         static_cast<int>(cx + rx * 0.35), static_cast<int>(cy + ry * 0.35) + eye, {150, 60, 60});
}

Grid density_for(const std::vector<ElementBox>& boxes, int w, int h) {
  Grid g(w, h, 0.02);
  for (const ElementBox& b : boxes) {
    const double cx = 0.5 * (b.x0() + b.x1());
    const double cy = 0.5 * (b.y0() + b.y1());
    const double sx = 0.35 * (b.x1() - b.x0());
    const double sy = 0.35 * (b.y1() - b.y0());
    const double weight = b.category() == ElementCategory::Face   ? 1.0
                          : b.category() == ElementCategory::Text ? 0.6
                                                                  : 0.8;
    for (int r = 0; r < h; ++r)
      for (int col = 0; col < w; ++col) {
        const double dx = ((col + 0.5) / w - cx) / sx;
        const double dy = ((r + 0.5) / h - cy) / sy;
        g.at(r, col) += weight * std::exp(-0.5 * (dx * dx + dy * dy));
      }
  }
  const double peak = g.max();
  for (double& v : g.values()) v /= peak;
  return g;
}

Scanpath synthetic_viewer(const std::vector<ElementBox>& boxes, const std::string& image_id,
                          int viewer, Rng& rng) {
  const int n = 8 + rng.below(5);
  std::vector<Fixation> fx;
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    double x;
    double y;
    if (!boxes.empty() && rng.uniform() < 0.8) {
      const ElementBox& b = boxes[static_cast<std::size_t>(rng.below(static_cast<int>(boxes.size())))];
      x = b.x0() + (b.x1() - b.x0()) * rng.uniform(0.2, 0.8);
      y = b.y0() + (b.y1() - b.y0()) * rng.uniform(0.2, 0.8);
    } else {
      x = rng.uniform(0.02, 0.98);
      y = rng.uniform(0.02, 0.98);
    }
    const double duration = std::round(rng.uniform(150.0, 400.0));
    fx.emplace_back(x, y, duration, t);
    t += duration + std::round(rng.uniform(20.0, 60.0));
  }
  return Scanpath(std::move(fx), image_id, "v" + std::to_string(viewer + 1));
}

}  // namespace

FixtureImage make_fixture_image(int index, std::uint32_t seed) {
  if (index < 0) throw ValidationError("fixture index must be non-negative");
  Rng rng(seed + 7919u * static_cast<std::uint32_t>(index));
  const int kind = index % 4;
  const GuiType type = kAllGuiTypes[kind];
  const ImageDims dims = kCanvas[kind];
  Canvas canvas{dims.width, dims.height,
                std::vector<std::uint8_t>(static_cast<std::size_t>(dims.width) * dims.height * 3)};
  canvas.fill(0, 0, dims.width, dims.height, kBackground[kind]);

  const std::string image_id = std::string(to_string(type)) + "_" + std::to_string(index / 4 + 1);
  std::vector<ElementBox> boxes;

  // One element per 3x3 slot with probability 2/3; at least three elements.
  std::vector<int> slots;
  for (int s = 0; s < 9; ++s)
    if (rng.below(3) != 0) slots.push_back(s);
  for (int s = 0; slots.size() < 3; ++s)
    if (std::find(slots.begin(), slots.end(), s) == slots.end()) slots.push_back(s);
  std::sort(slots.begin(), slots.end());

  const double sw = dims.width / 3.0;
  const double sh = dims.height / 3.0;
  for (int s : slots) {
    const double mx = rng.uniform(0.05, 0.2) * sw;
    const double my = rng.uniform(0.05, 0.2) * sh;
    const int x0 = static_cast<int>(std::floor((s % 3) * sw + mx));
    const int y0 = static_cast<int>(std::floor((s / 3) * sh + my));
    const int x1 = static_cast<int>(std::ceil((s % 3 + 1) * sw - mx));
    const int y1 = static_cast<int>(std::ceil((s / 3 + 1) * sh - my));
    const ElementCategory cat = kAllElementCategories[rng.below(3)];
    switch (cat) {
      case ElementCategory::Image: draw_image_block(canvas, x0, y0, x1, y1, rng); break;
      case ElementCategory::Text: draw_text_block(canvas, x0, y0, x1, y1, rng); break;
      case ElementCategory::Face: draw_face(canvas, x0, y0, x1, y1); break;
    }
    boxes.emplace_back(static_cast<double>(x0) / dims.width,
                       static_cast<double>(y0) / dims.height,
                       static_cast<double>(x1) / dims.width,
                       static_cast<double>(y1) / dims.height, cat,
                       "e" + std::to_string(boxes.size()));
  }
  Grid density = density_for(boxes, dims.width / 4, dims.height / 4);
  std::vector<Scanpath> viewers;
  const int n_viewers = 2 + rng.below(2);
  for (int v = 0; v < n_viewers; ++v) viewers.push_back(synthetic_viewer(boxes, image_id, v, rng));
  return FixtureImage{image_id,
                      type,
                      GuiImage(dims.width, dims.height, std::move(canvas.rgb)),
                      std::move(boxes),
                      std::move(density),
                      std::move(viewers)};
}

fs::path write_fixture(const fs::path& out_dir, int count, std::uint32_t seed) {
  if (count < 1) throw ValidationError("fixture count must be positive");
  for (const char* sub : {"images", "boxes", "maps", "scanpaths"}) {
    std::error_code ec;
    fs::create_directories(out_dir / sub, ec);
    if (ec) throw IoError("cannot create '" + (out_dir / sub).string() + "': " + ec.message());
  }
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int i = 0; i < count; ++i) {
    const FixtureImage f = make_fixture_image(i, seed);
    const std::string id = f.image_id;
    save_png(f.image, out_dir / "images" / (id + ".png"));
    write_element_boxes(out_dir / "boxes" / (id + ".json"), f.boxes);
    save_density_map(f.density, out_dir / "maps" / (id + ".txt"));
    write_scanpath_csv(out_dir / "scanpaths" / (id + ".csv"), f.viewers,
                       ImageDims{f.image.width(), f.image.height()});
    entries.push_back({{"image_id", id},
                       {"image_path", "images/" + id + ".png"},
                       {"gui_type", std::string(to_string(f.gui_type))},
                       {"partition", "test"},
                       {"scanpath_paths", {"scanpaths/" + id + ".csv"}},
                       {"element_box_path", "boxes/" + id + ".json"},
                       {"density_map_path", "maps/" + id + ".txt"}});
  }
  const fs::path manifest = out_dir / "manifest.json";
  std::ofstream out(manifest, std::ios::binary);
  if (!out) throw IoError("cannot write '" + manifest.string() + "'");
  out << nlohmann::ordered_json{{"entries", entries}}.dump(2) << '\n';
  return manifest;
}

}  // namespace gazesweep
