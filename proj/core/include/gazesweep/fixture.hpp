#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gazesweep/grid.hpp"
#include "gazesweep/image.hpp"
#include "gazesweep/types.hpp"

namespace gazesweep {

/// One generated screenshot with everything the harness needs for it.
struct FixtureImage {
  std::string image_id;
  GuiType gui_type = GuiType::Web;
  GuiImage image;
  std::vector<ElementBox> boxes;
  Grid density;                   ///< element-centred Gaussian blend, image resolution / 4
  std::vector<Scanpath> viewers;  ///< normalized, with t_ms and duration_ms
};

inline constexpr std::uint32_t kFixtureSeed = 20240611;

/// Deterministic synthetic GUI: flat background with image blocks, text
/// lines and faces laid out on a 3x3 grid of slots. Index selects the GUI
/// type (index % 4) and its canvas size. The same (index, seed) always
/// yields the same bytes on every platform.
FixtureImage make_fixture_image(int index, std::uint32_t seed = kFixtureSeed);

/// Write `count` fixture images as PNG + element boxes + density map +
/// scanpath CSV, plus manifest.json. Returns the manifest path.
std::filesystem::path write_fixture(const std::filesystem::path& out_dir, int count = 12,
                                    std::uint32_t seed = kFixtureSeed);

}  // namespace gazesweep
