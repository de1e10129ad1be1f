#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gazesweep/grid.hpp"
#include "gazesweep/types.hpp"

namespace gazesweep {

/// 8-bit RGB screenshot. Minimum extent is 8x8 so the saliency pyramid has
/// at least four levels.
class GuiImage {
 public:
  static constexpr int kMinSide = 8;

  /// `rgb` holds width*height interleaved RGB triples, row-major.
  GuiImage(int width, int height, std::vector<std::uint8_t> rgb);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const std::vector<std::uint8_t>& rgb() const noexcept { return rgb_; }

  std::uint8_t channel_at(int row, int col, int channel) const {
    return rgb_[(static_cast<std::size_t>(row) * width_ + col) * 3 + channel];
  }

  /// Channel 0=R, 1=G, 2=B as doubles in [0,255].
  Grid channel(int channel) const;

  static GuiImage from_channels(const Grid& r, const Grid& g, const Grid& b);

  friend bool operator==(const GuiImage&, const GuiImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> rgb_;
};

/// Bilinear resize per channel (half-pixel centers, round-half-away-from-zero
/// back to 8 bits). Aspect ratio is not preserved.
GuiImage resize(const GuiImage& img, int target_w, int target_h);

GuiImage rotate180(const GuiImage& img);

/// Decode a PNG or JPEG file (format sniffed from the first bytes).
GuiImage load_image(const std::filesystem::path& path);

/// Pixel size of a PNG or JPEG file, read from its header only.
ImageDims probe_image_dims(const std::filesystem::path& path);
void save_png(const GuiImage& img, const std::filesystem::path& path);

/// Raw single-channel 16-bit raster.
struct Gray16Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;
};

bool is_png_file(const std::filesystem::path& path);
Gray16Image load_png_gray16(const std::filesystem::path& path);
void save_png_gray16(const Gray16Image& img, const std::filesystem::path& path);

}  // namespace gazesweep
