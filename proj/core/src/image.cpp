#include "gazesweep/image.hpp"

#include <png.h>
// jpeglib.h needs size_t and FILE declared first
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <fstream>
#include <memory>
#include <string>
#include <utility>

#include "gazesweep/error.hpp"

namespace gazesweep {

GuiImage::GuiImage(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), rgb_(std::move(rgb)) {
  if (width < kMinSide || height < kMinSide)
    throw ValidationError("GUI image must be at least 8x8, got " + std::to_string(width) + "x" +
                          std::to_string(height));
  if (rgb_.size() != static_cast<std::size_t>(width) * height * 3)
    throw ValidationError("RGB buffer size does not match image dimensions");
}

Grid GuiImage::channel(int channel) const {
  Grid g(width_, height_);
  auto out = g.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rgb_[i * 3 + channel];
  return g;
}

GuiImage GuiImage::from_channels(const Grid& r, const Grid& g, const Grid& b) {
  std::vector<std::uint8_t> rgb(r.size() * 3);
  const std::array<const Grid*, 3> ch{&r, &g, &b};
  for (int k = 0; k < 3; ++k) {
    auto v = ch[k]->values();
    for (std::size_t i = 0; i < v.size(); ++i)
      rgb[i * 3 + k] = static_cast<std::uint8_t>(std::clamp(std::lround(v[i]), 0L, 255L));
  }
  return GuiImage(r.width(), r.height(), std::move(rgb));
}

GuiImage resize(const GuiImage& img, int target_w, int target_h) {
  if (target_w < GuiImage::kMinSide || target_h < GuiImage::kMinSide)
    throw ValidationError("resize target must be at least 8x8");
  if (target_w == img.width() && target_h == img.height()) return img;
  return GuiImage::from_channels(resize_bilinear(img.channel(0), target_w, target_h),
                                 resize_bilinear(img.channel(1), target_w, target_h),
                                 resize_bilinear(img.channel(2), target_w, target_h));
}

GuiImage rotate180(const GuiImage& img) {
  return GuiImage::from_channels(rotate180(img.channel(0)), rotate180(img.channel(1)),
                                 rotate180(img.channel(2)));
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

std::array<unsigned char, 8> read_magic(const std::filesystem::path& path) {
  std::array<unsigned char, 8> magic{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  return magic;
}

GuiImage load_png_rgb(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw ParseError("PNG decode failed for '" + path.string() + "': " + image.message);
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw ParseError("PNG decode failed for '" + path.string() + "': " + msg);
  }
  return GuiImage(static_cast<int>(image.width), static_cast<int>(image.height), std::move(buf));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

GuiImage load_jpeg_rgb(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  // No C++ objects with destructors may be created between setjmp and the
  // last libjpeg call.
  std::vector<std::uint8_t> buf;
  int width = 0;
  int height = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw ParseError("JPEG decode failed for '" + path.string() + "': " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  buf.resize(static_cast<std::size_t>(width) * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = buf.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return GuiImage(width, height, std::move(buf));
}

}  // namespace

bool is_png_file(const std::filesystem::path& path) {
  const auto magic = read_magic(path);
  return png_sig_cmp(magic.data(), 0, magic.size()) == 0;
}

GuiImage load_image(const std::filesystem::path& path) {
  const auto magic = read_magic(path);
  if (png_sig_cmp(magic.data(), 0, magic.size()) == 0) return load_png_rgb(path);
  if (magic[0] == 0xFF && magic[1] == 0xD8) return load_jpeg_rgb(path);
  throw ParseError("'" + path.string() + "' is neither PNG nor JPEG");
}

ImageDims probe_image_dims(const std::filesystem::path& path) {
  const auto magic = read_magic(path);
  if (png_sig_cmp(magic.data(), 0, magic.size()) == 0) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
      throw ParseError("PNG header unreadable for '" + path.string() + "': " + image.message);
    const ImageDims dims{static_cast<int>(image.width), static_cast<int>(image.height)};
    png_image_free(&image);
    return dims;
  }
  if (magic[0] == 0xFF && magic[1] == 0xD8) {
    const GuiImage img = load_jpeg_rgb(path);
    return {img.width(), img.height()};
  }
  throw ParseError("'" + path.string() + "' is neither PNG nor JPEG");
}

void save_png(const GuiImage& img, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.rgb().data(), 0, nullptr))
    throw IoError("PNG write failed for '" + path.string() + "': " + image.message);
}

Gray16Image load_png_gray16(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  Gray16Image out;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("PNG decode failed for '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  const auto depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("'" + path.string() + "' is not a 16-bit single-channel PNG");
  }
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.values.resize(static_cast<std::size_t>(out.width) * out.height);
  std::vector<std::uint8_t> raw(out.values.size() * 2);
  rows.resize(out.height);
  for (int r = 0; r < out.height; ++r) rows[r] = raw.data() + static_cast<std::size_t>(r) * out.width * 2;
  // Re-arm after the buffers above exist so a decode error unwinds past no
  // freshly constructed objects.
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("PNG decode failed for '" + path.string() + "'");
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  // PNG stores samples big-endian.
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  return out;
}

void save_png_gray16(const Gray16Image& img, const std::filesystem::path& path) {
  if (img.values.size() != static_cast<std::size_t>(img.width) * img.height)
    throw ValidationError("gray16 buffer size does not match dimensions");
  FilePtr file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  std::vector<std::uint8_t> raw(img.values.size() * 2);
  for (std::size_t i = 0; i < img.values.size(); ++i) {
    raw[2 * i] = static_cast<std::uint8_t>(img.values[i] >> 8);
    raw[2 * i + 1] = static_cast<std::uint8_t>(img.values[i] & 0xFF);
  }
  std::vector<png_bytep> rows(img.height);
  for (int r = 0; r < img.height; ++r) rows[r] = raw.data() + static_cast<std::size_t>(r) * img.width * 2;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failed for '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace gazesweep
