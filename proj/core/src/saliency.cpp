#include "gazesweep/saliency.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "gazesweep/error.hpp"

namespace gazesweep {

namespace {

// Maps whose peak is below this are treated as identically zero; channel
// values are O(1) so anything smaller is accumulated rounding.
constexpr double kFlatEpsilon = 1e-9;
// Neighbours closer than this count as ties when finding local maxima, so
// rounding noise on flat regions does not change the maxima count.
constexpr double kMaxTolerance = 1e-9;

int reflect101(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

// Correlate each row with `taps` (centered).
Grid filter_rows(const Grid& in, const std::vector<double>& taps) {
  const int radius = static_cast<int>(taps.size()) / 2;
  Grid out(in.width(), in.height());
  for (int r = 0; r < in.height(); ++r)
    for (int c = 0; c < in.width(); ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[k + radius] * in.at(r, reflect101(c + k, in.width()));
      out.at(r, c) = acc;
    }
  return out;
}

Grid filter_cols(const Grid& in, const std::vector<double>& taps) {
  const int radius = static_cast<int>(taps.size()) / 2;
  Grid out(in.width(), in.height());
  for (int r = 0; r < in.height(); ++r)
    for (int c = 0; c < in.width(); ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += taps[k + radius] * in.at(reflect101(r + k, in.height()), c);
      out.at(r, c) = acc;
    }
  return out;
}

Grid blur_binomial(const Grid& in) {
  static const std::vector<double> taps{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  return filter_cols(filter_rows(in, taps), taps);
}

Grid abs_difference(const Grid& center, const Grid& surround) {
  const Grid up = resize_bilinear(surround, center.width(), center.height());
  Grid out(center.width(), center.height());
  auto o = out.values();
  auto a = center.values();
  auto b = up.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::abs(a[i] - b[i]);
  return out;
}

void accumulate(Grid& acc, const Grid& add) {
  auto a = acc.values();
  auto b = add.values();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

Grid oriented_response(const Grid& level, const std::array<SeparableTerm, 3>& terms) {
  Grid out(level.width(), level.height());
  for (const SeparableTerm& t : terms) {
    const Grid part = filter_cols(filter_rows(level, t.row), t.col);
    auto o = out.values();
    auto p = part.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += t.scale * p[i];
  }
  for (double& v : out.values()) v = std::abs(v);
  return out;
}

// Across-scale sum of normalized center-surround maps of one pyramid,
// resampled to the output dimensions.
Grid conspicuity(const std::vector<Grid>& pyramid, const std::vector<std::pair<int, int>>& pairs,
                 int out_w, int out_h) {
  Grid acc(out_w, out_h);
  for (auto [c, s] : pairs) {
    const Grid feature = normalize_map(abs_difference(pyramid[c], pyramid[s]));
    accumulate(acc, resize_bilinear(feature, out_w, out_h));
  }
  return acc;
}

}  // namespace

std::array<SeparableTerm, 3> gabor_terms(double theta_deg, const IttiKochParams& p) {
  const int radius = p.gabor_radius;
  const double theta = theta_deg * std::numbers::pi / 180.0;
  const double k = 2.0 * std::numbers::pi / p.gabor_wavelength;
  const double kx = k * std::cos(theta);
  const double ky = k * std::sin(theta);

  std::array<SeparableTerm, 3> terms;
  for (auto& t : terms) {
    t.row.resize(2 * radius + 1);
    t.col.resize(2 * radius + 1);
  }
  double gauss_sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double g = std::exp(-(i * i) / (2.0 * p.gabor_sigma * p.gabor_sigma));
    const auto idx = static_cast<std::size_t>(i + radius);
    terms[0].row[idx] = g * std::cos(kx * i);
    terms[0].col[idx] = g * std::cos(ky * i);
    terms[1].row[idx] = g * std::sin(kx * i);
    terms[1].col[idx] = g * std::sin(ky * i);
    terms[2].row[idx] = g;
    terms[2].col[idx] = g;
    gauss_sum += g;
  }
  auto total = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };
  const double dc = total(terms[0].row) * total(terms[0].col) -
                    total(terms[1].row) * total(terms[1].col);
  terms[0].scale = 1.0;
  terms[1].scale = -1.0;
  terms[2].scale = -dc / (gauss_sum * gauss_sum);
  return terms;
}

Grid gabor_kernel(double theta_deg, const IttiKochParams& p) {
  const auto terms = gabor_terms(theta_deg, p);
  const int n = 2 * p.gabor_radius + 1;
  Grid k(n, n);
  for (const auto& t : terms)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) k.at(y, x) += t.scale * t.col[y] * t.row[x];
  return k;
}

std::vector<Grid> gaussian_pyramid(const Grid& base, int max_levels) {
  std::vector<Grid> levels{base};
  while (static_cast<int>(levels.size()) < max_levels) {
    const Grid& cur = levels.back();
    if (cur.width() < 2 || cur.height() < 2) break;
    levels.push_back(
        resize_bilinear(blur_binomial(cur), (cur.width() + 1) / 2, (cur.height() + 1) / 2));
  }
  return levels;
}

std::vector<std::pair<int, int>> center_surround_pairs(int levels, const IttiKochParams& p) {
  std::vector<std::pair<int, int>> pairs;
  for (int c : p.centers)
    for (int d : p.deltas)
      if (c + d <= levels - 1) pairs.emplace_back(c, c + d);
  if (!pairs.empty()) return pairs;
  for (int c : {0, 1})
    for (int d : {1, 2})
      if (c + d <= levels - 1) pairs.emplace_back(c, c + d);
  return pairs;
}

Grid normalize_map(const Grid& map) {
  Grid out(map.width(), map.height());
  const double peak = map.max();
  if (!(peak > kFlatEpsilon)) return out;

  auto o = out.values();
  auto m = map.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = m[i] / peak;

  double sum = 0.0;
  int count = 0;
  bool skipped_global = false;
  for (int r = 0; r < out.height(); ++r)
    for (int c = 0; c < out.width(); ++c) {
      const double v = out.at(r, c);
      if (!(v > kFlatEpsilon)) continue;
      bool is_max = true;
      for (int dr = -1; dr <= 1 && is_max; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int rr = r + dr;
          const int cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= out.height() || cc >= out.width()) continue;
          if (out.at(rr, cc) > v + kMaxTolerance) {
            is_max = false;
            break;
          }
        }
      if (!is_max) continue;
      if (v >= 1.0 - kMaxTolerance && !skipped_global) {
        skipped_global = true;
        continue;
      }
      sum += v;
      ++count;
    }
  const double mean_other = count > 0 ? sum / count : 0.0;
  const double weight = (1.0 - mean_other) * (1.0 - mean_other);
  for (double& v : o) v *= weight;
  return out;
}

SaliencyMap itti_koch_saliency(const GuiImage& img, const IttiKochParams& params) {
  const int w = img.width();
  const int h = img.height();
  Grid r = img.channel(0);
  Grid g = img.channel(1);
  Grid b = img.channel(2);
  Grid intensity(w, h);
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    r.values()[i] /= 255.0;
    g.values()[i] /= 255.0;
    b.values()[i] /= 255.0;
    intensity.values()[i] = (r.values()[i] + g.values()[i] + b.values()[i]) / 3.0;
  }

  // Broadly tuned opponent channels, hue decoupled from intensity where the
  // pixel is bright enough to carry reliable hue.
  const double hue_floor = 0.1 * intensity.max();
  Grid rg(w, h);
  Grid by(w, h);
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    const double in = intensity.values()[i];
    if (!(in > hue_floor)) continue;
    const double rn = r.values()[i] / in;
    const double gn = g.values()[i] / in;
    const double bn = b.values()[i] / in;
    const double R = std::max(0.0, rn - (gn + bn) / 2.0);
    const double G = std::max(0.0, gn - (rn + bn) / 2.0);
    const double B = std::max(0.0, bn - (rn + gn) / 2.0);
    const double Y = std::max(0.0, (rn + gn) / 2.0 - std::abs(rn - gn) / 2.0 - bn);
    rg.values()[i] = R - G;
    by.values()[i] = B - Y;
  }

  const std::vector<Grid> ipyr = gaussian_pyramid(intensity, params.max_levels);
  const int levels = static_cast<int>(ipyr.size());
  const auto pairs = center_surround_pairs(levels, params);
  int max_center = 0;
  for (auto [c, s] : pairs) max_center = std::max(max_center, c);
  const int out_level = std::min(params.output_level, max_center);
  const int out_w = ipyr[out_level].width();
  const int out_h = ipyr[out_level].height();

  const Grid ibar = conspicuity(ipyr, pairs, out_w, out_h);

  Grid cbar = conspicuity(gaussian_pyramid(rg, params.max_levels), pairs, out_w, out_h);
  accumulate(cbar, conspicuity(gaussian_pyramid(by, params.max_levels), pairs, out_w, out_h));

  Grid obar(out_w, out_h);
  for (double theta : {0.0, 45.0, 90.0, 135.0}) {
    const auto terms = gabor_terms(theta, params);
    std::vector<Grid> opyr(ipyr.size());
    for (auto [c, s] : pairs) {
      if (opyr[c].empty()) opyr[c] = oriented_response(ipyr[c], terms);
      if (opyr[s].empty()) opyr[s] = oriented_response(ipyr[s], terms);
    }
    accumulate(obar, normalize_map(conspicuity(opyr, pairs, out_w, out_h)));
  }

  Grid combined = normalize_map(ibar);
  accumulate(combined, normalize_map(cbar));
  accumulate(combined, normalize_map(obar));
  for (double& v : combined.values()) v /= 3.0;

  Grid full = resize_bilinear(combined, w, h);
  const double lo = full.min();
  const double hi = full.max();
  if (!(hi - lo > kFlatEpsilon)) return SaliencyMap(Grid(w, h, 1.0));
  for (double& v : full.values()) v = (v - lo) / (hi - lo);
  return SaliencyMap(std::move(full));
}

namespace {

double parse_value(std::string_view token, int row, int col) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError("malformed density value '" + std::string(token) + "'", row, col);
  if (!std::isfinite(v)) throw ParseError("non-finite density value", row, col);
  if (v < 0.0) throw ParseError("negative density value", row, col);
  return v;
}

Grid load_text_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open density map '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("density map is empty");
  std::istringstream header(line);
  int width = 0;
  int height = 0;
  if (!(header >> width >> height) || width < 1 || height < 1)
    throw ParseError("density map header must be 'width height' with positive values", 0);
  std::string extra;
  if (header >> extra) throw ParseError("trailing tokens in density map header", 0);

  Grid grid(width, height);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line))
      throw ParseError("density map has fewer rows than its header declares", r + 1);
    std::istringstream row(line);
    std::string token;
    int c = 0;
    while (row >> token) {
      if (c >= width) throw ParseError("too many values in row", r + 1, c + 1);
      grid.at(r, c) = parse_value(token, r + 1, c + 1);
      ++c;
    }
    if (c != width) throw ParseError("too few values in row", r + 1, c + 1);
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("density map has more rows than its header declares", height + 1);
  return grid;
}

Grid load_png_grid(const std::filesystem::path& path) {
  const Gray16Image img = load_png_gray16(path);
  Grid grid(img.width, img.height);
  for (std::size_t i = 0; i < img.values.size(); ++i) grid.values()[i] = img.values[i] / 65535.0;
  return grid;
}

}  // namespace

SaliencyMap load_density_map(const std::filesystem::path& path) {
  Grid grid = is_png_file(path) ? load_png_grid(path) : load_text_grid(path);
  return SaliencyMap(std::move(grid));
}

SaliencyMap load_density_map(const std::filesystem::path& path, int expected_w, int expected_h,
                             bool allow_resize) {
  SaliencyMap map = load_density_map(path);
  if (map.width() == expected_w && map.height() == expected_h) return map;
  if (!allow_resize)
    throw ValidationError("density map '" + path.string() + "' is " +
                          std::to_string(map.width()) + "x" + std::to_string(map.height()) +
                          ", expected " + std::to_string(expected_w) + "x" +
                          std::to_string(expected_h));
  return SaliencyMap(resize_bilinear(map.grid(), expected_w, expected_h));
}

void save_density_map(const Grid& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write density map '" + path.string() + "'");
  out << map.width() << ' ' << map.height() << '\n';
  char buf[64];
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), map.at(r, c));
      if (c) out << ' ';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for density map '" + path.string() + "'");
}

}  // namespace gazesweep
