#pragma once

#include <array>
#include <filesystem>
#include <utility>
#include <vector>

#include "gazesweep/grid.hpp"
#include "gazesweep/image.hpp"
#include "gazesweep/types.hpp"

namespace gazesweep {

/// Parameters of the center-surround saliency backend. Defaults are the
/// classic values: 9 pyramid levels, centers {2,3,4}, deltas {3,4} and four
/// orientations.
struct IttiKochParams {
  int max_levels = 9;
  std::vector<int> centers{2, 3, 4};
  std::vector<int> deltas{3, 4};
  /// Level at which conspicuity maps are combined (4 = 1/16 resolution).
  int output_level = 4;
  /// Gabor envelope sigma and carrier wavelength, in pyramid-level pixels.
  double gabor_sigma = 1.5;
  double gabor_wavelength = 5.0;
  int gabor_radius = 4;
};

/// One separable term of an oriented filter: kernel = scale * (col ⊗ row),
/// where `row` runs along x and `col` along y.
struct SeparableTerm {
  double scale = 1.0;
  std::vector<double> row;
  std::vector<double> col;
};

/// Zero-DC cosine Gabor at `theta_deg`, written exactly as three separable
/// terms via cos(a+b) = cos a cos b - sin a sin b plus a Gaussian DC
/// correction.
std::array<SeparableTerm, 3> gabor_terms(double theta_deg, const IttiKochParams& p);

/// Dense 2-D taps of the same kernel (sum of the separable terms).
Grid gabor_kernel(double theta_deg, const IttiKochParams& p);

/// Gaussian pyramid: 5-tap binomial blur then half-pixel-centered
/// decimation to ceil(n/2). Stops at `max_levels` or once a side reaches 1.
std::vector<Grid> gaussian_pyramid(const Grid& base, int max_levels);

/// (center, surround) level pairs usable on a pyramid with `levels` levels.
/// Falls back to c in {0,1}, s in {c+1,c+2} when no classic pair fits.
std::vector<std::pair<int, int>> center_surround_pairs(int levels, const IttiKochParams& p);

/// Map normalization operator: rescale to [0,1], then multiply by
/// (1 - m)^2 where m is the mean of the local maxima other than the global
/// one.
Grid normalize_map(const Grid& map);

/// Bottom-up saliency of a screenshot at input resolution, min-max
/// normalized to [0,1]. A contrast-free image yields the constant map 1.
SaliencyMap itti_koch_saliency(const GuiImage& img, const IttiKochParams& params = {});

/// Read a density map exported by an external model. Text format: first
/// line "width height", then `height` lines of `width` decimals. PNG input
/// must be 16-bit grayscale; values are divided by 65535. When the stored
/// size differs from the expectation, the map is bilinearly resized if
/// `allow_resize`, otherwise a ValidationError is raised.
SaliencyMap load_density_map(const std::filesystem::path& path, int expected_w, int expected_h,
                             bool allow_resize = false);

/// Same, but accept whatever size the file has.
SaliencyMap load_density_map(const std::filesystem::path& path);

/// Write the text grid format with round-trip precision.
void save_density_map(const Grid& map, const std::filesystem::path& path);

}  // namespace gazesweep
