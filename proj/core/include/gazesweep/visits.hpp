#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazesweep/types.hpp"

namespace gazesweep {

/// Element hit by each fixation; std::nullopt means background.
using ElementSequence = std::vector<std::optional<std::string>>;

/// Assign each fixation to the smallest-area box containing it (ties broken
/// by element id so box order never matters), or to background.
ElementSequence map_fixations_to_elements(const Scanpath& sp, std::span<const ElementBox> boxes);

struct CategoryVisits {
  int total_elements = 0;
  int visited_count = 0;
  int revisited_count = 0;
  double visited_ratio = 0.0;    ///< visited / total_elements (0 when no elements)
  double revisited_ratio = 0.0;  ///< revisited / total_elements
};

struct VisitStats {
  std::array<CategoryVisits, 3> by_category{};

  const CategoryVisits& operator[](ElementCategory c) const {
    return by_category[static_cast<std::size_t>(c)];
  }
  CategoryVisits& operator[](ElementCategory c) { return by_category[static_cast<std::size_t>(c)]; }
};

/// Minimum number of fixations elsewhere between two fixations on an
/// element for the second to count as a revisit.
inline constexpr int kRevisitGap = 3;

/// Consecutive fixations on the same element are collapsed into one visit
/// event first; background fixations are never collapsed and count as
/// intervening fixations. An element is revisited when a later event lands
/// on it after at least kRevisitGap intervening events.
VisitStats visit_revisit(const ElementSequence& seq, std::span<const ElementBox> boxes);

/// Sum counts and element totals over several sequences (possibly on
/// different images) and recompute the ratios from the sums.
VisitStats pool_visits(std::span<const VisitStats> per_sequence);

}  // namespace gazesweep
