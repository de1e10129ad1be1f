#include "gazesweep/visits.hpp"

#include <map>
#include <set>

#include "gazesweep/error.hpp"

namespace gazesweep {

ElementSequence map_fixations_to_elements(const Scanpath& sp, std::span<const ElementBox> boxes) {
  ElementSequence out;
  out.reserve(sp.size());
  for (const Fixation& f : sp.fixations()) {
    const ElementBox* best = nullptr;
    for (const ElementBox& b : boxes) {
      if (!b.contains(f.x(), f.y())) continue;
      if (!best || b.area() < best->area() ||
          (b.area() == best->area() && b.element_id() < best->element_id()))
        best = &b;
    }
    out.push_back(best ? std::optional<std::string>(best->element_id()) : std::nullopt);
  }
  return out;
}

namespace {

void fill_ratios(VisitStats& s) {
  for (auto& c : s.by_category) {
    c.visited_ratio = c.total_elements ? static_cast<double>(c.visited_count) / c.total_elements : 0.0;
    c.revisited_ratio =
        c.total_elements ? static_cast<double>(c.revisited_count) / c.total_elements : 0.0;
  }
}

}  // namespace

VisitStats visit_revisit(const ElementSequence& seq, std::span<const ElementBox> boxes) {
  std::map<std::string, ElementCategory> category_of;
  for (const ElementBox& b : boxes) {
    if (!category_of.emplace(b.element_id(), b.category()).second)
      throw ValidationError("duplicate element id '" + b.element_id() + "'");
  }

  ElementSequence events;
  for (const auto& e : seq) {
    if (e && !events.empty() && events.back() == e) continue;
    if (e && !category_of.count(*e)) throw ValidationError("unknown element id '" + *e + "'");
    events.push_back(e);
  }

  std::map<std::string, std::size_t> last_seen;
  std::set<std::string> visited;
  std::set<std::string> revisited;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (!events[k]) continue;
    const std::string& id = *events[k];
    auto it = last_seen.find(id);
    if (it != last_seen.end() && k - it->second - 1 >= static_cast<std::size_t>(kRevisitGap))
      revisited.insert(id);
    visited.insert(id);
    last_seen[id] = k;
  }

  VisitStats stats;
  for (const auto& [id, cat] : category_of) {
    CategoryVisits& c = stats[cat];
    ++c.total_elements;
    if (visited.count(id)) ++c.visited_count;
    if (revisited.count(id)) ++c.revisited_count;
  }
  fill_ratios(stats);
  return stats;
}

VisitStats pool_visits(std::span<const VisitStats> per_sequence) {
  VisitStats pooled;
  for (const VisitStats& s : per_sequence)
    for (std::size_t k = 0; k < pooled.by_category.size(); ++k) {
      pooled.by_category[k].total_elements += s.by_category[k].total_elements;
      pooled.by_category[k].visited_count += s.by_category[k].visited_count;
      pooled.by_category[k].revisited_count += s.by_category[k].revisited_count;
    }
  fill_ratios(pooled);
  return pooled;
}

}  // namespace gazesweep
