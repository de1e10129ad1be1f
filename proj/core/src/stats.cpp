#include "gazesweep/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "gazesweep/error.hpp"

namespace gazesweep {

double student_t_two_tailed_p(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(1.0, p);
}

PairedTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("paired samples differ in length");
  if (x.size() < 2) throw ValidationError("paired t-test needs at least two pairs");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  const Summary s = summarize(d);
  if (!(s.sd > 0.0)) throw ValidationError("paired differences have zero variance");

  PairedTestResult r;
  r.n_pairs = s.n;
  r.degrees_of_freedom = s.n - 1;
  r.t_statistic = s.mean / (s.sd / std::sqrt(static_cast<double>(s.n)));
  r.p_value = student_t_two_tailed_p(r.t_statistic, r.degrees_of_freedom);
  r.cohens_d = s.mean / s.sd;
  return r;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw ValidationError("cannot summarize an empty group");
  Summary s;
  s.n = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (s.n - 1));
  }
  return s;
}

std::vector<AggregateRow> aggregate(std::span<const GroupedValue> values) {
  // Sort each group's values so the floating-point sums do not depend on
  // input order.
  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  for (const GroupedValue& v : values) {
    groups[{v.config, v.group}].push_back(v.value);
    groups[{v.config, kAllGroup}].push_back(v.value);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, vals] : groups) {
    std::sort(vals.begin(), vals.end());
    rows.push_back({key.first, key.second, summarize(vals)});
  }
  return rows;
}

}  // namespace gazesweep
